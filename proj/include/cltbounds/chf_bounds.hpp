#pragma once

//! \file chf_bounds.hpp
//! Characteristic-function majorants for normalized sums of independent
//! zero-mean summands: the kind-specific cubic/quartic majorants p_E and
//! p_R, the envelopes B, B_full, A_E, A_R, the absolute-value bounds
//! |f_n(t)| <= exp{-k t^2}, and the difference bounds for
//! |f_n(t) - e^{-t^2/2}| in computational and small-L analytic form.

#include <cmath>
#include <stdexcept>

#include "cltbounds/universal_constants.hpp"

namespace cltbounds {

//! Which moment fraction the bound is expressed in.
enum class FractionKind { esseen, rozovskii };

//! Parameter bundle for every majorant: fraction kind, truncation parameter
//! eps (finite required for Rozovskii), balancing parameter gamma, and the
//! cube root L of the fraction value.
struct BoundContext {
    FractionKind kind;
    double eps;
    double gamma;
    double L;
};

inline void validate(const BoundContext& ctx) {
    if (!(ctx.eps > 0.0)) throw std::domain_error("BoundContext: requires eps > 0");
    if (ctx.kind == FractionKind::rozovskii && std::isinf(ctx.eps))
        throw std::domain_error("BoundContext: Rozovskii bounds require finite eps");
    if (!(ctx.gamma > 0.0)) throw std::domain_error("BoundContext: requires gamma > 0");
    if (!(ctx.L > 0.0) || std::isinf(ctx.L)) throw std::domain_error("BoundContext: requires finite L > 0");
}

//! Cubic coefficient sqrt(6 kappa gamma^2 + 1) / (6 gamma) of the Esseen
//! majorant, written as sqrt(6 kappa + gamma^{-2}) / 6 so gamma = +infinity
//! needs no special arithmetic.
inline double esseen_cubic_coefficient(double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("esseen_cubic_coefficient: requires gamma > 0");
    const double ginv = std::isinf(gamma) ? 0.0 : 1.0 / gamma;
    return std::sqrt(6.0 * universal_constants().kappa + ginv * ginv) / 6.0;
}

//! p_E(t, eps, gamma): (kappa t^2/eps + eps t^4/24) while eps|t| <= t_gamma,
//! the cubic sqrt(6 kappa gamma^2 + 1)/(6 gamma) |t|^3 beyond; pure cubic for
//! all t when eps = +infinity.  The branch is chosen by the closed-form
//! threshold, never by comparing branch values.
inline double p_esseen(double t, double eps, double gamma) {
    if (!(eps > 0.0)) throw std::domain_error("p_esseen: requires eps > 0");
    if (!(gamma > 0.0)) throw std::domain_error("p_esseen: requires gamma > 0");
    t = std::abs(t);
    const double c3 = esseen_cubic_coefficient(gamma);
    if (std::isinf(eps)) return c3 * t * t * t;
    if (eps * t <= t_thresholds(gamma).t_gamma) {
        const double t2 = t * t;
        return universal_constants().kappa * t2 / eps + eps * t2 * t2 / 24.0;
    }
    return c3 * t * t * t;
}

//! p_R(t, eps, gamma) = t^2 max{ |t|/(6 gamma), kappa/eps + eps t^2/24,
//! eps t^2/12 }; requires finite eps; constant in gamma on [gamma_star, inf).
inline double p_rozovskii(double t, double eps, double gamma) {
    if (!(eps > 0.0) || std::isinf(eps))
        throw std::domain_error("p_rozovskii: requires finite eps > 0");
    if (!(gamma > 0.0)) throw std::domain_error("p_rozovskii: requires gamma > 0");
    t = std::abs(t);
    const double t2 = t * t;
    const double ginv = std::isinf(gamma) ? 0.0 : 1.0 / gamma;
    const double m = std::max({t * ginv / 6.0,
                               universal_constants().kappa / eps + eps * t2 / 24.0,
                               eps * t2 / 12.0});
    return t2 * m;
}

//! B(tau, eps) = sqrt(alpha/2) / (2 - alpha tau^2) for 0 <= tau < tau0_bar(eps).
inline double envelope_B(double tau, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("envelope_B: requires eps > 0");
    const TruncationGeometry geo = truncation_geometry(eps, 1.0);
    if (!(tau >= 0.0) || !(tau < geo.tau0_bar))
        throw std::domain_error("envelope_B: requires 0 <= tau < tau0_bar(eps)");
    return std::sqrt(geo.alpha / 2.0) / (2.0 - geo.alpha * tau * tau);
}

//! B_full(u, eps, L) = -4 alpha1 / (alpha^2 u^4) * (ln(1 - alpha u^2/2)
//! + alpha u^2/2) for u = L|t| < tau0_bar(eps); evaluated through its power
//! series alpha1 * sum_j (alpha u^2/2)^j / (j+2) when alpha u^2/2 < 1e-4.
inline double envelope_B_full(double u, double eps, double L) {
    if (!(eps > 0.0) || !(L > 0.0))
        throw std::domain_error("envelope_B_full: requires eps > 0 and L > 0");
    const TruncationGeometry geo = truncation_geometry(eps, L);
    if (!(u >= 0.0) || !(u < geo.tau0_bar))
        throw std::domain_error("envelope_B_full: requires 0 <= u < tau0_bar(eps)");
    const double x = geo.alpha * u * u / 2.0;
    if (x < 1e-4) {
        double sum = 0.0;
        double xp = 1.0;
        for (int j = 0; j < 8; ++j) {
            sum += xp / (j + 2.0);
            xp *= x;
        }
        return geo.alpha1 * sum;
    }
    return -4.0 * geo.alpha1 / (geo.alpha * geo.alpha * u * u * u * u) * (std::log1p(-x) + x);
}

//! Envelope factor A(tau, eps) = exp{tau^4 B(tau, eps)} extended per kind:
//!   A_E = A * exp{tau^3/(6 gamma) + sqrt(kappa/3) tau^3 + kappa L tau^2/eps},
//!   A_R = A * exp{tau^3/(6 gamma) 1(gamma < gamma_star) + kappa L tau^2/eps},
//! with the kappa/eps terms vanishing at eps = +infinity.
inline double envelope_A(FractionKind kind, double tau0, double eps, double gamma, double L) {
    if (!(gamma > 0.0)) throw std::domain_error("envelope_A: requires gamma > 0");
    const TruncationGeometry geo = truncation_geometry(eps, L);
    if (!(tau0 >= 0.0) || !(tau0 < geo.tau0_bar))
        throw std::domain_error("envelope_A: requires 0 <= tau0 < tau0_bar(eps)");
    if (!(L <= geo.L0_bar))
        throw std::domain_error("envelope_A: requires L <= L0_bar(eps)");
    const double kappa = universal_constants().kappa;
    const double gamma_star = universal_constants().gamma_star;
    const double tau2 = tau0 * tau0;
    const double tau3 = tau2 * tau0;
    double e = tau2 * tau2 * envelope_B(tau0, eps);
    if (kind == FractionKind::esseen) {
        if (!std::isinf(gamma)) e += tau3 / (6.0 * gamma);
        e += std::sqrt(kappa / 3.0) * tau3;
        if (!std::isinf(eps)) e += kappa * L * tau2 / eps;
    } else {
        if (std::isinf(eps))
            throw std::domain_error("envelope_A: Rozovskii requires finite eps");
        if (!std::isinf(gamma) && gamma < gamma_star) e += tau3 / (6.0 * gamma);
        e += kappa * L * tau2 / eps;
    }
    return std::exp(e);
}

//! h-factor of the small-L Rozovskii bound: h = 1 - eps tau0^2 L / 6.
inline double small_L_h(double tau0, double eps, double L) {
    return 1.0 - eps * tau0 * tau0 * L / 6.0;
}

//! |f_n(t)| <= exp{-k(L^3 |t|, 2 eps |t|) t^2}, intersected with the trivial
//! bound 1; at eps = +infinity the cap in k always binds and the exponent
//! becomes k(L^3 |t|) of the uniform bound.
inline double abs_chf_bound(double t, const BoundContext& ctx) {
    validate(ctx);
    t = std::abs(t);
    if (t == 0.0) return 1.0;
    const double tau = ctx.L * ctx.L * ctx.L * t;
    const double k = std::isinf(ctx.eps) ? k_tau(tau) : k_capped(tau, 2.0 * ctx.eps * t);
    return std::min(1.0, std::exp(-k * t * t));
}

//! Uniform absolute-value bound exp{-k(tau1) t^2}.  The caller guarantees
//! tau1 >= pi L0^3 / eps and |t| <= tau1 / L^3; those cannot be checked from
//! the arguments alone.
inline double abs_chf_bound_flat(double t, double tau1) {
    if (!(tau1 > 0.0)) throw std::domain_error("abs_chf_bound_flat: requires tau1 > 0");
    return std::min(1.0, std::exp(-k_tau(tau1) * t * t));
}

//! Computational difference bound
//!   |f_n(t) - e^{-t^2/2}| <= (exp{L^3 p(t) + L^4 t^4 B_full(L|t|)} - 1) e^{-t^2/2}
//! for L |t| < tau0_bar(eps), with p = p_E or p_R by kind.
inline double diff_bound(double t, const BoundContext& ctx) {
    validate(ctx);
    t = std::abs(t);
    const double u = ctx.L * t;
    const double L3 = ctx.L * ctx.L * ctx.L;
    const double p = ctx.kind == FractionKind::esseen ? p_esseen(t, ctx.eps, ctx.gamma)
                                                      : p_rozovskii(t, ctx.eps, ctx.gamma);
    const double t2 = t * t;
    const double expo = L3 * p + ctx.L * L3 * t2 * t2 * envelope_B_full(u, ctx.eps, ctx.L);
    return std::expm1(expo) * std::exp(-0.5 * t2);
}

//! Small-L analytic difference bound, uniform over |t| <= tau0 / L:
//!   Esseen:    A_E (p_E + B(tau0) L t^4) L^3 e^{-t^2/2},
//!   Rozovskii: A_R (p_R + B(tau0) L t^4) L^3 e^{-h t^2/2}, h = 1 - eps tau0^2 L/6.
inline double diff_bound_small_L(double t, const BoundContext& ctx, double tau0) {
    validate(ctx);
    t = std::abs(t);
    const TruncationGeometry geo = truncation_geometry(ctx.eps, ctx.L);
    if (!(ctx.L <= geo.L0_bar))
        throw std::domain_error("diff_bound_small_L: requires L <= L0_bar(eps)");
    if (!(tau0 > 0.0) || !(tau0 < geo.tau0_bar))
        throw std::domain_error("diff_bound_small_L: requires 0 < tau0 < tau0_bar(eps)");
    if (!(ctx.L * t <= tau0 * (1.0 + 1e-12)))
        throw std::domain_error("diff_bound_small_L: requires L|t| <= tau0");
    const double L3 = ctx.L * ctx.L * ctx.L;
    const double B = envelope_B(tau0, ctx.eps);
    const double A = envelope_A(ctx.kind, tau0, ctx.eps, ctx.gamma, ctx.L);
    const double t2 = t * t;
    if (ctx.kind == FractionKind::esseen) {
        const double p = p_esseen(t, ctx.eps, ctx.gamma);
        return A * (p + B * ctx.L * t2 * t2) * L3 * std::exp(-0.5 * t2);
    }
    const double h = small_L_h(tau0, ctx.eps, ctx.L);
    if (!(h > 0.0))
        throw std::domain_error("diff_bound_small_L: requires h = 1 - eps tau0^2 L / 6 > 0");
    const double p = p_rozovskii(t, ctx.eps, ctx.gamma);
    return A * (p + B * ctx.L * t2 * t2) * L3 * std::exp(-0.5 * h * t2);
}

} // namespace cltbounds
