#pragma once

//! \file universal_constants.hpp
//! The universal constants x0, kappa, gamma_star, the cosine-majorant
//! coefficients a(theta), b(theta), the t-threshold family, truncation
//! geometry (alpha, tau0_bar, L0_bar, alpha1), and the k-functions whose
//! theta-suprema drive every characteristic-function bound.
//!
//! gamma = +infinity and eps = +infinity are supported wherever a finite
//! limit exists; the limits are special-cased explicitly so no 1/inf
//! arithmetic ever happens.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "cltbounds/special_functions.hpp"

namespace cltbounds {

inline constexpr double infinite = std::numeric_limits<double>::infinity();

//! Solution of the transcendental equation behind the cosine majorant,
//! with its two derived constants.
struct UniversalConstants {
    double x0;         //!< unique root in (pi, 2*pi)
    double kappa;      //!< x0^{-2} * sqrt((cos x0 - 1 + x0^2/2)^2 + (sin x0 - x0)^2)
    double gamma_star; //!< 1 / sqrt(6 * kappa)
};

//! Coefficients of the quartic cosine majorant cos x <= 1 - a*x^2 + b*x^4
//! that is tight at x in {-theta, 0, theta}.
struct CosCoefficients {
    double theta;
    double a;
    double b;
};

namespace detail {

//! Left-hand side of the defining equation of x0:
//! 8(cos x - 1) + 8 x sin x - 4 x^2 cos x - x^3 sin x.
inline double x0_equation(double x) {
    const double s = std::sin(x);
    const double c = std::cos(x);
    return 8.0 * (c - 1.0) + 8.0 * x * s - 4.0 * x * x * c - x * x * x * s;
}

} // namespace detail

//! Solve for x0 on (pi, 2*pi) by bisection and derive kappa, gamma_star.
inline UniversalConstants solve_universal_constants() {
    double lo = pi;
    double hi = two_pi;
    double flo = detail::x0_equation(lo);
    if (!(flo > 0.0) || !(detail::x0_equation(hi) < 0.0))
        throw std::runtime_error("solve_universal_constants: bracketing failed");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = detail::x0_equation(mid);
        if (fm > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double x0 = 0.5 * (lo + hi);
    const double re = std::cos(x0) - 1.0 + 0.5 * x0 * x0;
    const double im = std::sin(x0) - x0;
    const double kappa = std::sqrt(re * re + im * im) / (x0 * x0);
    const double gamma_star = 1.0 / std::sqrt(6.0 * kappa);
    return {x0, kappa, gamma_star};
}

//! Shared, lazily computed instance.
inline const UniversalConstants& universal_constants() {
    static const UniversalConstants c = solve_universal_constants();
    return c;
}

//! Quartic-majorant coefficients
//!   a(theta) = 2(1-cos theta)/theta^2 - sin(theta)/(2 theta),
//!   b(theta) = (1-cos theta)/theta^4 - sin(theta)/(2 theta^3),
//! continued to theta = 0 by a(0) = 1/2, b(0) = 1/24.
//!
//! For theta < 1 both closed forms subtract nearly equal quantities, so the
//! alternating power series are used there; they reach full double accuracy
//! in at most 13 terms.  For theta >= 1, 1 - cos(theta) is computed as
//! 2 sin^2(theta/2), which stays relatively accurate up to theta = 2*pi.
inline CosCoefficients cos_coefficients(double theta) {
    if (!(theta >= 0.0) || !(theta <= two_pi))
        throw std::domain_error("cos_coefficients: requires 0 <= theta <= 2*pi");
    if (theta < 1.0) {
        // a = sum_j (-1)^j (1-j) theta^{2j} / (2j+2)!,
        // b = sum_j (-1)^j (j+1) theta^{2j} / (2j+4)!
        const double t2 = theta * theta;
        double a = 0.0;
        double b = 0.0;
        double pow_t = 1.0;        // theta^{2j}
        double fact_a = 2.0;       // (2j+2)!
        double fact_b = 24.0;      // (2j+4)!
        double sign = 1.0;
        for (int j = 0; j < 16; ++j) {
            a += sign * (1.0 - j) * pow_t / fact_a;
            b += sign * (j + 1.0) * pow_t / fact_b;
            if (pow_t * (j + 2.0) / fact_b < 1e-20) break;
            pow_t *= t2;
            fact_a *= (2.0 * j + 3.0) * (2.0 * j + 4.0);
            fact_b *= (2.0 * j + 5.0) * (2.0 * j + 6.0);
            sign = -sign;
        }
        return {theta, a, b};
    }
    const double sh = std::sin(0.5 * theta);
    const double one_minus_cos = 2.0 * sh * sh;
    const double s = std::sin(theta);
    const double t2 = theta * theta;
    const double a = 2.0 * one_minus_cos / t2 - s / (2.0 * theta);
    const double b = one_minus_cos / (t2 * t2) - s / (2.0 * t2 * theta);
    return {theta, a, b};
}

//! Threshold family of the balancing parameter gamma.
struct TThresholds {
    double t_gamma;  //!< (2/gamma) * (sqrt((gamma/gamma_star)^2 + 1) - 1)
    double t1_gamma; //!< t2_gamma * (1 - sqrt((1 - (gamma/gamma_star)^2)_+))
    double t2_gamma; //!< 2 * max(1/gamma, 1/gamma_star)
};

//! Evaluate the three thresholds; gamma may be +infinity (pure limits).
//! The formulas are rationalized so that small gamma loses no precision.
inline TThresholds t_thresholds(double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("t_thresholds: requires gamma > 0");
    const double gs = universal_constants().gamma_star;
    const double t_inf = 2.0 / gs;
    if (std::isinf(gamma)) return {t_inf, t_inf, t_inf};
    const double r = gamma / gs;
    const double r2 = r * r;
    // (2/gamma)(sqrt(r2+1)-1) = 2*gamma / (gs^2 (sqrt(r2+1)+1))
    const double t_gamma = 2.0 * gamma / (gs * gs * (std::sqrt(r2 + 1.0) + 1.0));
    double t1, t2;
    if (gamma >= gs) {
        t2 = t_inf;
        t1 = t_inf;
    } else {
        t2 = 2.0 / gamma;
        // t2 * (1 - sqrt(1-r2)) = t2 * r2 / (1 + sqrt(1-r2))
        t1 = t2 * r2 / (1.0 + std::sqrt(1.0 - r2));
    }
    return {t_gamma, t1, t2};
}

//! Truncation geometry derived from eps (and L for alpha1).
struct TruncationGeometry {
    double alpha;    //!< inf_{0<x<min(eps,1)} (x - x^3)^{-2/3}
    double tau0_bar; //!< sqrt(2 / alpha)
    double L0_bar;   //!< eps * tau0_bar (infinite when eps is)
    double alpha1;   //!< sqrt(alpha/2) if L <= L0_bar, else eps/(2L) + alpha*L/(4*eps)
};

inline TruncationGeometry truncation_geometry(double eps, double L) {
    if (!(eps > 0.0) || !(L > 0.0))
        throw std::domain_error("truncation_geometry: requires eps > 0 and L > 0");
    constexpr double inv_sqrt3 = 0.57735026918962576451;
    constexpr double alpha_flat = 1.88988157484230974880; // 3 * 2^{-2/3}
    double alpha;
    if (std::isinf(eps) || eps > inv_sqrt3) {
        alpha = alpha_flat;
    } else {
        alpha = std::pow(eps - eps * eps * eps, -2.0 / 3.0);
    }
    const double tau0_bar = std::sqrt(2.0 / alpha);
    const double L0_bar = std::isinf(eps) ? infinite : eps * tau0_bar;
    double alpha1;
    if (L <= L0_bar) {
        alpha1 = std::sqrt(alpha / 2.0);
    } else {
        alpha1 = eps / (2.0 * L) + alpha * L / (4.0 * eps);
    }
    return {alpha, tau0_bar, L0_bar, alpha1};
}

//! k(tau, u, theta) = a(theta) - 4 tau u^{-1} (a(theta) + b(theta) u^2),
//! with k(0, 0, .) = a(theta) and k(tau, 0, .) = -infinity for tau > 0.
inline double k_theta(double tau, double u, double theta) {
    if (!(theta > 0.0) || !(theta <= two_pi))
        throw std::domain_error("k_theta: requires 0 < theta <= 2*pi");
    if (!(tau >= 0.0) || !(u >= 0.0))
        throw std::domain_error("k_theta: requires tau >= 0 and u >= 0");
    const CosCoefficients cc = cos_coefficients(theta);
    if (u == 0.0) return tau == 0.0 ? cc.a : -infinite;
    return cc.a - 4.0 * tau / u * (cc.a + cc.b * u * u);
}

namespace detail {

//! Precomputed 2049-point uniform theta-grid over [0, 2*pi] with the
//! quantities every k-supremum needs.  The endpoints carry their exact
//! limit values.
struct ThetaGrid {
    static constexpr int n = 2049;
    std::array<double, n> theta{}, a{}, b{}, s{}, sqab{};

    ThetaGrid() {
        for (int i = 0; i < n; ++i) {
            const double th = two_pi * i / (n - 1);
            theta[i] = th;
            if (i == n - 1) {
                a[i] = 0.0;
                b[i] = 0.0;
                s[i] = two_pi; // limit of sqrt(a/b) as theta -> 2*pi
                sqab[i] = 0.0;
                continue;
            }
            const CosCoefficients cc = cos_coefficients(th);
            a[i] = cc.a;
            b[i] = cc.b;
            s[i] = std::sqrt(cc.a / cc.b);
            sqab[i] = std::sqrt(cc.a * cc.b);
        }
    }

    static const ThetaGrid& get() {
        static const ThetaGrid g;
        return g;
    }
};

//! Golden-section maximization of g over [lo, hi]; returns the best value
//! seen at any probed point (including both ends).  The bracket tolerance is
//! generous because every caller maximizes a smooth function whose value is
//! quadratically insensitive to the argument near the maximum: a 1e-7 wide
//! bracket pins the value itself far below 1e-12.
template <class G>
double golden_max(G&& g, double lo, double hi) {
    constexpr double invphi = 0.61803398874989484820;
    double best = std::max(g(lo), g(hi));
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = g(x1);
    double f2 = g(x2);
    best = std::max({best, f1, f2});
    for (int i = 0; i < 90 && hi - lo > 1e-7; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = g(x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

struct KCappedKey {
    std::uint64_t tau_bits;
    std::uint64_t u_bits;
    bool operator==(const KCappedKey&) const = default;
};

struct KCappedKeyHash {
    std::size_t operator()(const KCappedKey& k) const {
        std::uint64_t h = k.tau_bits * 0x9e3779b97f4a7c15ull;
        h ^= k.u_bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

inline std::uint64_t double_bits(double x) {
    std::uint64_t b;
    std::memcpy(&b, &x, sizeof b);
    return b;
}

} // namespace detail

//! k(tau) = sup_{0 < theta <= 2*pi} { a(theta) - 8 tau sqrt(a(theta) b(theta)) }.
//! Positive exactly for tau < pi/4; monotone nonincreasing in tau.
//! Memoized per thread: optimizers re-evaluate it at repeated tau values.
inline double k_tau(double tau) {
    if (!(tau >= 0.0)) throw std::domain_error("k_tau: requires tau >= 0");
    if (tau == 0.0) return 0.5;

    thread_local std::unordered_map<std::uint64_t, double> memo;
    const std::uint64_t key = detail::double_bits(tau);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    const auto& g = detail::ThetaGrid::get();
    double best = -infinite;
    int bi = 0;
    for (int i = 0; i < detail::ThetaGrid::n; ++i) {
        const double k = g.a[i] - 8.0 * tau * g.sqab[i];
        if (k > best) {
            best = k;
            bi = i;
        }
    }
    const double lo = g.theta[bi > 0 ? bi - 1 : 0];
    const double hi = g.theta[bi < detail::ThetaGrid::n - 1 ? bi + 1 : bi];
    const double refined = detail::golden_max(
        [tau](double th) {
            const CosCoefficients cc = cos_coefficients(th);
            return cc.a - 8.0 * tau * std::sqrt(std::max(cc.a * cc.b, 0.0));
        },
        lo, hi);
    const double result = std::max(best, refined);
    if (memo.size() > (1u << 22)) memo.clear();
    memo.emplace(key, result);
    return result;
}

//! k(tau, u) = sup_{0 < theta < 2*pi} k(tau, min(u, sqrt(a/b)), theta).
//! Computed by the 2049-point grid plus golden-section refinement around the
//! best cell; memoized per thread because it sits inside quadrature loops.
inline double k_capped(double tau, double u) {
    if (!(tau >= 0.0) || !(u > 0.0))
        throw std::domain_error("k_capped: requires tau >= 0 and u > 0");
    if (tau == 0.0) return 0.5;

    thread_local std::unordered_map<detail::KCappedKey, double, detail::KCappedKeyHash> memo;
    const detail::KCappedKey key{detail::double_bits(tau), detail::double_bits(u)};
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    const auto& g = detail::ThetaGrid::get();
    double best = -infinite;
    int bi = 0;
    for (int i = 0; i < detail::ThetaGrid::n; ++i) {
        const double uu = std::min(u, g.s[i]);
        const double k = g.a[i] - 4.0 * tau / uu * (g.a[i] + g.b[i] * uu * uu);
        if (k > best) {
            best = k;
            bi = i;
        }
    }
    const double lo = g.theta[bi > 0 ? bi - 1 : 0];
    const double hi = g.theta[bi < detail::ThetaGrid::n - 1 ? bi + 1 : bi];
    const double refined = detail::golden_max(
        [tau, u](double th) {
            const CosCoefficients cc = cos_coefficients(th);
            const double cap = (cc.a > 0.0 && cc.b > 0.0) ? std::sqrt(cc.a / cc.b) : two_pi;
            const double uu = std::min(u, cap);
            return cc.a - 4.0 * tau / uu * (cc.a + cc.b * uu * uu);
        },
        lo, hi);
    const double result = std::max(best, refined);
    if (memo.size() > (1u << 22)) memo.clear();
    memo.emplace(key, result);
    return result;
}

} // namespace cltbounds
