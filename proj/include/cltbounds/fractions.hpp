#pragma once

//! \file fractions.hpp
//! Finite discrete distributions and summand systems: exact truncated/tail
//! moments, the five moment fractions (Esseen, Rozovskii, Lyapunov, Osipov,
//! Lindeberg), symmetrization and the quadratic-tails inequality, exact
//! characteristic functions, and exact Kolmogorov distance by convolution.
//!
//! Everything moment-related is templated on the scalar type so that the
//! named scenario fixtures can be evaluated in exact rational arithmetic;
//! `Rational` (64-bit numerator/denominator with 128-bit intermediates)
//! is provided for that purpose.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <charconv>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cltbounds/special_functions.hpp"

namespace cltbounds {

// ---------------------------------------------------------------------------
// Exact rational scalar
// ---------------------------------------------------------------------------

namespace detail {

inline __int128 gcd_i128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

} // namespace detail

//! Exact rational number with canonical form: denominator > 0, gcd(|num|,den)=1.
//! Arithmetic runs through 128-bit intermediates; results that do not fit a
//! 64-bit numerator/denominator throw std::overflow_error.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {} // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d) { *this = normalized(n, d); }

    static Rational normalized(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = detail::gcd_i128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = std::numeric_limits<long long>::min();
        constexpr __int128 hi = std::numeric_limits<long long>::max();
        if (n < lo || n > hi || d > hi) throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    //! Parse "num/den" or a plain integer.
    static Rational parse(std::string_view s) {
        const auto slash = s.find('/');
        const auto parse_ll = [](std::string_view part) {
            long long v = 0;
            const char* first = part.data();
            const char* last = part.data() + part.size();
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc{} || res.ptr != last)
                throw std::runtime_error("Rational: cannot parse '" + std::string(part) + "'");
            return v;
        };
        if (slash == std::string_view::npos) return {parse_ll(s)};
        return {parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1))};
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return normalized(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                          static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return normalized(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                          static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return normalized(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("Rational: division by zero");
        return normalized(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num = -r.num;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

inline double to_double(double x) { return x; }
inline double to_double(const Rational& r) {
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

template <typename T>
inline T abs_value(const T& x) {
    return x < T(0) ? -x : x;
}

// ---------------------------------------------------------------------------
// Distributions and summand systems
// ---------------------------------------------------------------------------

//! Finite discrete distribution: atoms (x, p), sorted by x, no duplicate x,
//! every p > 0, probabilities summing to one.
template <typename T>
struct DiscreteDistribution {
    std::vector<std::pair<T, T>> atoms;
};

//! One i.i.d. block: a distribution repeated `count` times.
template <typename T>
struct SummandGroup {
    DiscreteDistribution<T> dist;
    long long count = 1;
};

//! Independent summand system X_1, ..., X_n given as i.i.d. blocks.
template <typename T>
struct SummandSystem {
    std::vector<SummandGroup<T>> summands;
};

//! Sort atoms by location and coalesce duplicates (probabilities add).
//! Locations closer than `merge_tol` (in double precision) are treated as
//! equal; pass 0 for exact scalar types.
template <typename T>
inline DiscreteDistribution<T> normalized_atoms(std::vector<std::pair<T, T>> atoms,
                                                double merge_tol = 0.0) {
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    DiscreteDistribution<T> d;
    for (auto& a : atoms) {
        if (!d.atoms.empty() &&
            to_double(a.first) - to_double(d.atoms.back().first) <= merge_tol) {
            d.atoms.back().second += a.second;
        } else {
            d.atoms.push_back(std::move(a));
        }
    }
    return d;
}

//! Validate the distribution invariants; throws std::invalid_argument.
template <typename T>
inline void validate(const DiscreteDistribution<T>& d, bool require_zero_mean = true) {
    if (d.atoms.empty()) throw std::invalid_argument("distribution: no atoms");
    T psum(0);
    T mean(0);
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        const auto& [x, p] = d.atoms[i];
        if (!(p > T(0))) throw std::invalid_argument("distribution: probabilities must be positive");
        if (i > 0 && !(d.atoms[i - 1].first < x))
            throw std::invalid_argument("distribution: atoms must be sorted with distinct locations");
        psum += p;
        mean += x * p;
    }
    if (std::abs(to_double(psum) - 1.0) > 1e-12)
        throw std::invalid_argument("distribution: probabilities must sum to 1");
    if (require_zero_mean && std::abs(to_double(mean)) > 1e-12)
        throw std::invalid_argument("distribution: mean must be zero");
}

template <typename T>
inline T mean(const DiscreteDistribution<T>& d) {
    T m(0);
    for (const auto& [x, p] : d.atoms) m += x * p;
    return m;
}

template <typename T>
inline T second_moment(const DiscreteDistribution<T>& d) {
    T m(0);
    for (const auto& [x, p] : d.atoms) m += x * x * p;
    return m;
}

template <typename T>
inline T third_moment(const DiscreteDistribution<T>& d) {
    T m(0);
    for (const auto& [x, p] : d.atoms) m += x * x * x * p;
    return m;
}

template <typename T>
inline T abs_third_moment(const DiscreteDistribution<T>& d) {
    T m(0);
    for (const auto& [x, p] : d.atoms) {
        const T a = abs_value(x);
        m += a * a * a * p;
    }
    return m;
}

//! E |X|^s for real s (double precision only).
inline double abs_moment(const DiscreteDistribution<double>& d, double s) {
    double m = 0.0;
    for (const auto& [x, p] : d.atoms) m += std::pow(std::abs(x), s) * p;
    return m;
}

//! sigma^2(z) = E X^2 1(|X| >= z): tail second moment, weak inequality.
template <typename T>
inline T sigma_tail(const DiscreteDistribution<T>& d, const T& z) {
    if (z < T(0)) throw std::domain_error("sigma_tail: requires z >= 0");
    T m(0);
    for (const auto& [x, p] : d.atoms)
        if (!(abs_value(x) < z)) m += x * x * p;
    return m;
}

//! mu(z) = E X^3 1(|X| < z): truncated third moment, strict inequality.
template <typename T>
inline T mu_trunc(const DiscreteDistribution<T>& d, const T& z) {
    if (z < T(0)) throw std::domain_error("mu_trunc: requires z >= 0");
    T m(0);
    for (const auto& [x, p] : d.atoms)
        if (abs_value(x) < z) m += x * x * x * p;
    return m;
}

//! E |X|^3 1(|X| < z): truncated absolute third moment, strict inequality.
template <typename T>
inline T abs_mu_trunc(const DiscreteDistribution<T>& d, const T& z) {
    if (z < T(0)) throw std::domain_error("abs_mu_trunc: requires z >= 0");
    T m(0);
    for (const auto& [x, p] : d.atoms)
        if (abs_value(x) < z) {
            const T a = abs_value(x);
            m += a * a * a * p;
        }
    return m;
}

//! Validate the system invariants; throws std::invalid_argument.
template <typename T>
inline void validate(const SummandSystem<T>& sys) {
    if (sys.summands.empty()) throw std::invalid_argument("system: no summands");
    T s2(0);
    for (const auto& g : sys.summands) {
        if (g.count < 1) throw std::invalid_argument("system: repeat counts must be >= 1");
        validate(g.dist);
        s2 += T(g.count) * second_moment(g.dist);
    }
    if (!(to_double(s2) > 0.0)) throw std::invalid_argument("system: B_n must be positive");
}

template <typename T>
inline long long total_count(const SummandSystem<T>& sys) {
    long long n = 0;
    for (const auto& g : sys.summands) n += g.count;
    return n;
}

//! B_n^2 = sum of the summand variances.
template <typename T>
inline T sum_second_moment(const SummandSystem<T>& sys) {
    T s(0);
    for (const auto& g : sys.summands) s += T(g.count) * second_moment(g.dist);
    return s;
}

template <typename T>
inline double b_n(const SummandSystem<T>& sys) {
    const double s2 = to_double(sum_second_moment(sys));
    if (!(s2 > 0.0)) throw std::invalid_argument("system: B_n must be positive");
    return std::sqrt(s2);
}

//! Sum over summands of sigma_k^2(w) at the physical threshold w.
template <typename T>
inline T system_sigma_tail(const SummandSystem<T>& sys, const T& w) {
    T s(0);
    for (const auto& g : sys.summands) s += T(g.count) * sigma_tail(g.dist, w);
    return s;
}

//! Sum over summands of mu_k(w) at the physical threshold w.
template <typename T>
inline T system_mu_trunc(const SummandSystem<T>& sys, const T& w) {
    T s(0);
    for (const auto& g : sys.summands) s += T(g.count) * mu_trunc(g.dist, w);
    return s;
}

template <typename T>
inline T system_abs_mu_trunc(const SummandSystem<T>& sys, const T& w) {
    T s(0);
    for (const auto& g : sys.summands) s += T(g.count) * abs_mu_trunc(g.dist, w);
    return s;
}

template <typename T>
inline T system_third_moment(const SummandSystem<T>& sys) {
    T s(0);
    for (const auto& g : sys.summands) s += T(g.count) * third_moment(g.dist);
    return s;
}

template <typename T>
inline T system_abs_third_moment(const SummandSystem<T>& sys) {
    T s(0);
    for (const auto& g : sys.summands) s += T(g.count) * abs_third_moment(g.dist);
    return s;
}

namespace detail {

//! Distinct nonzero atom magnitudes of the whole system, sorted ascending.
template <typename T>
inline std::vector<T> atom_magnitudes(const SummandSystem<T>& sys) {
    std::vector<T> mags;
    for (const auto& g : sys.summands)
        for (const auto& [x, p] : g.dist.atoms)
            if (!(x == T(0))) mags.push_back(abs_value(x));
    std::sort(mags.begin(), mags.end());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    return mags;
}

} // namespace detail

//! Exact supremum  sup_{0 < w <= W} { gamma |sum_k mu_k(w)| + w sum_k sigma_k^2(w) }
//! over the physical threshold w.  Both mu_k and sigma_k^2 are constant on the
//! intervals between consecutive distinct atom magnitudes and the objective is
//! affine increasing in w there, so the supremum is attained at the interval
//! right endpoints: the candidates are all atom magnitudes <= W plus W itself,
//! evaluated with the left-continuous convention (sigma^2 weak, mu strict).
//! Equals B_n^3 L_E^3(W / B_n, gamma).
template <typename T>
inline T scaled_esseen_sup(const SummandSystem<T>& sys, const T& W, const T& gamma) {
    if (!(W > T(0))) throw std::domain_error("scaled_esseen_sup: requires W > 0");
    std::vector<T> cands = detail::atom_magnitudes(sys);
    while (!cands.empty() && cands.back() > W) cands.pop_back();
    cands.push_back(W);
    T best(0);
    bool first = true;
    for (const T& w : cands) {
        const T v = gamma * abs_value(system_mu_trunc(sys, w)) + w * system_sigma_tail(sys, w);
        if (first || best < v) {
            best = v;
            first = false;
        }
    }
    return best;
}

//! Variant of scaled_esseen_sup with W = +infinity: the candidates are all
//! atom magnitudes, and beyond the largest one the objective is the constant
//! gamma |sum_k E X_k^3|.
template <typename T>
inline T scaled_esseen_sup_unbounded(const SummandSystem<T>& sys, const T& gamma) {
    T best = gamma * abs_value(system_third_moment(sys));
    for (const T& w : detail::atom_magnitudes(sys)) {
        const T v = gamma * abs_value(system_mu_trunc(sys, w)) + w * system_sigma_tail(sys, w);
        if (best < v) best = v;
    }
    return best;
}

//! Exact  gamma |sum_k mu_k(W)| + sup_{0 < w <= W} w sum_k sigma_k^2(w),
//! i.e. B_n^3 L_R^3(W / B_n, gamma); W must be finite.
template <typename T>
inline T scaled_rozovskii_sup(const SummandSystem<T>& sys, const T& W, const T& gamma) {
    if (!(W > T(0))) throw std::domain_error("scaled_rozovskii_sup: requires W > 0");
    std::vector<T> cands = detail::atom_magnitudes(sys);
    while (!cands.empty() && cands.back() > W) cands.pop_back();
    cands.push_back(W);
    T best(0);
    for (const T& w : cands) {
        const T v = w * system_sigma_tail(sys, w);
        if (best < v) best = v;
    }
    return gamma * abs_value(system_mu_trunc(sys, W)) + best;
}

// ---------------------------------------------------------------------------
// Normalized fractions (double precision)
// ---------------------------------------------------------------------------

//! Lindeberg fraction L_n(z) = (1/B_n^2) sum_k E X_k^2 1(|X_k| >= z B_n).
inline double lindeberg_fraction(const SummandSystem<double>& sys, double z) {
    const double B = b_n(sys);
    return system_sigma_tail(sys, z * B) / (B * B);
}

//! M_n(z) = (1/B_n^3) sum_k E X_k^3 1(|X_k| < z B_n)  (signed).
inline double truncated_third_fraction(const SummandSystem<double>& sys, double z) {
    const double B = b_n(sys);
    if (std::isinf(z)) return system_third_moment(sys) / (B * B * B);
    return system_mu_trunc(sys, z * B) / (B * B * B);
}

//! Lambda_n(eps) = (1/B_n^3) sum_k E |X_k|^3 1(|X_k| < eps B_n).
inline double lambda_fraction(const SummandSystem<double>& sys, double eps) {
    const double B = b_n(sys);
    if (std::isinf(eps)) return system_abs_third_moment(sys) / (B * B * B);
    return system_abs_mu_trunc(sys, eps * B) / (B * B * B);
}

namespace detail {

//! gamma * m with the convention inf * 0 = 0 (symmetric systems keep a
//! finite Esseen fraction at gamma = +infinity).
inline double gamma_times(double gamma, double m) {
    if (std::isinf(gamma))
        return m == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return gamma * m;
}

} // namespace detail

//! Esseen fraction L_E^3(eps, gamma) = sup_{0<z<=eps} { gamma |M_n(z)| + z L_n(z) },
//! computed by exact candidate enumeration; eps may be +infinity.
inline double esseen_fraction(const SummandSystem<double>& sys, double eps, double gamma) {
    if (!(eps > 0.0)) throw std::domain_error("esseen_fraction: requires eps > 0");
    if (!(gamma > 0.0)) throw std::domain_error("esseen_fraction: requires gamma > 0");
    const double B = b_n(sys);
    const double B3 = B * B * B;
    std::vector<double> cands = detail::atom_magnitudes(sys);
    if (std::isinf(eps)) {
        double best = detail::gamma_times(gamma, std::abs(system_third_moment(sys)));
        for (double w : cands) {
            const double v = detail::gamma_times(gamma, std::abs(system_mu_trunc(sys, w))) +
                             w * system_sigma_tail(sys, w);
            best = std::max(best, v);
        }
        return best / B3;
    }
    const double W = eps * B;
    while (!cands.empty() && cands.back() > W) cands.pop_back();
    cands.push_back(W);
    double best = 0.0;
    for (double w : cands) {
        const double v = detail::gamma_times(gamma, std::abs(system_mu_trunc(sys, w))) +
                         w * system_sigma_tail(sys, w);
        best = std::max(best, v);
    }
    return best / B3;
}

//! Rozovskii fraction L_R^3(eps, gamma) = gamma |M_n(eps)| + sup_{0<z<=eps} z L_n(z);
//! requires finite eps.
inline double rozovskii_fraction(const SummandSystem<double>& sys, double eps, double gamma) {
    if (!(eps > 0.0) || std::isinf(eps))
        throw std::domain_error("rozovskii_fraction: requires finite eps > 0");
    if (!(gamma > 0.0)) throw std::domain_error("rozovskii_fraction: requires gamma > 0");
    const double B = b_n(sys);
    const double W = eps * B;
    std::vector<double> cands = detail::atom_magnitudes(sys);
    while (!cands.empty() && cands.back() > W) cands.pop_back();
    cands.push_back(W);
    double best = 0.0;
    for (double w : cands) best = std::max(best, w * system_sigma_tail(sys, w));
    return (detail::gamma_times(gamma, std::abs(system_mu_trunc(sys, W))) + best) / (B * B * B);
}

//! Lyapunov fraction L_{2+delta,n} = (1/B_n^{2+delta}) sum_k E |X_k|^{2+delta},
//! delta in (0, 1].
inline double lyapunov_fraction(const SummandSystem<double>& sys, double delta) {
    if (!(delta > 0.0) || !(delta <= 1.0))
        throw std::domain_error("lyapunov_fraction: requires delta in (0, 1]");
    const double B = b_n(sys);
    double s = 0.0;
    for (const auto& g : sys.summands)
        s += static_cast<double>(g.count) * abs_moment(g.dist, 2.0 + delta);
    return s / std::pow(B, 2.0 + delta);
}

//! Osipov functional Lambda_n(eps) + L_n(eps).
inline double osipov_fraction(const SummandSystem<double>& sys, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("osipov_fraction: requires eps > 0");
    return lambda_fraction(sys, eps) + lindeberg_fraction(sys, eps);
}

//! The four fraction values at shared parameters (eps, gamma, delta).
//! rozovskii is NaN when eps = +infinity (undefined there).
struct FractionReport {
    double esseen = 0.0;
    double rozovskii = 0.0;
    double lyapunov = 0.0;
    double osipov = 0.0;
    double eps = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

inline FractionReport fraction_report(const SummandSystem<double>& sys, double eps,
                                      double gamma, double delta) {
    FractionReport r;
    r.eps = eps;
    r.gamma = gamma;
    r.delta = delta;
    r.esseen = esseen_fraction(sys, eps, gamma);
    r.rozovskii = std::isinf(eps) ? std::numeric_limits<double>::quiet_NaN()
                                  : rozovskii_fraction(sys, eps, gamma);
    r.lyapunov = lyapunov_fraction(sys, delta);
    r.osipov = osipov_fraction(sys, eps);
    return r;
}

// ---------------------------------------------------------------------------
// Symmetrization and the quadratic-tails inequality
// ---------------------------------------------------------------------------

//! Distribution of X - X' for X, X' independent copies of d.
template <typename T>
inline DiscreteDistribution<T> symmetrize(const DiscreteDistribution<T>& d,
                                          double merge_tol = 0.0) {
    std::vector<std::pair<T, T>> atoms;
    atoms.reserve(d.atoms.size() * d.atoms.size());
    for (const auto& [x, p] : d.atoms)
        for (const auto& [y, q] : d.atoms) atoms.emplace_back(x - y, p * q);
    return normalized_atoms(std::move(atoms), merge_tol);
}

inline DiscreteDistribution<double> symmetrize(const DiscreteDistribution<double>& d) {
    return symmetrize(d, 1e-12);
}

//! sigma_s^2(z) / sigma^2(z/2) for the symmetrization s of d; bounded by 4.
//! Throws std::domain_error when sigma^2(z/2) = 0 (ratio undefined).
template <typename T>
inline T quadratic_tail_ratio(const DiscreteDistribution<T>& d, const T& z) {
    if (!(z > T(0))) throw std::domain_error("quadratic_tail_ratio: requires z > 0");
    const T denom = sigma_tail(d, z / T(2));
    if (denom == T(0))
        throw std::domain_error("quadratic_tail_ratio: ratio undefined, sigma^2(z/2) = 0");
    return sigma_tail(symmetrize(d), z) / denom;
}

// ---------------------------------------------------------------------------
// Exact characteristic function and Kolmogorov distance
// ---------------------------------------------------------------------------

namespace detail {

inline std::complex<double> pow_integer(std::complex<double> base, long long e) {
    std::complex<double> r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace detail

//! Exact characteristic function of the normalized sum,
//!   f_n(t) = E exp{i t S_n / B_n} = prod_k f_k(t / B_n).
inline std::complex<double> chf(const SummandSystem<double>& sys, double t) {
    const double s = t / b_n(sys);
    std::complex<double> acc{1.0, 0.0};
    for (const auto& g : sys.summands) {
        std::complex<double> f{0.0, 0.0};
        for (const auto& [x, p] : g.dist.atoms) f += p * std::exp(std::complex<double>(0.0, s * x));
        acc *= detail::pow_integer(f, g.count);
    }
    return acc;
}

//! Exact Kolmogorov distance sup_x |F_n(x B_n) - Phi(x)| between the
//! distribution of S_n / B_n and the standard normal law, computed by exact
//! convolution of all summands.  The supremum over a step function against a
//! continuous monotone function is attained at jump points, where both
//! one-sided values are inspected.  Throws std::runtime_error when the exact
//! convolution would exceed `max_atoms` support points (Monte-Carlo fallback
//! is out of scope).
inline double kolmogorov_distance(const SummandSystem<double>& sys,
                                  std::size_t max_atoms = 2'000'000) {
    std::vector<std::pair<double, double>> conv{{0.0, 1.0}};
    std::vector<std::pair<double, double>> next;
    for (const auto& g : sys.summands) {
        for (long long rep = 0; rep < g.count; ++rep) {
            next.clear();
            next.reserve(conv.size() * g.dist.atoms.size());
            for (const auto& [x, p] : conv)
                for (const auto& [y, q] : g.dist.atoms) next.emplace_back(x + y, p * q);
            if (next.size() > max_atoms)
                throw std::runtime_error(
                    "kolmogorov_distance: exact convolution support exceeds the atom cap");
            std::sort(next.begin(), next.end());
            conv.clear();
            for (const auto& a : next) {
                if (!conv.empty() && a.first - conv.back().first <= 1e-12)
                    conv.back().second += a.second;
                else
                    conv.push_back(a);
            }
        }
    }
    const double B = b_n(sys);
    double cdf = 0.0;
    double best = 0.0;
    for (const auto& [x, p] : conv) {
        const double phi = std_normal_cdf(x / B);
        best = std::max(best, std::abs(cdf - phi));
        cdf += p;
        best = std::max(best, std::abs(cdf - phi));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Named scenario systems
// ---------------------------------------------------------------------------

inline SummandSystem<double> to_double_system(const SummandSystem<Rational>& sys) {
    SummandSystem<double> out;
    out.summands.reserve(sys.summands.size());
    for (const auto& g : sys.summands) {
        SummandGroup<double> gd;
        gd.count = g.count;
        gd.dist.atoms.reserve(g.dist.atoms.size());
        for (const auto& [x, p] : g.dist.atoms)
            gd.dist.atoms.emplace_back(to_double(x), to_double(p));
        out.summands.push_back(std::move(gd));
    }
    return out;
}

//! Two-point distribution with atoms sqrt(q/p) (probability p) and
//! -sqrt(p/q) (probability q = 1-p); zero mean, unit variance.  Requires
//! p in [1/2, 1).
inline DiscreteDistribution<double> scenario_two_point(double p) {
    if (!(p >= 0.5) || !(p < 1.0))
        throw std::domain_error("scenario_two_point: requires p in [1/2, 1)");
    const double q = 1.0 - p;
    DiscreteDistribution<double> d;
    d.atoms = {{-std::sqrt(p / q), q}, {std::sqrt(q / p), p}};
    return d;
}

//! Skewed three-point distribution with atoms (4/5, -1, 7/5) and masses
//! (10/27, 53/108, 5/36); zero mean, unit variance.
inline DiscreteDistribution<Rational> scenario_three_point_skewed() {
    DiscreteDistribution<Rational> d;
    d.atoms = {{Rational(-1), Rational(53, 108)},
               {Rational(4, 5), Rational(10, 27)},
               {Rational(7, 5), Rational(5, 36)}};
    return d;
}

//! Symmetric four-point distribution with atoms +-9/10 (probability 400/819
//! each) and +-3 (probability 19/1638 each); zero mean, unit variance.
inline DiscreteDistribution<Rational> scenario_four_point_symmetric() {
    DiscreteDistribution<Rational> d;
    d.atoms = {{Rational(-3), Rational(19, 1638)},
               {Rational(-9, 10), Rational(400, 819)},
               {Rational(9, 10), Rational(400, 819)},
               {Rational(3), Rational(19, 1638)}};
    return d;
}

//! Alternating-sign system: X_k distributed as X for odd k and as -X for
//! even k, where X has atoms (1/2, -1, 2) with masses (4/9, 4/9, 1/9);
//! n must be even (the paired cancellation needs equal counts).
inline SummandSystem<Rational> scenario_alternating_three_point(long long n) {
    if (n < 2 || n % 2 != 0)
        throw std::domain_error("scenario_alternating_three_point: requires even n >= 2");
    DiscreteDistribution<Rational> plus;
    plus.atoms = {{Rational(-1), Rational(4, 9)},
                  {Rational(1, 2), Rational(4, 9)},
                  {Rational(2), Rational(1, 9)}};
    DiscreteDistribution<Rational> minus;
    minus.atoms = {{Rational(-2), Rational(1, 9)},
                   {Rational(-1, 2), Rational(4, 9)},
                   {Rational(1), Rational(4, 9)}};
    SummandSystem<Rational> sys;
    sys.summands.push_back({std::move(plus), n / 2});
    sys.summands.push_back({std::move(minus), n / 2});
    return sys;
}

//! Closed-form moments of the heavy-tail density family indexed by
//! theta in (0, 1): the variance and the third absolute moment of the
//! centered law.  Only the moments are exposed; the ratio
//! |alpha3| / sigma^2 diverges as theta -> 0.
struct ParetoMoments {
    double sigma2 = 0.0;
    double alpha3 = 0.0;
};

inline ParetoMoments scenario_pareto_moments(double theta) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::domain_error("scenario_pareto_moments: requires theta in (0, 1)");
    ParetoMoments m;
    m.sigma2 = 2.0 * (3.0 + theta) * (7.0 + 5.0 * theta) / ((1.0 + theta) * (17.0 + 7.0 * theta));
    m.alpha3 = 4.0 * (3.0 + theta) * (2.0 - 8.0 * theta - 3.0 * theta * theta) /
               (theta * (17.0 + 7.0 * theta));
    return m;
}

// ---------------------------------------------------------------------------
// Plain-text system input
// ---------------------------------------------------------------------------

//! Parse a numeric token: either a decimal literal or an exact fraction
//! "num/den".
inline double parse_number(std::string_view tok) {
    if (tok.find('/') != std::string_view::npos) return to_double(Rational::parse(tok));
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw std::runtime_error("cannot parse number '" + s + "'");
    return v;
}

//! Parse a summand system from plain text.  Format: '#' starts a comment;
//! a line "dist [count]" opens a new i.i.d. block repeated `count` times
//! (default 1); every other non-empty line is an atom "x p" where each token
//! is a decimal or a fraction "num/den".  A file without any "dist" header is
//! a single distribution taken once.  The parsed system is validated (positive
//! probabilities summing to one, zero means, positive B_n); violations throw
//! std::runtime_error or std::invalid_argument with a diagnostic.
inline SummandSystem<double> parse_system_text(std::istream& in) {
    SummandSystem<double> sys;
    std::vector<std::pair<double, double>> atoms;
    long long count = 1;
    bool have_block = false;
    const auto flush = [&] {
        if (!have_block) return;
        if (atoms.empty()) throw std::runtime_error("system input: 'dist' block without atoms");
        SummandGroup<double> g;
        g.count = count;
        g.dist = normalized_atoms(std::move(atoms));
        for (std::size_t i = 1; i < g.dist.atoms.size(); ++i)
            if (!(g.dist.atoms[i - 1].first < g.dist.atoms[i].first))
                throw std::runtime_error("system input: duplicate atom location");
        atoms.clear();
        sys.summands.push_back(std::move(g));
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok1;
        if (!(ls >> tok1)) continue;
        try {
            if (tok1 == "dist" || tok1 == "distribution") {
                flush();
                have_block = true;
                count = 1;
                std::string tok2;
                if (ls >> tok2) {
                    count = std::stoll(tok2);
                    if (count < 1) throw std::runtime_error("repeat count must be >= 1");
                }
            } else {
                std::string tok2;
                if (!(ls >> tok2)) throw std::runtime_error("atom line needs 'x p'");
                std::string extra;
                if (ls >> extra) throw std::runtime_error("unexpected trailing token '" + extra + "'");
                have_block = true;
                atoms.emplace_back(parse_number(tok1), parse_number(tok2));
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("system input line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    flush();
    if (sys.summands.empty()) throw std::runtime_error("system input: no distributions found");
    validate(sys);
    return sys;
}

} // namespace cltbounds
