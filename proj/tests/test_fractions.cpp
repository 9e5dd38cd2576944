#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <vector>

#include "cltbounds/fractions.hpp"
#include "support/random_systems.hpp"

using namespace cltbounds;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kInfinity = std::numeric_limits<double>::infinity();

template <typename T>
SummandSystem<T> iid(DiscreteDistribution<T> d, long long n) {
    SummandSystem<T> sys;
    sys.summands.push_back({std::move(d), n});
    return sys;
}

DiscreteDistribution<double> rademacher() {
    DiscreteDistribution<double> d;
    d.atoms = {{-1.0, 0.5}, {1.0, 0.5}};
    return d;
}

} // namespace

TEST_CASE("rational arithmetic is canonical and exact") {
    // Canonical form: positive denominator, reduced.
    REQUIRE(Rational(6, -4) == Rational(-3, 2));
    REQUIRE(Rational(0, 7) == Rational(0));
    REQUIRE(Rational(-10, -15) == Rational(2, 3));

    // Field operations.
    REQUIRE(Rational(1, 6) + Rational(1, 3) == Rational(1, 2));
    REQUIRE(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
    REQUIRE(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
    REQUIRE(Rational(3, 4) / Rational(9, 2) == Rational(1, 6));
    REQUIRE(-Rational(5, 7) == Rational(-5, 7));

    // Ordering compares cross products, not doubles.
    REQUIRE(Rational(1, 3) < Rational(2, 5));
    REQUIRE(Rational(-1, 2) < Rational(-1, 3));
    REQUIRE(Rational(7, 5) <= Rational(7, 5));
    REQUIRE(Rational(2, 1) > Rational(199, 100));

    REQUIRE(to_double(Rational(1, 4)) == 0.25);
    REQUIRE(abs_value(Rational(-3, 7)) == Rational(3, 7));

    // Parsing.
    REQUIRE(Rational::parse("22/25") == Rational(22, 25));
    REQUIRE(Rational::parse("-7/3") == Rational(-7, 3));
    REQUIRE(Rational::parse("42") == Rational(42));
    REQUIRE_THROWS_AS(Rational::parse("1/x"), std::runtime_error);
    REQUIRE_THROWS_AS(Rational::parse("1.5"), std::runtime_error);

    // Error cases.
    REQUIRE_THROWS_AS(Rational(1, 0), std::domain_error);
    REQUIRE_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    const Rational big(1LL << 62);
    REQUIRE_THROWS_AS(big * Rational(4), std::overflow_error);
}

TEST_CASE("truncated moments use weak tails and strict truncation") {
    // Hand case: atoms (-1, 2/3), (2, 1/3); mean 0, E X^2 = 2, E X^3 = 2.
    DiscreteDistribution<Rational> d;
    d.atoms = {{Rational(-1), Rational(2, 3)}, {Rational(2), Rational(1, 3)}};
    validate(d);

    REQUIRE(second_moment(d) == Rational(2));
    REQUIRE(third_moment(d) == Rational(2));
    REQUIRE(abs_third_moment(d) == Rational(10, 3));

    // sigma^2(z) = E X^2 1(|X| >= z): the atom at z itself is included.
    REQUIRE(sigma_tail(d, Rational(0)) == Rational(2));
    REQUIRE(sigma_tail(d, Rational(1)) == Rational(2));
    REQUIRE(sigma_tail(d, Rational(2)) == Rational(4, 3));
    REQUIRE(sigma_tail(d, Rational(201, 100)) == Rational(0));

    // mu(z) = E X^3 1(|X| < z): the atom at z itself is excluded.
    REQUIRE(mu_trunc(d, Rational(1)) == Rational(0));
    REQUIRE(mu_trunc(d, Rational(2)) == Rational(-2, 3));
    REQUIRE(mu_trunc(d, Rational(201, 100)) == Rational(2));

    REQUIRE(abs_mu_trunc(d, Rational(2)) == Rational(2, 3));
    REQUIRE(abs_mu_trunc(d, Rational(3)) == Rational(10, 3));

    REQUIRE_THROWS_AS(sigma_tail(d, Rational(-1)), std::domain_error);
    REQUIRE_THROWS_AS(mu_trunc(d, Rational(-1)), std::domain_error);
    REQUIRE_THROWS_AS(abs_mu_trunc(d, Rational(-1)), std::domain_error);
}

TEST_CASE("validation rejects malformed distributions and systems") {
    DiscreteDistribution<double> empty;
    REQUIRE_THROWS_AS(validate(empty), std::invalid_argument);

    DiscreteDistribution<double> bad_p;
    bad_p.atoms = {{-1.0, 1.5}, {1.0, -0.5}};
    REQUIRE_THROWS_AS(validate(bad_p), std::invalid_argument);

    DiscreteDistribution<double> unsorted;
    unsorted.atoms = {{1.0, 0.5}, {-1.0, 0.5}};
    REQUIRE_THROWS_AS(validate(unsorted), std::invalid_argument);

    DiscreteDistribution<double> not_normalized;
    not_normalized.atoms = {{-1.0, 0.3}, {1.0, 0.3}};
    REQUIRE_THROWS_AS(validate(not_normalized), std::invalid_argument);

    DiscreteDistribution<double> shifted;
    shifted.atoms = {{0.0, 0.5}, {1.0, 0.5}};
    REQUIRE_THROWS_AS(validate(shifted), std::invalid_argument);
    REQUIRE_NOTHROW(validate(shifted, /*require_zero_mean=*/false));

    SummandSystem<double> no_groups;
    REQUIRE_THROWS_AS(validate(no_groups), std::invalid_argument);

    SummandSystem<double> bad_count = iid(rademacher(), 1);
    bad_count.summands[0].count = 0;
    REQUIRE_THROWS_AS(validate(bad_count), std::invalid_argument);

    DiscreteDistribution<double> degenerate;
    degenerate.atoms = {{0.0, 1.0}};
    REQUIRE_THROWS_AS(validate(iid(degenerate, 3)), std::invalid_argument);
    REQUIRE_THROWS_AS(b_n(iid(degenerate, 3)), std::invalid_argument);
}

TEST_CASE("skewed three-point system has exact rational suprema") {
    const DiscreteDistribution<Rational> d = scenario_three_point_skewed();
    validate(d);
    REQUIRE(second_moment(d) == Rational(1));
    REQUIRE(third_moment(d) == Rational(2, 25));

    // For n i.i.d. unit-variance summands the scaled supremum equals
    // B_n^3 L^3(W / B_n, gamma) = n^{3/2} L^3, so at eps = 1 (W = sqrt(n))
    // sqrt(n) L^3 = scaled / n.  Perfect-square n keeps W rational.
    for (long long n : {4LL, 25LL, 100LL}) {
        const SummandSystem<Rational> sys = iid(d, n);
        const Rational W(static_cast<long long>(std::llround(std::sqrt(double(n)))));
        REQUIRE(W * W == Rational(n));
        REQUIRE(scaled_esseen_sup(sys, W, Rational(1)) == Rational(n) * Rational(643, 675));
        REQUIRE(scaled_rozovskii_sup(sys, W, Rational(1)) == Rational(n) * Rational(22, 25));
        // All atoms lie below W and the constant tail value gamma |E X^3| is
        // dominated, so the W-capped and unbounded suprema agree exactly.
        REQUIRE(scaled_esseen_sup_unbounded(sys, Rational(1)) ==
                scaled_esseen_sup(sys, W, Rational(1)));
    }

    // Same values through the double-precision fractions, including an n
    // whose B_n is irrational.
    for (long long n : {2LL, 25LL}) {
        const SummandSystem<double> sys = to_double_system(iid(d, n));
        const double root_n = std::sqrt(double(n));
        REQUIRE_THAT(root_n * esseen_fraction(sys, 1.0, 1.0),
                     WithinRel(643.0 / 675.0, 1e-12));
        REQUIRE_THAT(root_n * rozovskii_fraction(sys, 1.0, 1.0),
                     WithinRel(22.0 / 25.0, 1e-12));
    }

    // W below the largest atom magnitude: the supremum sits at the endpoint
    // W = 9/10, where the objective is mu(9/10) + (9/10) sigma^2(9/10).
    const SummandSystem<Rational> one = iid(d, 1);
    REQUIRE(scaled_esseen_sup(one, Rational(9, 10), Rational(1)) == Rational(1183, 1350));
    REQUIRE(scaled_esseen_sup(one, Rational(4, 5), Rational(1)) == Rational(4, 5));

    REQUIRE_THROWS_AS(scaled_esseen_sup(one, Rational(0), Rational(1)), std::domain_error);
    REQUIRE_THROWS_AS(scaled_rozovskii_sup(one, Rational(-1), Rational(1)), std::domain_error);
}

TEST_CASE("symmetric four-point system: suprema, Osipov value, strict gap") {
    const DiscreteDistribution<Rational> d = scenario_four_point_symmetric();
    validate(d);
    REQUIRE(second_moment(d) == Rational(1));
    REQUIRE(third_moment(d) == Rational(0));

    // Odd moments vanish, so both suprema reduce to sup_w w sigma^2(w) = 9/10,
    // once W = eps sqrt(n) covers the outer atoms (n eps^2 >= 9).
    REQUIRE(scaled_esseen_sup(iid(d, 9), Rational(3), Rational(1)) == Rational(9) * Rational(9, 10));
    REQUIRE(scaled_esseen_sup(iid(d, 16), Rational(4), Rational(1)) ==
            Rational(16) * Rational(9, 10));
    REQUIRE(scaled_rozovskii_sup(iid(d, 9), Rational(3), Rational(1)) ==
            Rational(9) * Rational(9, 10));
    REQUIRE(scaled_rozovskii_sup(iid(d, 16), Rational(4), Rational(1)) ==
            Rational(16) * Rational(9, 10));
    // gamma is irrelevant when every truncated third moment is zero.
    REQUIRE(scaled_esseen_sup(iid(d, 9), Rational(3), Rational(50)) ==
            scaled_esseen_sup(iid(d, 9), Rational(3), Rational(1)));

    // Osipov functional at n = 9, eps = 1 (B_n = 3):
    // sqrt(n) (Lambda_n(1) + L_n(1)) = 324/455 + 57/91 = 87/65.
    const SummandSystem<double> sys9 = to_double_system(iid(d, 9));
    REQUIRE_THAT(3.0 * osipov_fraction(sys9, 1.0), WithinRel(87.0 / 65.0, 1e-12));
    REQUIRE_THAT(3.0 * lambda_fraction(sys9, 1.0), WithinRel(324.0 / 455.0, 1e-12));
    REQUIRE_THAT(3.0 * lindeberg_fraction(sys9, 1.0), WithinRel(57.0 / 91.0, 1e-12));

    // Exact strict comparison 2.73 * 9/10 < 1.87 * 87/65 in rational arithmetic.
    const Rational lhs = Rational(273, 100) * Rational(9, 10);
    const Rational rhs = Rational(187, 100) * Rational(87, 65);
    REQUIRE(lhs == Rational(2457, 1000));
    REQUIRE(rhs == Rational(16269, 6500));
    REQUIRE(lhs < rhs);

    // The infinite-gamma convention 0 * infinity = 0 keeps the supremum
    // finite when every truncated third moment cancels exactly (Rademacher
    // sums and the group-mirrored alternating system both cancel exactly in
    // floating point; the interleaved four-point sum leaves a ~1e-17 residue,
    // which infinity * residue correctly blows up, so it is not tested here).
    REQUIRE_THAT(2.0 * esseen_fraction(iid(rademacher(), 4), kInfinity, kInfinity),
                 WithinRel(1.0, 1e-12));
    const SummandSystem<double> alt4 = to_double_system(scenario_alternating_three_point(4));
    REQUIRE_THAT(2.0 * esseen_fraction(alt4, 1.0, kInfinity), WithinRel(8.0 / 9.0, 1e-12));
    // A skewed system has nonzero truncated third moments, so gamma = infinity
    // pushes the supremum to infinity.
    const SummandSystem<double> skew =
        to_double_system(iid(scenario_three_point_skewed(), 4));
    REQUIRE(std::isinf(esseen_fraction(skew, kInfinity, kInfinity)));
}

TEST_CASE("alternating-sign system cancels third moments exactly") {
    REQUIRE_THROWS_AS(scenario_alternating_three_point(3), std::domain_error);
    REQUIRE_THROWS_AS(scenario_alternating_three_point(0), std::domain_error);

    for (long long n : {4LL, 16LL, 36LL}) {
        const SummandSystem<Rational> sys = scenario_alternating_three_point(n);
        validate(sys);
        REQUIRE(total_count(sys) == n);
        REQUIRE(sum_second_moment(sys) == Rational(n));
        REQUIRE(system_third_moment(sys) == Rational(0));
        // Every truncated third moment cancels between the mirrored halves.
        for (long long w = 1; w <= 3; ++w)
            REQUIRE(system_mu_trunc(sys, Rational(w)) == Rational(0));

        const Rational W(static_cast<long long>(std::llround(std::sqrt(double(n)))));
        REQUIRE(scaled_esseen_sup(sys, W, Rational(1)) == Rational(n) * Rational(8, 9));
        REQUIRE(scaled_rozovskii_sup(sys, W, Rational(1)) == Rational(n) * Rational(8, 9));
        REQUIRE(scaled_esseen_sup(sys, W, Rational(13, 2)) ==
                scaled_esseen_sup(sys, W, Rational(1)));

        // Osipov functional: sqrt(n) (Lambda_n(1) + L_n(1)) = 25/18 for every
        // even n >= 4 (at n = 4 the strict truncation at W = 2 trades exactly
        // against the surviving tail term).
        const SummandSystem<double> dsys = to_double_system(sys);
        REQUIRE_THAT(std::sqrt(double(n)) * osipov_fraction(dsys, 1.0),
                     WithinRel(25.0 / 18.0, 1e-12));
    }
}

TEST_CASE("two-point family matches its piecewise closed forms") {
    const long long n = 16;
    const double root_n = 4.0;
    for (double p : {0.5, 0.55, 0.62, 0.7, 0.75, 0.9}) {
        const double q = 1.0 - p;
        const double a = std::sqrt(q / p);
        const double b = std::sqrt(p / q);
        const double rpq = std::sqrt(p * q);
        const SummandSystem<double> sys = iid(scenario_two_point(p), n);
        REQUIRE_THAT(b_n(sys), WithinRel(root_n, 1e-13));

        // sqrt(n) L_E^3(eps, 1) as a function of W = eps sqrt(n):
        //   W           for W <= a,
        //   q^2/sqrt(pq) + p W   for a <= W <= b,
        //   (q^2+p^2)/sqrt(pq)   for W >= b.
        const auto expected_esseen = [&](double W) {
            if (W <= a) return W;
            if (W <= b) return q * q / rpq + p * W;
            return (q * q + p * p) / rpq;
        };
        const std::vector<double> Ws = {0.5 * a,        0.999 * a, 0.5 * (a + b),
                                        0.25 * a + 0.75 * b, 1.2 * b,   5.0 * b};
        for (double W : Ws) {
            const double eps = W / root_n;
            REQUIRE_THAT(root_n * esseen_fraction(sys, eps, 1.0),
                         WithinRel(expected_esseen(W), 1e-12));
        }
        // Deep truncation regime for Rozovskii: mu vanishes below the first
        // atom and the tail supremum is W itself.
        REQUIRE_THAT(root_n * rozovskii_fraction(sys, 0.5 * a / root_n, 1.0),
                     WithinRel(0.5 * a, 1e-12));
        // Intermediate regime: gamma |mu(W)| + max(a, p W).
        if (p > 0.5) {
            const double W = 0.5 * (a + b);
            REQUIRE_THAT(root_n * rozovskii_fraction(sys, W / root_n, 1.0),
                         WithinRel(q * q / rpq + std::max(a, p * W), 1e-12));
        }
        // Full-support regime: branch change at q = p^2 (p = (sqrt(5)-1)/2).
        const double roz_full = p * p >= q ? (p - q + p * p) / rpq : p / rpq;
        for (double W : {1.5 * b, 4.0 * b}) {
            REQUIRE_THAT(root_n * rozovskii_fraction(sys, W / root_n, 1.0),
                         WithinRel(roz_full, 1e-12));
        }

        // Lyapunov fraction at delta = 1 equals E|X|^3 / sqrt(n) and matches
        // the saturated Esseen supremum.
        REQUIRE_THAT(root_n * lyapunov_fraction(sys, 1.0),
                     WithinRel((q * q + p * p) / rpq, 1e-12));
    }

    REQUIRE_THROWS_AS(scenario_two_point(0.49), std::domain_error);
    REQUIRE_THROWS_AS(scenario_two_point(1.0), std::domain_error);
}

TEST_CASE("fraction conventions at the edges") {
    const SummandSystem<double> sys = to_double_system(iid(scenario_three_point_skewed(), 5));

    // L_n(0) = 1 by convention (the whole variance).
    REQUIRE_THAT(lindeberg_fraction(sys, 0.0), WithinAbs(1.0, 1e-12));
    // Lindeberg fraction is nonincreasing in z.
    double prev = 2.0;
    for (double z : {0.0, 0.1, 0.3, 0.5, 0.8, 1.2, 5.0}) {
        const double v = lindeberg_fraction(sys, z);
        REQUIRE(v <= prev + 1e-15);
        prev = v;
    }
    // Truncation thresholds at infinity recover the full moments.
    const double B = b_n(sys);
    REQUIRE_THAT(truncated_third_fraction(sys, kInfinity),
                 WithinRel(to_double(system_third_moment(iid(scenario_three_point_skewed(), 5))) /
                               (B * B * B),
                           1e-12));
    REQUIRE_THAT(lambda_fraction(sys, kInfinity),
                 WithinRel(lyapunov_fraction(sys, 1.0), 1e-12));

    REQUIRE_THROWS_AS(esseen_fraction(sys, 0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(esseen_fraction(sys, 1.0, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(rozovskii_fraction(sys, kInfinity, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(rozovskii_fraction(sys, -1.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(lyapunov_fraction(sys, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(lyapunov_fraction(sys, 1.5), std::domain_error);
    REQUIRE_THROWS_AS(osipov_fraction(sys, 0.0), std::domain_error);

    const FractionReport at_inf = fraction_report(sys, kInfinity, 2.0, 0.5);
    REQUIRE(std::isnan(at_inf.rozovskii));
    REQUIRE(at_inf.esseen == esseen_fraction(sys, kInfinity, 2.0));
    REQUIRE(at_inf.lyapunov == lyapunov_fraction(sys, 0.5));
    REQUIRE(at_inf.osipov == osipov_fraction(sys, kInfinity));
    REQUIRE(at_inf.eps == kInfinity);

    const FractionReport fin = fraction_report(sys, 0.7, 1.0, 1.0);
    REQUIRE(fin.rozovskii == rozovskii_fraction(sys, 0.7, 1.0));
    REQUIRE(fin.esseen == esseen_fraction(sys, 0.7, 1.0));
    REQUIRE(fin.osipov == osipov_fraction(sys, 0.7));
}

namespace {

// Independent grid evaluator for the normalized objectives, built on prefix
// sums over the sorted atom magnitudes (strict cut for mu, weak for sigma^2).
struct MagnitudeProfile {
    std::vector<double> mags;   // distinct |x| > 0, ascending
    std::vector<double> cum_mu; // sum of count * x^3 p over |x| <= mags[i]
    std::vector<double> cum_s2; // sum of count * x^2 p over |x| <= mags[i]
    double total_s2 = 0.0;
    double B = 1.0;

    explicit MagnitudeProfile(const SummandSystem<double>& sys) {
        std::vector<std::pair<double, std::pair<double, double>>> rows;
        for (const auto& g : sys.summands)
            for (const auto& [x, p] : g.dist.atoms) {
                if (x == 0.0) continue;
                const double c = static_cast<double>(g.count);
                rows.push_back({std::abs(x), {c * x * x * x * p, c * x * x * p}});
                total_s2 += c * x * x * p;
            }
        std::sort(rows.begin(), rows.end(),
                  [](const auto& u, const auto& v) { return u.first < v.first; });
        double mu = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            mu += rows[i].second.first;
            s2 += rows[i].second.second;
            if (i + 1 < rows.size() && rows[i + 1].first == rows[i].first) continue;
            mags.push_back(rows[i].first);
            cum_mu.push_back(mu);
            cum_s2.push_back(s2);
        }
        B = b_n(sys);
    }

    // gamma |M_n(z)| + z L_n(z) at the normalized threshold z.
    double esseen_objective(double z, double gamma) const {
        const double w = z * B;
        const auto it = std::lower_bound(mags.begin(), mags.end(), w);
        const std::size_t below = static_cast<std::size_t>(it - mags.begin());
        const double mu = below == 0 ? 0.0 : cum_mu[below - 1];
        const double s2 = total_s2 - (below == 0 ? 0.0 : cum_s2[below - 1]);
        return gamma * std::abs(mu) / (B * B * B) + z * s2 / (B * B);
    }

    double tail_objective(double z) const { return esseen_objective(z, 0.0); }

    double mu_at(double z, double gamma) const {
        return esseen_objective(z, gamma) - tail_objective(z);
    }
};

} // namespace

TEST_CASE("candidate suprema dominate dense grids on random systems") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> eps_d(0.3, 2.5);
    std::uniform_real_distribution<double> gamma_d(0.3, 3.0);
    const int kGrid = 100000;

    for (int trial = 0; trial < 60; ++trial) {
        const SummandSystem<double> sys = testing::random_system(rng);
        const MagnitudeProfile prof(sys);
        const double eps = eps_d(rng);
        const double gamma = gamma_d(rng);

        double grid_esseen = 0.0, grid_tail = 0.0;
        for (int k = 1; k <= kGrid; ++k) {
            const double z = eps * k / kGrid;
            grid_esseen = std::max(grid_esseen, prof.esseen_objective(z, gamma));
            grid_tail = std::max(grid_tail, prof.tail_objective(z));
        }
        const double step = eps / kGrid;

        // The candidate-based supremum bounds every grid value and the grid
        // reaches it up to one affine step (slope L_n <= 1).
        const double lib_esseen = esseen_fraction(sys, eps, gamma);
        REQUIRE(grid_esseen <= lib_esseen + 1e-12);
        REQUIRE(lib_esseen <= grid_esseen + step + 1e-9);

        const double lib_roz = rozovskii_fraction(sys, eps, gamma);
        const double roz_grid = prof.mu_at(eps, gamma) + grid_tail;
        REQUIRE(roz_grid <= lib_roz + 1e-12);
        REQUIRE(lib_roz <= roz_grid + step + 1e-9);
    }

    // Unbounded variant: past the largest magnitude the objective is the
    // constant gamma |E sum X^3|.
    for (int trial = 0; trial < 20; ++trial) {
        const SummandSystem<double> sys = testing::random_system(rng);
        const MagnitudeProfile prof(sys);
        const double gamma = gamma_d(rng);
        const double zmax = 1.05 * prof.mags.back() / prof.B;
        double grid = 0.0;
        for (int k = 1; k <= kGrid; ++k)
            grid = std::max(grid, prof.esseen_objective(zmax * k / kGrid, gamma));
        const double lib = esseen_fraction(sys, kInfinity, gamma);
        REQUIRE(grid <= lib + 1e-12);
        REQUIRE(lib <= grid + zmax / kGrid + 1e-9);
    }
}

TEST_CASE("esseen fraction is dominated by the lyapunov fraction at gamma = 1") {
    std::mt19937 rng(555001);
    std::uniform_real_distribution<double> eps_d(0.2, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const SummandSystem<double> sys = testing::random_system(rng);
        const double lyap = lyapunov_fraction(sys, 1.0);
        REQUIRE(esseen_fraction(sys, kInfinity, 1.0) <= lyap + 1e-12);
        REQUIRE(esseen_fraction(sys, eps_d(rng), 1.0) <= lyap + 1e-12);
    }
}

TEST_CASE("symmetrization and the quadratic-tails inequality") {
    // Two-point case with an exact ratio: X - X' has atoms {-1, 0, 1} with
    // masses {0.24, 0.52, 0.24}; sigma_s^2(1) / sigma^2(1/2) = 0.48/0.144.
    DiscreteDistribution<double> d;
    d.atoms = {{-0.6, 0.4}, {0.4, 0.6}};
    validate(d);
    const DiscreteDistribution<double> s = symmetrize(d);
    REQUIRE(s.atoms.size() == 3);
    REQUIRE_THAT(s.atoms[0].first, WithinAbs(-1.0, 1e-15));
    REQUIRE_THAT(s.atoms[1].first, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(s.atoms[0].second, WithinRel(0.24, 1e-13));
    REQUIRE_THAT(s.atoms[1].second, WithinRel(0.52, 1e-13));
    REQUIRE_THAT(quadratic_tail_ratio(d, 1.0), WithinRel(10.0 / 3.0, 1e-12));

    // Exact rational symmetrization of the skewed three-point law.
    const DiscreteDistribution<Rational> sr = symmetrize(scenario_three_point_skewed());
    validate(sr, /*require_zero_mean=*/true);
    REQUIRE(sr.atoms.size() == 7);
    REQUIRE(second_moment(sr) == Rational(2)); // Var(X - X') = 2 Var(X)
    REQUIRE(third_moment(sr) == Rational(0));
    for (std::size_t i = 0; i < sr.atoms.size(); ++i) {
        const auto& [x, p] = sr.atoms[i];
        const auto& [xm, pm] = sr.atoms[sr.atoms.size() - 1 - i];
        REQUIRE(xm == -x);
        REQUIRE(pm == p);
    }
    REQUIRE(sr.atoms[3].first == Rational(0));
    REQUIRE(sr.atoms[3].second == Rational(2317, 5832));
    REQUIRE(sr.atoms[4].first == Rational(3, 5));
    REQUIRE(sr.atoms[4].second == Rational(25, 486));

    // Near-extremal two-point construction: the ratio approaches 4.
    const double av = 0.5 - 1e-4, bv = 0.5 + 1e-4;
    DiscreteDistribution<double> ext;
    ext.atoms = {{-bv, av / (av + bv)}, {av, bv / (av + bv)}};
    validate(ext);
    const double ratio = quadratic_tail_ratio(ext, av + bv);
    REQUIRE(ratio > 3.99);
    REQUIRE(ratio <= 4.0 + 1e-12);
    REQUIRE_THAT(ratio, WithinRel(2.0 * (av + bv) / bv, 1e-10));

    // sigma_s^2(z) <= 4 sigma^2(z/2) and the split form
    // sigma_s^2(z) <= 2 sigma^2(alpha z) + 2 sigma^2((1 - alpha) z).
    std::mt19937 rng(777003);
    std::uniform_real_distribution<double> z_d(1e-3, 4.0);
    std::uniform_real_distribution<double> alpha_d(0.05, 0.95);
    for (int trial = 0; trial < 20; ++trial) {
        const DiscreteDistribution<double> rd = testing::random_zero_mean_distribution(rng);
        const DiscreteDistribution<double> rs = symmetrize(rd);
        for (int j = 0; j < 300; ++j) {
            const double z = z_d(rng);
            const double lhs = sigma_tail(rs, z);
            REQUIRE(lhs <= 4.0 * sigma_tail(rd, 0.5 * z) + 1e-12);
            const double alpha = alpha_d(rng);
            REQUIRE(lhs <= 2.0 * sigma_tail(rd, alpha * z) +
                               2.0 * sigma_tail(rd, (1.0 - alpha) * z) + 1e-12);
        }
    }

    REQUIRE_THROWS_AS(quadratic_tail_ratio(d, 0.0), std::domain_error);
    DiscreteDistribution<double> narrow;
    narrow.atoms = {{-0.1, 0.5}, {0.1, 0.5}};
    REQUIRE_THROWS_WITH(quadratic_tail_ratio(narrow, 10.0),
                        Catch::Matchers::ContainsSubstring("sigma^2(z/2) = 0"));
}

TEST_CASE("characteristic functions of simple systems have closed forms") {
    // n = 1 Rademacher: f(t) = cos t.
    const SummandSystem<double> r1 = iid(rademacher(), 1);
    // n = 2: f(t) = cos^2(t / sqrt(2)).
    const SummandSystem<double> r2 = iid(rademacher(), 2);
    for (double t : {0.0, 0.3, 1.0, 2.7, 10.0, -4.2}) {
        const std::complex<double> f1 = chf(r1, t);
        REQUIRE_THAT(f1.real(), WithinAbs(std::cos(t), 1e-14));
        REQUIRE_THAT(f1.imag(), WithinAbs(0.0, 1e-14));
        const std::complex<double> f2 = chf(r2, t);
        const double c = std::cos(t / std::sqrt(2.0));
        REQUIRE_THAT(f2.real(), WithinAbs(c * c, 1e-14));
        REQUIRE_THAT(f2.imag(), WithinAbs(0.0, 1e-14));
    }

    // General properties: f(0) = 1, |f| <= 1, f(-t) = conj(f(t)).
    std::mt19937 rng(99017);
    for (int trial = 0; trial < 10; ++trial) {
        const SummandSystem<double> sys = testing::random_system(rng);
        REQUIRE_THAT(std::abs(chf(sys, 0.0) - std::complex<double>(1.0, 0.0)),
                     WithinAbs(0.0, 1e-12));
        for (double t : {0.17, 1.9, 7.3, 23.0}) {
            const std::complex<double> f = chf(sys, t);
            REQUIRE(std::abs(f) <= 1.0 + 1e-12);
            const std::complex<double> g = chf(sys, -t);
            REQUIRE_THAT(std::abs(g - std::conj(f)), WithinAbs(0.0, 1e-13));
        }
    }
}

TEST_CASE("exact kolmogorov distance by convolution") {
    // Single Rademacher: sup |F - Phi| = Phi(1) - 1/2 at the jump.
    const double phi1 = 0.5 * std::erfc(-1.0 / std::sqrt(2.0));
    REQUIRE_THAT(kolmogorov_distance(iid(rademacher(), 1)),
                 WithinAbs(phi1 - 0.5, 1e-13));

    // Four Rademachers: F(0^-) = 5/16, F(0) = 11/16, so the distance is
    // exactly 3/16 at the central jump.
    REQUIRE_THAT(kolmogorov_distance(iid(rademacher(), 4)),
                 WithinAbs(3.0 / 16.0, 1e-13));

    // The distance shrinks as the number of summands grows.
    const double d1 = kolmogorov_distance(iid(rademacher(), 1));
    const double d4 = kolmogorov_distance(iid(rademacher(), 4));
    const double d16 = kolmogorov_distance(iid(rademacher(), 16));
    REQUIRE(d4 < d1);
    REQUIRE(d16 < d4);

    // Support cap: six non-lattice four-point factors exceed a small cap.
    std::mt19937 rng(424243);
    SummandSystem<double> big;
    for (int g = 0; g < 6; ++g) {
        const DiscreteDistribution<double> d = testing::random_zero_mean_distribution(rng);
        big.summands.push_back({d, 1});
    }
    validate(big);
    REQUIRE_THROWS_WITH(kolmogorov_distance(big, 50),
                        Catch::Matchers::ContainsSubstring("atom cap"));
}

TEST_CASE("heavy-tail moment family diverges as the index shrinks") {
    // Spot values at theta = 1/2: sigma^2 = 266/123, alpha_3 = -154/41.
    const ParetoMoments m = scenario_pareto_moments(0.5);
    REQUIRE_THAT(m.sigma2, WithinRel(266.0 / 123.0, 1e-14));
    REQUIRE_THAT(m.alpha3, WithinRel(-154.0 / 41.0, 1e-14));

    // The ratio |alpha_3| / sigma^2 blows up like 4/(7 theta) as theta -> 0.
    const ParetoMoments tiny = scenario_pareto_moments(5e-4);
    REQUIRE(std::abs(tiny.alpha3) / tiny.sigma2 > 1e3);
    const ParetoMoments limit = scenario_pareto_moments(1e-6);
    REQUIRE_THAT(1e-6 * std::abs(limit.alpha3) / limit.sigma2,
                 WithinRel(4.0 / 7.0, 1e-3));

    // alpha_3 changes sign near theta = (sqrt(22) - 4) / 3 ~ 0.23.
    REQUIRE(scenario_pareto_moments(0.23).alpha3 > 0.0);
    REQUIRE(scenario_pareto_moments(0.24).alpha3 < 0.0);

    REQUIRE_THROWS_AS(scenario_pareto_moments(0.0), std::domain_error);
    REQUIRE_THROWS_AS(scenario_pareto_moments(1.0), std::domain_error);
}

TEST_CASE("plain-text system parsing") {
    SECTION("multi-block input with comments, counts, and fractions") {
        std::istringstream in(
            "# two blocks\n"
            "dist 3\n"
            "-1 2/3\n"
            "2 1/3   # skewed\n"
            "\n"
            "dist 2\n"
            "-1 0.5\n"
            "1 0.5\n");
        const SummandSystem<double> sys = parse_system_text(in);
        REQUIRE(sys.summands.size() == 2);
        REQUIRE(sys.summands[0].count == 3);
        REQUIRE(sys.summands[1].count == 2);
        REQUIRE(total_count(sys) == 5);
        REQUIRE_THAT(sys.summands[0].dist.atoms[1].first, WithinAbs(2.0, 1e-15));
        REQUIRE_THAT(sys.summands[0].dist.atoms[0].second, WithinRel(2.0 / 3.0, 1e-15));
        REQUIRE_THAT(b_n(sys), WithinRel(std::sqrt(3.0 * 2.0 + 2.0), 1e-13));
    }

    SECTION("headerless input is a single distribution") {
        std::istringstream in("-1 1/2\n1 1/2\n");
        const SummandSystem<double> sys = parse_system_text(in);
        REQUIRE(sys.summands.size() == 1);
        REQUIRE(sys.summands[0].count == 1);
    }

    SECTION("diagnostics carry line numbers") {
        std::istringstream in("-1 0.5\n1 0.5\n3 oops\n");
        REQUIRE_THROWS_WITH(parse_system_text(in),
                            Catch::Matchers::ContainsSubstring("line 3"));
        std::istringstream trailing("-1 0.5 extra\n");
        REQUIRE_THROWS_WITH(parse_system_text(trailing),
                            Catch::Matchers::ContainsSubstring("line 1"));
        std::istringstream badcount("dist 0\n-1 0.5\n1 0.5\n");
        REQUIRE_THROWS_WITH(parse_system_text(badcount),
                            Catch::Matchers::ContainsSubstring("line 1"));
    }

    SECTION("structural errors") {
        std::istringstream empty("# nothing here\n");
        REQUIRE_THROWS_AS(parse_system_text(empty), std::runtime_error);
        std::istringstream headeronly("dist 2\n");
        REQUIRE_THROWS_AS(parse_system_text(headeronly), std::runtime_error);
        // Atoms listed twice at the same location coalesce (masses add).
        std::istringstream dup("-1 0.5\n1 0.25\n1.0 0.25\n");
        const SummandSystem<double> merged = parse_system_text(dup);
        REQUIRE(merged.summands[0].dist.atoms.size() == 2);
        REQUIRE(merged.summands[0].dist.atoms[1].second == 0.5);
        std::istringstream shifted("0 0.5\n1 0.5\n");
        REQUIRE_THROWS_AS(parse_system_text(shifted), std::invalid_argument);
        std::istringstream badsum("-1 0.4\n1 0.4\n");
        REQUIRE_THROWS_AS(parse_system_text(badsum), std::invalid_argument);
    }

    SECTION("numeric tokens") {
        REQUIRE(parse_number("3/4") == 0.75);
        REQUIRE_THAT(parse_number("1e-3"), WithinRel(1e-3, 1e-15));
        REQUIRE(parse_number("-2") == -2.0);
        REQUIRE_THROWS_AS(parse_number("abc"), std::runtime_error);
        REQUIRE_THROWS_AS(parse_number("1.5x"), std::runtime_error);
    }
}
