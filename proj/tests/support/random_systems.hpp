#pragma once

// Deterministic random discrete summand systems shared by the unit tests and
// the acceptance suite: a few independent zero-mean distributions with 2-4
// atoms each, scaled so the total variance is exactly one.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "cltbounds/fractions.hpp"

namespace cltbounds::testing {

inline DiscreteDistribution<double> random_zero_mean_distribution(std::mt19937& rng) {
    std::uniform_int_distribution<int> natoms(2, 4);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> mass(0.1, 1.0);
    for (;;) {
        const int m = natoms(rng);
        std::vector<std::pair<double, double>> atoms(m);
        double total = 0.0;
        for (auto& [x, p] : atoms) {
            x = coord(rng);
            p = mass(rng);
            total += p;
        }
        double mean = 0.0;
        for (auto& [x, p] : atoms) {
            p /= total;
            mean += p * x;
        }
        for (auto& [x, p] : atoms) x -= mean;
        DiscreteDistribution<double> d{normalized_atoms<double>(atoms, 1e-9)};
        // Re-center once more after the merge, then keep only well-separated,
        // genuinely random shapes.
        double m2 = 0.0;
        for (auto& [x, p] : d.atoms) m2 += p * x * x;
        if (d.atoms.size() < 2 || m2 < 1e-3) continue;
        double mu = 0.0;
        for (auto& [x, p] : d.atoms) mu += p * x;
        for (auto& [x, p] : d.atoms) x -= mu;
        return d;
    }
}

//! A system of 1..5 independent summands (unit total variance).
inline SummandSystem<double> random_system(std::mt19937& rng) {
    std::uniform_int_distribution<int> ngroups(1, 3);
    std::uniform_int_distribution<int> reps(1, 2);
    const int g = ngroups(rng);
    SummandSystem<double> sys;
    int total = 0;
    for (int i = 0; i < g && total < 5; ++i) {
        const int r = std::min(reps(rng), 5 - total);
        sys.summands.push_back({random_zero_mean_distribution(rng), r});
        total += r;
    }
    const double scale = 1.0 / b_n(sys);
    for (auto& grp : sys.summands)
        for (auto& [x, p] : grp.dist.atoms) x *= scale;
    validate(sys);
    return sys;
}

} // namespace cltbounds::testing
