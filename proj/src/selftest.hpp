#pragma once

#include <random>

#include "multiqubit.hpp"

namespace spintomo {

/// Seeded sampling helpers shared by the selftest suites and the test
/// binaries.
BlochVector random_bloch_in_ball(std::mt19937_64& rng, double radius = 1.0);
BlochVector random_bloch_on_sphere(std::mt19937_64& rng);
CMatrix random_hermitian(int dim, std::mt19937_64& rng);

/// Uniform over the closed Bloch ball (pure and mixed alike).
DensityMatrix random_qubit_state(std::mt19937_64& rng);
DensityMatrix random_pure_qubit_state(std::mt19937_64& rng);

/// Convex mixture of dim random pure states; PSD and unit trace by
/// construction. Covers entangled states for dim > 2.
DensityMatrix random_density(int dim, std::mt19937_64& rng);

struct SelftestEntry {
    std::string name;
    bool pass = false;
    double worst = 0.0; // largest residual seen by the suite
    std::string note;
};

struct SelftestReport {
    std::uint64_t seed = 0;
    int iterations = 0;
    std::vector<SelftestEntry> entries;
    bool pass = false;
};

/// Runs every module's property suite at a scale set by `iterations`
/// (roughly the number of random cases per suite).
SelftestReport run_selftest(std::uint64_t seed, int iterations = 200);

} // namespace spintomo
