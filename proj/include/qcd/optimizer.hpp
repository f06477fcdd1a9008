#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qcd {

/// Box [lower, upper] in d dimensions.
struct BoxDomain {
    std::vector<double> lower;
    std::vector<double> upper;

    /// [0, 1]^d.
    static BoxDomain unit(std::size_t d);
    std::size_t dim() const { return lower.size(); }
    void validate() const;
};

struct OptConfig {
    double ftol = 1e-9;          // simplex value spread
    double xtol = 1e-9;          // simplex extent (max-norm), checked together with ftol
    long max_evals_per_start = 20000;
    std::size_t max_starts = 64;
    double initial_step = 0.1;   // simplex edge as a fraction of the box width
    int max_restarts = 3;        // fresh simplex around a converged point
    std::uint64_t seed = 0;
    /// Evaluated before the lattice starts; not counted against max_starts.
    std::vector<std::vector<double>> extra_starts;
};

struct OptResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    long evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Start points: the full {lower, mid, upper}^d lattice when it has at most
/// max_starts points; otherwise the centre, the two uniform corners and a
/// seeded Latin hypercube over the three lattice levels, deduplicated.
std::vector<std::vector<double>> lattice_starts(const BoxDomain& dom, std::size_t max_starts, std::uint64_t seed);

/// Multistart Nelder-Mead maximization with every trial point clamped to the box.
OptResult maximize(const Objective& objective, const BoxDomain& dom, const OptConfig& cfg = {});

}  // namespace qcd
