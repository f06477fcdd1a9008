#pragma once

#include <string_view>
#include <utility>

#include "qcd/channels.hpp"
#include "qcd/linalg.hpp"

namespace qcd {

/// Two hypotheses rho0 (prior p0) and rho1 (prior 1 - p0).
struct WeightedPair {
    double p0 = 0.5;
    DensityMatrix rho0;
    DensityMatrix rho1;
};

enum class PovmCase { Projective, AlwaysGuess0, AlwaysGuess1 };

std::string_view to_string(PovmCase c);

/// Binary measurement; pi0 is tied to guessing hypothesis 0.
struct Povm {
    ComplexMatrix pi0;
    ComplexMatrix pi1;
    PovmCase case_tag = PovmCase::Projective;

    static Povm always_guess0(std::size_t dim);
    static Povm always_guess1(std::size_t dim);
    /// pi0 = projector, pi1 = I - projector.
    static Povm projective(ComplexMatrix projector);
};

struct HelstromResult {
    Povm povm;
    double p_succ = 0.0;
    double lambda0 = 0.0;  // largest eigenvalue of Delta
    double lambda1 = 0.0;
};

/// Delta = p0 rho0 - (1 - p0) rho1.
ComplexMatrix delta_op(const WeightedPair& w);

/// Minimum-error measurement for a weighted pair of qubit states.
///
/// With lambda0 >= lambda1 the eigenvalues of Delta:
///   lambda0 > 0, 2 p0 <= 1 + lambda0  ->  pi0 = |v0><v0|,  P = lambda0 + 1 - p0
///   lambda0 > 0, 2 p0 >  1 + lambda0  ->  pi0 = I,         P = p0
///   lambda0 <= 0, p0 <= 1/2           ->  pi0 = 0,         P = 1 - p0
///   lambda0 <= 0, p0 >  1/2           ->  pi0 = I,         P = p0
/// lambda0 == 0 is treated as non-positive.
HelstromResult optimal_povm(const WeightedPair& w);

/// (Tr(rho pi0), Tr(rho pi1)).
std::pair<double, double> outcome_probs(const DensityMatrix& rho, const Povm& m);

/// Tr(rho pi0) for a 2x2 rho and 2x2 pi0, without the DensityMatrix wrapper.
double prob_outcome0(const ComplexMatrix& rho, const ComplexMatrix& pi0);

/// Grid search over rank-1 projectors
///   [[cos^2 t, e^{-i f} sin t cos t], [e^{i f} sin t cos t, sin^2 t]]
/// with t in [0, pi/2] and f in [0, 2 pi] (grid_n points each) plus the two
/// trivial measurements. Independent of optimal_povm; used to check it.
/// Throws std::invalid_argument when grid_n < 64.
double brute_force_povm(const WeightedPair& w, int grid_n);

}  // namespace qcd
