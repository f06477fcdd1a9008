#include "qcd/helstrom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qcd {

std::string_view to_string(PovmCase c) {
    switch (c) {
        case PovmCase::Projective: return "projective";
        case PovmCase::AlwaysGuess0: return "always-guess-0";
        case PovmCase::AlwaysGuess1: return "always-guess-1";
    }
    return "unknown";
}

Povm Povm::always_guess0(std::size_t dim) {
    return {ComplexMatrix::identity(dim), ComplexMatrix::zeros(dim), PovmCase::AlwaysGuess0};
}

Povm Povm::always_guess1(std::size_t dim) {
    return {ComplexMatrix::zeros(dim), ComplexMatrix::identity(dim), PovmCase::AlwaysGuess1};
}

Povm Povm::projective(ComplexMatrix projector) {
    ComplexMatrix complement = ComplexMatrix::identity(projector.dim()) - projector;
    return {std::move(projector), std::move(complement), PovmCase::Projective};
}

ComplexMatrix delta_op(const WeightedPair& w) {
    if (!(w.p0 >= 0.0 && w.p0 <= 1.0))
        throw std::invalid_argument("WeightedPair: p0 must lie in [0, 1]");
    return Complex(w.p0) * w.rho0.matrix() - Complex(1.0 - w.p0) * w.rho1.matrix();
}

HelstromResult optimal_povm(const WeightedPair& w) {
    const ComplexMatrix delta = delta_op(w);
    const HermitianEigen eig = eigen_hermitian(delta);
    const double l0 = eig.eigenvalues[0];
    const double l1 = eig.eigenvalues[1];
    const double p0 = w.p0;

    HelstromResult out{Povm::always_guess0(2), 0.0, l0, l1};
    if (l0 > 0.0) {
        if (2.0 * p0 <= 1.0 + l0) {
            out.povm = Povm::projective(outer(eig.eigenvectors[0]));
            out.p_succ = l0 + 1.0 - p0;
        } else {
            out.p_succ = p0;
        }
    } else if (p0 <= 0.5) {
        out.povm = Povm::always_guess1(2);
        out.p_succ = 1.0 - p0;
    } else {
        out.p_succ = p0;
    }
    return out;
}

double prob_outcome0(const ComplexMatrix& rho, const ComplexMatrix& pi0) {
    return trace_of_product(rho, pi0).real();
}

std::pair<double, double> outcome_probs(const DensityMatrix& rho, const Povm& m) {
    return {prob_outcome0(rho.matrix(), m.pi0), prob_outcome0(rho.matrix(), m.pi1)};
}

double brute_force_povm(const WeightedPair& w, int grid_n) {
    if (grid_n < 64) throw std::invalid_argument("brute_force_povm: grid_n must be >= 64");
    const double p0 = w.p0;
    const double p1 = 1.0 - p0;
    const ComplexMatrix& r0 = w.rho0.matrix();
    const ComplexMatrix& r1 = w.rho1.matrix();

    // {I, 0} and {0, I}
    double best = std::max(p0, p1);

    std::vector<double> cos_t(grid_n), sin_t(grid_n);
    std::vector<Complex> phase(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double t = 0.5 * std::numbers::pi * i / (grid_n - 1);
        cos_t[i] = std::cos(t);
        sin_t[i] = std::sin(t);
        phase[i] = std::polar(1.0, 2.0 * std::numbers::pi * i / (grid_n - 1));
    }
    ComplexMatrix pi0(2);
    for (int i = 0; i < grid_n; ++i) {
        const double c = cos_t[i];
        const double s = sin_t[i];
        pi0(0, 0) = c * c;
        pi0(1, 1) = s * s;
        for (int j = 0; j < grid_n; ++j) {
            pi0(0, 1) = std::conj(phase[j]) * (s * c);
            pi0(1, 0) = phase[j] * (s * c);
            const double value =
                p0 * trace_of_product(r0, pi0).real() + p1 * (1.0 - trace_of_product(r1, pi0).real());
            best = std::max(best, value);
        }
    }
    return best;
}

}  // namespace qcd
