#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qcd/linalg.hpp"

namespace qcd {

/// Pure qubit input sqrt(1-r)|0> + exp(-i phi) sqrt(r)|1>.
struct InputState {
    double r = 0.0;    // population of |1>, in [0, 1]
    double phi = 0.0;  // relative phase, in [0, 2 pi)

    void validate() const;
};

enum class ChannelFamily { Depolarizing, BitFlip, AmplitudeDamping };

std::string_view to_string(ChannelFamily family);
/// Accepts "depolarizing", "bit-flip", "amplitude-damping" (and a few aliases).
ChannelFamily parse_family(std::string_view name);

/// Largest admissible eta: 1 for depolarizing/bit-flip, pi/2 for amplitude damping.
double eta_max(ChannelFamily family);

struct ChannelSpec {
    ChannelFamily family = ChannelFamily::Depolarizing;
    double eta = 0.0;

    /// Validated construction; throws std::invalid_argument when eta is out of range.
    static ChannelSpec make(ChannelFamily family, double eta);
    void validate() const;
};

/// 2x2 Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
public:
    /// Checks the invariants (tolerance 1e-10) and throws std::invalid_argument otherwise.
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    static DensityMatrix maximally_mixed();

private:
    struct Trusted {};
    DensityMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
    friend DensityMatrix pure_state(const InputState&);
    friend DensityMatrix apply(const ChannelSpec&, const DensityMatrix&);

    ComplexMatrix m_;
};

DensityMatrix pure_state(const InputState& s);

/// Channel action: depolarizing in its direct map form, bit-flip and
/// amplitude damping through their Kraus operators.
DensityMatrix apply(const ChannelSpec& c, const DensityMatrix& rho);

/// Channel output for a pure input; shorthand for apply(c, pure_state(s)).
inline DensityMatrix channel_output(const ChannelSpec& c, const InputState& s) {
    return apply(c, pure_state(s));
}

std::vector<ComplexMatrix> kraus_operators(const ChannelSpec& c);

/// Applies rho -> sum_k K rho K^dagger.
ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho);

/// || sum_k K^dagger K - I ||_F.
double kraus_completeness(const ChannelSpec& c);

}  // namespace qcd
