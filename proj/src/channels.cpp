#include "qcd/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qcd {

namespace {
constexpr double kStateTol = 1e-10;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

void InputState::validate() const {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("InputState: r must lie in [0, 1], got " + std::to_string(r));
    if (!(phi >= 0.0 && phi < kTwoPi))
        throw std::invalid_argument("InputState: phi must lie in [0, 2pi), got " + std::to_string(phi));
}

std::string_view to_string(ChannelFamily family) {
    switch (family) {
        case ChannelFamily::Depolarizing: return "depolarizing";
        case ChannelFamily::BitFlip: return "bit-flip";
        case ChannelFamily::AmplitudeDamping: return "amplitude-damping";
    }
    return "unknown";
}

ChannelFamily parse_family(std::string_view name) {
    std::string key;
    for (char ch : name) {
        if (ch == '_' || ch == ' ') ch = '-';
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    if (key == "depolarizing" || key == "depol" || key == "dp") return ChannelFamily::Depolarizing;
    if (key == "bit-flip" || key == "bitflip" || key == "bf") return ChannelFamily::BitFlip;
    if (key == "amplitude-damping" || key == "amplitudedamping" || key == "ad")
        return ChannelFamily::AmplitudeDamping;
    throw std::invalid_argument("unknown channel family '" + std::string(name) + "'");
}

double eta_max(ChannelFamily family) {
    return family == ChannelFamily::AmplitudeDamping ? std::numbers::pi / 2.0 : 1.0;
}

ChannelSpec ChannelSpec::make(ChannelFamily family, double eta) {
    ChannelSpec c{family, eta};
    c.validate();
    return c;
}

void ChannelSpec::validate() const {
    const double hi = eta_max(family);
    if (!(eta >= 0.0 && eta <= hi))
        throw std::invalid_argument("ChannelSpec: eta for " + std::string(to_string(family)) +
                                    " must lie in [0, " + std::to_string(hi) + "], got " +
                                    std::to_string(eta));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 2) throw std::invalid_argument("DensityMatrix: dim must be 2");
    if (!is_hermitian(m_, kStateTol)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(trace(m_) - 1.0) > kStateTol)
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    const auto eig = eigenvalues_hermitian(m_);
    if (eig.back() < -kStateTol) throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}, Trusted{});
}

DensityMatrix pure_state(const InputState& s) {
    s.validate();
    const double a = std::sqrt(1.0 - s.r);
    const Complex b = std::polar(std::sqrt(s.r), -s.phi);
    return DensityMatrix(ComplexMatrix{{a * a, a * std::conj(b)}, {b * a, std::norm(b)}},
                         DensityMatrix::Trusted{});
}

std::vector<ComplexMatrix> kraus_operators(const ChannelSpec& c) {
    c.validate();
    const double eta = c.eta;
    const auto id = ComplexMatrix::identity(2);
    switch (c.family) {
        case ChannelFamily::Depolarizing: {
            const double w0 = std::sqrt(std::max(0.0, 1.0 - 0.75 * eta));
            const double w = std::sqrt(0.25 * eta);
            return {Complex(w0) * id, Complex(w) * pauli::x(), Complex(w) * pauli::y(),
                    Complex(w) * pauli::z()};
        }
        case ChannelFamily::BitFlip:
            return {Complex(std::sqrt(1.0 - eta)) * id, Complex(std::sqrt(eta)) * pauli::x()};
        case ChannelFamily::AmplitudeDamping:
            return {ComplexMatrix{{1.0, 0.0}, {0.0, std::cos(eta)}},
                    ComplexMatrix{{0.0, std::sin(eta)}, {0.0, 0.0}}};
    }
    throw std::logic_error("kraus_operators: unhandled family");
}

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
    ComplexMatrix out(rho.dim());
    for (const auto& k : kraus) out += matmul(matmul(k, rho), adjoint(k));
    return out;
}

DensityMatrix apply(const ChannelSpec& c, const DensityMatrix& rho) {
    c.validate();
    const ComplexMatrix& m = rho.matrix();
    const double eta = c.eta;
    switch (c.family) {
        case ChannelFamily::Depolarizing: {
            ComplexMatrix out = Complex(1.0 - eta) * m;
            out(0, 0) += 0.5 * eta;
            out(1, 1) += 0.5 * eta;
            return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
        }
        case ChannelFamily::BitFlip: {
            // (1 - eta) rho + eta X rho X; X rho X swaps both indices.
            ComplexMatrix out(2);
            out(0, 0) = (1.0 - eta) * m(0, 0) + eta * m(1, 1);
            out(1, 1) = (1.0 - eta) * m(1, 1) + eta * m(0, 0);
            out(0, 1) = (1.0 - eta) * m(0, 1) + eta * m(1, 0);
            out(1, 0) = (1.0 - eta) * m(1, 0) + eta * m(0, 1);
            return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
        }
        case ChannelFamily::AmplitudeDamping: {
            const double cs = std::cos(eta);
            const double sn = std::sin(eta);
            ComplexMatrix out(2);
            out(0, 0) = m(0, 0) + sn * sn * m(1, 1);
            out(0, 1) = cs * m(0, 1);
            out(1, 0) = cs * m(1, 0);
            out(1, 1) = cs * cs * m(1, 1);
            return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
        }
    }
    throw std::logic_error("apply: unhandled family");
}

double kraus_completeness(const ChannelSpec& c) {
    ComplexMatrix sum(2);
    for (const auto& k : kraus_operators(c)) sum += matmul(adjoint(k), k);
    return frobenius_distance(sum, ComplexMatrix::identity(2));
}

}  // namespace qcd
