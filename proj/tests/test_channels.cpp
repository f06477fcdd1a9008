#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "qcd/channels.hpp"
#include "test_support.hpp"

using namespace qcd;
using qcd::testing::random_density;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double dist(const DensityMatrix& a, const DensityMatrix& b) { return frobenius_distance(a.matrix(), b.matrix()); }

const ComplexMatrix kKet0{{1.0, 0.0}, {0.0, 0.0}};
const ComplexMatrix kKet1{{0.0, 0.0}, {0.0, 1.0}};

}  // namespace

TEST_CASE("pure_state examples") {
    CHECK(frobenius_distance(pure_state({0.0, 0.0}).matrix(), kKet0) <= 1e-15);
    CHECK(frobenius_distance(pure_state({1.0, 0.0}).matrix(), kKet1) <= 1e-15);
    const auto plus = pure_state({0.5, 0.0});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(plus(i, j) - 0.5) <= 1e-15);

    const auto psi = pure_state({0.3, 1.2});
    CHECK(std::abs(psi(0, 0) - 0.7) <= 1e-15);
    CHECK(std::abs(psi(1, 1) - 0.3) <= 1e-15);
    // rank one
    CHECK(frobenius_distance(matmul(psi.matrix(), psi.matrix()), psi.matrix()) <= 1e-14);
}

TEST_CASE("pure_state rejects out-of-range inputs") {
    CHECK_THROWS_AS(pure_state({-0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(pure_state({1.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(pure_state({0.5, 2.0 * std::numbers::pi}), std::invalid_argument);
    CHECK_THROWS_AS(pure_state({0.5, -0.1}), std::invalid_argument);
}

TEST_CASE("ChannelSpec ranges") {
    CHECK_NOTHROW(ChannelSpec::make(ChannelFamily::Depolarizing, 1.0));
    CHECK_THROWS_AS(ChannelSpec::make(ChannelFamily::Depolarizing, 1.01), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec::make(ChannelFamily::BitFlip, -0.01), std::invalid_argument);
    CHECK_NOTHROW(ChannelSpec::make(ChannelFamily::AmplitudeDamping, kHalfPi));
    CHECK_THROWS_AS(ChannelSpec::make(ChannelFamily::AmplitudeDamping, 1.6), std::invalid_argument);
}

TEST_CASE("family names round trip") {
    for (auto f : {ChannelFamily::Depolarizing, ChannelFamily::BitFlip, ChannelFamily::AmplitudeDamping})
        CHECK(parse_family(to_string(f)) == f);
    CHECK(parse_family("Amplitude_Damping") == ChannelFamily::AmplitudeDamping);
    CHECK_THROWS_AS(parse_family("phase-flip"), std::invalid_argument);
}

TEST_CASE("DensityMatrix validation") {
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("channel extremes") {
    std::mt19937_64 rng(11);
    const auto rho = random_density(rng);
    CHECK(dist(apply(ChannelSpec::make(ChannelFamily::Depolarizing, 1.0), rho), DensityMatrix::maximally_mixed()) <=
          1e-15);
    CHECK(frobenius_distance(apply(ChannelSpec::make(ChannelFamily::BitFlip, 1.0), pure_state({0.0, 0.0})).matrix(),
                             kKet1) <= 1e-15);
    CHECK(frobenius_distance(
              apply(ChannelSpec::make(ChannelFamily::AmplitudeDamping, kHalfPi), pure_state({1.0, 0.0})).matrix(),
              kKet0) <= 1e-15);
}

TEST_CASE("kraus completeness") {
    CHECK(kraus_completeness(ChannelSpec::make(ChannelFamily::BitFlip, 0.3)) <= 1e-12);
    CHECK(kraus_completeness(ChannelSpec::make(ChannelFamily::AmplitudeDamping, 1.1)) <= 1e-12);
    CHECK(kraus_completeness(ChannelSpec::make(ChannelFamily::Depolarizing, 0.7)) <= 1e-12);
}

TEST_CASE("channel properties on random inputs") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto rho = random_density(rng);
        for (auto family : {ChannelFamily::Depolarizing, ChannelFamily::BitFlip, ChannelFamily::AmplitudeDamping}) {
            const auto c = ChannelSpec::make(family, unit(rng) * eta_max(family));
            const auto out = apply(c, rho);
            CHECK(std::abs(trace(out.matrix()) - 1.0) <= 1e-12);
            CHECK(eigenvalues_hermitian(out.matrix()).back() >= -1e-10);
            // direct map form vs explicit Kraus sum
            CHECK(frobenius_distance(out.matrix(), apply_kraus(kraus_operators(c), rho.matrix())) <= 1e-12);
            // identity at eta = 0
            CHECK(dist(apply(ChannelSpec::make(family, 0.0), rho), rho) <= 1e-12);
        }
    }
}

TEST_CASE("x-z plane closure for real inputs") {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const InputState s{unit(rng), 0.0};
        for (auto family : {ChannelFamily::BitFlip, ChannelFamily::AmplitudeDamping}) {
            const auto out = channel_output(ChannelSpec::make(family, unit(rng) * eta_max(family)), s);
            CHECK(std::abs(out(0, 1).imag()) <= 1e-12);
            CHECK(std::abs(out(1, 0).imag()) <= 1e-12);
        }
    }
}
