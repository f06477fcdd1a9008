#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qcd/helstrom.hpp"
#include "test_support.hpp"

using namespace qcd;
using qcd::testing::random_density;

namespace {

const DensityMatrix kZero(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
const DensityMatrix kOne(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}});
const DensityMatrix kMixed = DensityMatrix::maximally_mixed();

double min_eigenvalue(const ComplexMatrix& m) { return eigenvalues_hermitian(m).back(); }

void check_povm(const Povm& m) {
    CHECK(frobenius_distance(m.pi0 + m.pi1, ComplexMatrix::identity(m.pi0.dim())) <= 1e-10);
    CHECK(min_eigenvalue(m.pi0) >= -1e-10);
    CHECK(min_eigenvalue(m.pi1) >= -1e-10);
}

}  // namespace

TEST_CASE("delta_op") {
    CHECK(frobenius_norm(delta_op({0.5, kMixed, kMixed})) == 0.0);
    const auto d = delta_op({0.5, kZero, kOne});
    CHECK(frobenius_distance(d, ComplexMatrix::diagonal({0.5, -0.5})) <= 1e-15);

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dd = delta_op({0.7, random_density(rng), random_density(rng)});
        CHECK(std::abs(trace(dd) - 0.4) <= 1e-12);
        CHECK(is_hermitian(dd, 1e-14));
    }
}

TEST_CASE("optimal_povm: orthogonal pure states") {
    const auto res = optimal_povm({0.5, kZero, kOne});
    CHECK(res.p_succ == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(res.povm.case_tag == PovmCase::Projective);
    check_povm(res.povm);
}

TEST_CASE("optimal_povm: case (b), Delta positive definite") {
    const auto res = optimal_povm({0.9, kMixed, kMixed});
    CHECK(res.lambda0 == doctest::Approx(0.4));
    CHECK(res.p_succ == doctest::Approx(0.9));
    CHECK(res.povm.case_tag == PovmCase::AlwaysGuess0);
    CHECK(frobenius_distance(res.povm.pi0, ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("optimal_povm: case (c), Delta negative definite") {
    const auto res = optimal_povm({0.1, kMixed, kMixed});
    CHECK(res.lambda0 == doctest::Approx(-0.4));
    CHECK(res.p_succ == doctest::Approx(0.9));
    CHECK(res.povm.case_tag == PovmCase::AlwaysGuess1);
    CHECK(frobenius_norm(res.povm.pi0) == 0.0);
}

TEST_CASE("optimal_povm: case (d) and the lambda0 = 0 boundary") {
    // Case (d) needs lambda0 <= 0 with p0 > 1/2, impossible for unit-trace
    // states since Tr Delta = 2 p0 - 1 > 0. Check the neighbouring boundaries.
    // rho0 = rho1 = |1><1|, p0 = 0.6: Delta = 0.2 |1><1|, lambda1 = 0, P = p0.
    const auto boundary = optimal_povm({0.6, kOne, kOne});
    CHECK(boundary.p_succ == doctest::Approx(0.6));
    // p0 = 0.5, identical states: Delta = 0, lambda0 = 0 -> case (c): always guess 1.
    const auto zero = optimal_povm({0.5, kZero, kZero});
    CHECK(zero.lambda0 == 0.0);
    CHECK(zero.povm.case_tag == PovmCase::AlwaysGuess1);
    CHECK(zero.p_succ == 0.5);
    // p0 = 0.3, rho0 = |0>, rho1 = I/2: Delta = diag(0.3 - 0.35, -0.35) < 0 -> case (c).
    const auto c = optimal_povm({0.3, kZero, kMixed});
    CHECK(c.lambda0 < 0.0);
    CHECK(c.p_succ == doctest::Approx(0.7));
    // p0 = 0.8, rho0 = |0>, rho1 = |1>: Delta = diag(0.8, -0.2) -> projective, P = 1.
    CHECK(optimal_povm({0.8, kZero, kOne}).p_succ == doctest::Approx(1.0));
}

TEST_CASE("outcome_probs") {
    const auto proj = Povm::projective(kZero.matrix());
    const auto [a, b] = outcome_probs(kZero, proj);
    CHECK(a == 1.0);
    CHECK(b == 0.0);
    const auto [m0, m1] = outcome_probs(kMixed, Povm::projective(pure_state({0.37, 1.0}).matrix()));
    CHECK(m0 == doctest::Approx(0.5));
    CHECK(m1 == doctest::Approx(0.5));

    std::mt19937_64 rng(22);
    const auto [i0, i1] = outcome_probs(random_density(rng), Povm::always_guess0(2));
    CHECK(i0 == doctest::Approx(1.0));
    CHECK(i1 == 0.0);
}

TEST_CASE("brute_force_povm trivial cases") {
    CHECK(brute_force_povm({0.5, kMixed, kMixed}, 64) == doctest::Approx(0.5));
    std::mt19937_64 rng(23);
    const auto rho = random_density(rng);
    CHECK(brute_force_povm({0.8, rho, rho}, 64) == doctest::Approx(0.8));
    CHECK_THROWS_AS(brute_force_povm({0.5, rho, rho}, 63), std::invalid_argument);
}

TEST_CASE("optimal_povm vs brute force and structural invariants") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const WeightedPair w{unit(rng), random_density(rng), random_density(rng)};
        const auto res = optimal_povm(w);
        const double oracle = brute_force_povm(w, 256);
        CHECK(res.p_succ >= oracle - 1e-9);
        CHECK(res.p_succ <= oracle + 1e-3);
        CHECK(res.p_succ >= std::max(w.p0, 1 - w.p0) - 1e-12);
        CHECK(std::abs(res.lambda0 + res.lambda1 - (2 * w.p0 - 1)) <= 1e-12);
        check_povm(res.povm);

        // The reported value is what the POVM actually achieves.
        const double achieved = w.p0 * outcome_probs(w.rho0, res.povm).first +
                                (1 - w.p0) * outcome_probs(w.rho1, res.povm).second;
        CHECK(std::abs(achieved - res.p_succ) <= 1e-12);

        // Non-informative Delta gives a trivial POVM.
        if (res.lambda1 > 0 || res.lambda0 <= 0) CHECK(res.povm.case_tag != PovmCase::Projective);

        // Relabelling symmetry.
        const auto swapped = optimal_povm({1 - w.p0, w.rho1, w.rho0});
        CHECK(std::abs(swapped.p_succ - res.p_succ) <= 1e-12);

        // Equal priors: 1/2 (1 + ||Delta||_1) with ||Delta||_1 = lambda0 - lambda1.
        const auto eq = optimal_povm({0.5, w.rho0, w.rho1});
        if (eq.povm.case_tag == PovmCase::Projective)
            CHECK(std::abs(eq.p_succ - 0.5 * (1.0 + (eq.lambda0 - eq.lambda1))) <= 1e-12);
    }
}
