#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qcd/linalg.hpp"
#include "test_support.hpp"

using namespace qcd;
using qcd::testing::random_hermitian;
using qcd::testing::random_matrix;

namespace {

ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    return out;
}

ComplexMatrix reconstruct(const HermitianEigen& eig) {
    const std::size_t n = eig.eigenvalues.size();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out += Complex(eig.eigenvalues[i]) * outer(eig.eigenvectors[i]);
    return out;
}

double max_orthonormality_error(const HermitianEigen& eig) {
    double err = 0.0;
    const std::size_t n = eig.eigenvectors.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex ip{};
            for (std::size_t k = 0; k < n; ++k) ip += std::conj(eig.eigenvectors[i][k]) * eig.eigenvectors[j][k];
            err = std::max(err, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    return err;
}

void check_phase_convention(const HermitianEigen& eig) {
    for (const auto& v : eig.eigenvectors) {
        for (const auto& z : v) {
            if (std::abs(z) > 1e-12) {
                CHECK(z.real() >= 0.0);
                CHECK(std::abs(z.imag()) <= 1e-12);
                break;
            }
        }
    }
}

}  // namespace

TEST_CASE("matrix construction rejects bad shapes") {
    CHECK_THROWS_AS(ComplexMatrix(0), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(2, std::vector<Complex>(3)), std::invalid_argument);
}

TEST_CASE("matmul") {
    const auto x = pauli::x();
    std::mt19937_64 rng(1);
    const auto a = random_matrix(rng, 2);

    CHECK(frobenius_distance(matmul(ComplexMatrix::identity(2), a), a) == 0.0);
    CHECK(frobenius_distance(matmul(x, x), ComplexMatrix::identity(2)) == 0.0);

    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_matrix(rng, 4);
        const auto q = random_matrix(rng, 4);
        const auto fast = matmul(p, q);
        const auto slow = naive_product(p, q);
        for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(fast.entries()[i] - slow.entries()[i]) <= 1e-14);
    }

    CHECK_THROWS_AS(matmul(ComplexMatrix(2), ComplexMatrix(4)), std::invalid_argument);
}

TEST_CASE("adjoint, trace and tensor") {
    CHECK(trace(ComplexMatrix::identity(2)) == Complex(2.0));
    CHECK(frobenius_distance(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                             ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix a{{1.0, Complex(2, 3)}, {Complex(4, -1), 5.0}};
    const auto ad = adjoint(a);
    CHECK(ad(0, 1) == Complex(4, 1));
    CHECK(ad(1, 0) == Complex(2, -3));

    // Kronecker layout: left factor is the outer block index.
    const auto k = tensor(pauli::z(), pauli::x());
    CHECK(k(0, 1) == Complex(1.0));
    CHECK(k(2, 3) == Complex(-1.0));
    CHECK(k(0, 2) == Complex(0.0));

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_hermitian(rng, 2);
        const auto q = random_hermitian(rng, 4);
        CHECK(std::abs(trace(tensor(p, q)) - trace(p) * trace(q)) <= 1e-12);
    }
}

TEST_CASE("trace_of_product matches trace of matmul") {
    std::mt19937_64 rng(3);
    const auto p = random_matrix(rng, 8);
    const auto q = random_matrix(rng, 8);
    CHECK(std::abs(trace_of_product(p, q) - trace(matmul(p, q))) <= 1e-12);
}

TEST_CASE("eigen_hermitian on Pauli X") {
    const auto eig = eigen_hermitian(pauli::x());
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(eig.eigenvectors[0][0] - s) <= 1e-12);
    CHECK(std::abs(eig.eigenvectors[0][1] - s) <= 1e-12);
    CHECK(std::abs(eig.eigenvectors[1][0] - s) <= 1e-12);
    CHECK(std::abs(eig.eigenvectors[1][1] + s) <= 1e-12);
}

TEST_CASE("eigen_hermitian on a diagonal matrix sorts descending") {
    const auto eig = eigen_hermitian(ComplexMatrix::diagonal({1, 3, 2, 0}));
    REQUIRE(eig.eigenvalues.size() == 4);
    CHECK(eig.eigenvalues[0] == 3.0);
    CHECK(eig.eigenvalues[1] == 2.0);
    CHECK(eig.eigenvalues[2] == 1.0);
    CHECK(eig.eigenvalues[3] == 0.0);
    CHECK(std::abs(eig.eigenvectors[0][1] - 1.0) <= 1e-15);
}

TEST_CASE("eigen_hermitian reconstruction and orthonormality") {
    std::mt19937_64 rng(4);
    for (std::size_t dim : {2u, 3u, 4u, 8u, 16u, 32u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = random_hermitian(rng, dim);
            const auto eig = eigen_hermitian(a);
            CHECK(frobenius_distance(reconstruct(eig), a) <= 1e-10);
            CHECK(max_orthonormality_error(eig) <= 1e-10);
            CHECK(std::is_sorted(eig.eigenvalues.rbegin(), eig.eigenvalues.rend()));
            check_phase_convention(eig);
        }
    }
}

TEST_CASE("eigenvalues-only path matches the Jacobi decomposition") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {3u, 8u, 16u, 33u}) {
        auto a = random_hermitian(rng, n);
        ComplexMatrix real_part(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) real_part(i, j) = a(i, j).real();
        for (const auto& m : {a, real_part}) {
            const auto full = eigen_hermitian(m);
            const auto values = eigenvalues_hermitian(m);
            REQUIRE(values.size() == n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(values[i] - full.eigenvalues[i]) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(eigenvalues_hermitian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("Jacobi and closed-form 2x2 paths agree") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_hermitian(rng, 2);
        const auto closed = eigen_hermitian(a);
        const auto jac = eigen_hermitian_jacobi(a);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(closed.eigenvalues[i] - jac.eigenvalues[i]) <= 1e-10);
            // eigenvectors agree up to phase: |<u, v>| = 1
            Complex ip{};
            for (int k = 0; k < 2; ++k) ip += std::conj(closed.eigenvectors[i][k]) * jac.eigenvectors[i][k];
            CHECK(std::abs(std::abs(ip) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("eigen_hermitian handles degenerate spectra") {
    const auto eig = eigen_hermitian(ComplexMatrix::identity(4));
    for (double v : eig.eigenvalues) CHECK(v == 1.0);
    CHECK(max_orthonormality_error(eig) <= 1e-12);

    const auto zero = eigen_hermitian(ComplexMatrix::zeros(2));
    CHECK(zero.eigenvalues[0] == 0.0);
    CHECK(zero.eigenvalues[1] == 0.0);
}

TEST_CASE("eigen_hermitian rejects non-Hermitian input") {
    const ComplexMatrix a{{1.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(eigen_hermitian(a), std::invalid_argument);
    ComplexMatrix b = ComplexMatrix::identity(4);
    b(0, 3) = Complex(0, 1e-3);
    CHECK_THROWS_AS(eigen_hermitian(b), std::invalid_argument);
}

TEST_CASE("Jacobi reports non-convergence") {
    std::mt19937_64 rng(7);
    const auto a = random_hermitian(rng, 8);
    CHECK_THROWS_AS(eigen_hermitian(a, 1e-13, 1), std::runtime_error);
}

TEST_CASE("large product-space spectrum") {
    std::mt19937_64 rng(8);
    const auto a = random_hermitian(rng, 64);
    const auto eig = eigen_hermitian(a);
    CHECK(frobenius_distance(reconstruct(eig), a) <= 1e-10);
}
