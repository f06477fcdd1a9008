#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qcd {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() : ComplexMatrix(1) {}
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(const std::vector<double>& values);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    const std::vector<Complex>& entries() const { return data_; }
    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Matrix product. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

/// Tr(a b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; the left factor indexes the outer (most significant) block.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// |v><v| for a column vector v.
ComplexMatrix outer(const std::vector<Complex>& v);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);

/// Eigenvalues sorted descending; eigenvectors[i] is paired with eigenvalues[i].
struct HermitianEigen {
    std::vector<double> eigenvalues;
    std::vector<std::vector<Complex>> eigenvectors;
};

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr int kDefaultMaxSweeps = 100;

/// Hermitian eigendecomposition. dim 2 is solved in closed form, larger
/// matrices by cyclic Jacobi rotations until the off-diagonal Frobenius norm
/// drops below tol * max(1, ||a||_F).
///
/// The input is symmetrized as (a + a^dagger)/2 first. Each eigenvector is
/// phased so that its first nonzero component is real and non-negative.
///
/// Throws std::invalid_argument for non-Hermitian input and
/// std::runtime_error if Jacobi does not converge within max_sweeps.
HermitianEigen eigen_hermitian(const ComplexMatrix& a, double tol = 1e-13,
                               int max_sweeps = kDefaultMaxSweeps);

/// Jacobi path for any dimension, including 2. Exposed so both routes can be
/// cross-checked.
HermitianEigen eigen_hermitian_jacobi(const ComplexMatrix& a, double tol = 1e-13,
                                      int max_sweeps = kDefaultMaxSweeps);

/// Eigenvalues only (descending), via Householder tridiagonalization and
/// implicit QR (Eigen). Much cheaper than Jacobi at the 2^n sizes used by
/// the global strategy; also serves as an independent check on Jacobi.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a);

}  // namespace qcd
