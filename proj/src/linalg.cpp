#include "qcd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcd {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    if (data_.size() != dim * dim)
        throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(dim * dim) +
                                    " entries, got " + std::to_string(data_.size()));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    if (dim_ == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

namespace {
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}
}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& z : data_) z *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

namespace pauli {
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            const Complex* brow = b.data() + k * n;
            Complex* orow = out.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

Complex trace(const ComplexMatrix& a) {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_of_product");
    const std::size_t n = a.dim();
    Complex t{};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
    return t;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    const std::size_t n = na * nb;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "frobenius_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
    return std::sqrt(s);
}

ComplexMatrix outer(const std::vector<Complex>& v) {
    const std::size_t n = v.size();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    return frobenius_distance(a, adjoint(a)) <= tol;
}

namespace {

// Components below this magnitude count as zero when fixing eigenvector phase.
constexpr double kPhaseZero = 1e-12;

void fix_phase(std::vector<Complex>& v) {
    for (const auto& z : v) {
        const double mag = std::abs(z);
        if (mag > kPhaseZero) {
            const Complex rot = std::conj(z) / mag;
            for (auto& w : v) w *= rot;
            return;
        }
    }
}

ComplexMatrix symmetrized(const ComplexMatrix& a) {
    if (!is_hermitian(a, kHermiticityTol))
        throw std::invalid_argument("eigen_hermitian: input is not Hermitian within 1e-10");
    const std::size_t n = a.dim();
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

HermitianEigen eigen_2x2(const ComplexMatrix& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = h(0, 1);
    const double mean = 0.5 * (a + d);
    const double half_gap = 0.5 * (a - d);
    const double radius = std::hypot(half_gap, std::abs(b));

    HermitianEigen out;
    out.eigenvalues = {mean + radius, mean - radius};

    std::vector<Complex> v0(2);
    if (std::abs(b) == 0.0) {
        if (a >= d) v0 = {1.0, 0.0};
        else v0 = {0.0, 1.0};
    } else {
        // Two equivalent null vectors of (h - lambda0); take the better conditioned one.
        if (half_gap >= 0.0) v0 = {half_gap + radius, std::conj(b)};
        else v0 = {b, radius - half_gap};
        const double norm = std::sqrt(std::norm(v0[0]) + std::norm(v0[1]));
        v0[0] /= norm;
        v0[1] /= norm;
    }
    std::vector<Complex> v1 = {-std::conj(v0[1]), std::conj(v0[0])};
    fix_phase(v0);
    fix_phase(v1);
    out.eigenvectors = {std::move(v0), std::move(v1)};
    return out;
}

inline double conj_of(double x) { return x; }
inline Complex conj_of(Complex z) { return std::conj(z); }
inline double real_of(double x) { return x; }
inline double real_of(Complex z) { return z.real(); }

// Plain product; std::complex operator* goes through the Inf/NaN-aware
// library routine, which dominates the rotation loops.
inline double mul(double a, double b) { return a * b; }
inline Complex mul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Cyclic Jacobi on a dense Hermitian (or real symmetric) matrix stored
// row-major in m, modified in place. If v is non-null it accumulates the
// product of rotations (columns = eigenvectors).
template <typename T>
void jacobi_sweeps(std::vector<T>& m, std::vector<T>* v, std::size_t n, double tol, int max_sweeps) {
    auto off_norm = [&] {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) sum += std::norm(m[i * n + j]);
        return std::sqrt(sum);
    };
    double total = 0.0;
    for (const auto& z : m) total += std::norm(z);
    const double threshold = tol * std::max(1.0, std::sqrt(total));

    for (int sweep = 0;; ++sweep) {
        if (off_norm() <= threshold) return;
        if (sweep >= max_sweeps)
            throw std::runtime_error("eigen_hermitian: Jacobi did not converge in " +
                                     std::to_string(max_sweeps) + " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = m[p * n + q];
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                const T e = apq / g;
                const double app = real_of(m[p * n + p]);
                const double aqq = real_of(m[q * n + q]);
                const double theta = (aqq - app) / (2.0 * g);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J = diag(1, conj(e)) * [[c, s], [-s, c]] on the (p, q) plane
                const T s_ce = s * conj_of(e);
                const T c_ce = c * conj_of(e);
                const T s_e = s * e;
                const T c_e = c * e;

                for (std::size_t k = 0; k < n; ++k) {  // A <- A J
                    const T akp = m[k * n + p];
                    const T akq = m[k * n + q];
                    m[k * n + p] = c * akp - mul(s_ce, akq);
                    m[k * n + q] = s * akp + mul(c_ce, akq);
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
                    const T apk = m[p * n + k];
                    const T aqk = m[q * n + k];
                    m[p * n + k] = c * apk - mul(s_e, aqk);
                    m[q * n + k] = s * apk + mul(c_e, aqk);
                }
                m[p * n + q] = T{};
                m[q * n + p] = T{};
                m[p * n + p] = real_of(m[p * n + p]);
                m[q * n + q] = real_of(m[q * n + q]);

                if (v) {
                    T* vv = v->data();
                    for (std::size_t k = 0; k < n; ++k) {
                        const T vkp = vv[k * n + p];
                        const T vkq = vv[k * n + q];
                        vv[k * n + p] = c * vkp - mul(s_ce, vkq);
                        vv[k * n + q] = s * vkp + mul(c_ce, vkq);
                    }
                }
            }
        }
    }
}

bool is_real(const ComplexMatrix& h) {
    return std::all_of(h.entries().begin(), h.entries().end(), [](const Complex& z) { return z.imag() == 0.0; });
}

struct JacobiOutput {
    std::vector<double> diagonal;
    std::vector<Complex> vectors;  // row-major, columns are eigenvectors; empty if not requested
};

JacobiOutput run_jacobi(const ComplexMatrix& h, bool want_vectors, double tol, int max_sweeps) {
    const std::size_t n = h.dim();
    JacobiOutput out;
    out.diagonal.resize(n);
    auto identity = [&]<typename T>(std::vector<T>& id) {
        id.assign(n * n, T{});
        for (std::size_t i = 0; i < n; ++i) id[i * n + i] = T{1.0};
    };
    if (is_real(h)) {
        std::vector<double> m(n * n), v;
        for (std::size_t i = 0; i < n * n; ++i) m[i] = h.entries()[i].real();
        if (want_vectors) identity(v);
        jacobi_sweeps(m, want_vectors ? &v : nullptr, n, tol, max_sweeps);
        for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = m[i * n + i];
        out.vectors.assign(v.begin(), v.end());
    } else {
        std::vector<Complex> m = h.entries(), v;
        if (want_vectors) identity(v);
        jacobi_sweeps(m, want_vectors ? &v : nullptr, n, tol, max_sweeps);
        for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = m[i * n + i].real();
        out.vectors = std::move(v);
    }
    return out;
}

std::vector<std::size_t> descending_order(const std::vector<double>& diag) {
    std::vector<std::size_t> order(diag.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return diag[i] > diag[j]; });
    return order;
}

}  // namespace

HermitianEigen eigen_hermitian_jacobi(const ComplexMatrix& a, double tol, int max_sweeps) {
    const ComplexMatrix h = symmetrized(a);
    const std::size_t n = h.dim();
    const JacobiOutput jac = run_jacobi(h, true, tol, max_sweeps);

    HermitianEigen out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (std::size_t idx : descending_order(jac.diagonal)) {
        out.eigenvalues.push_back(jac.diagonal[idx]);
        std::vector<Complex> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = jac.vectors[k * n + idx];
        fix_phase(v);
        out.eigenvectors.push_back(std::move(v));
    }
    return out;
}

HermitianEigen eigen_hermitian(const ComplexMatrix& a, double tol, int max_sweeps) {
    if (a.dim() == 2) return eigen_2x2(symmetrized(a));
    return eigen_hermitian_jacobi(a, tol, max_sweeps);
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a) {
    const ComplexMatrix h = symmetrized(a);
    const auto n = static_cast<Eigen::Index>(h.dim());
    if (n == 2) return eigen_2x2(h).eigenvalues;
    Eigen::VectorXd ascending;
    if (is_real(h)) {
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = h(i, j).real();
        ascending = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
    } else {
        const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(h.data(), n, n);
        Eigen::MatrixXcd mc = m;
        ascending = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(mc, Eigen::EigenvaluesOnly).eigenvalues();
    }
    return {ascending.reverse().begin(), ascending.reverse().end()};
}

}  // namespace qcd
