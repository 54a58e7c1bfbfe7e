// linalg.hpp — dense complex linear algebra primitives: Hermitian
// eigendecomposition, PSD square root, Kronecker products, partial trace,
// and the affinity Tr[sqrt(rho) sqrt(sigma)].

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qdh/errors.hpp"

namespace qdh {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// --------------------------------------------------------------------------
// Hermitian eigendecomposition
// --------------------------------------------------------------------------

/// Spectrum of a Hermitian matrix: eigenvalues ascending, orthonormal
/// eigenvector columns, A = V diag(w) V^dag.
struct HermitianEig {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

inline double frobenius_norm(const Matrix& a) { return a.norm(); }

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized
/// internally; deviations from Hermiticity beyond tolerance are rejected.
inline HermitianEig hermitian_eig(const Matrix& a, double herm_tol = 1e-10) {
    if (a.rows() != a.cols())
        throw DimensionError("hermitian_eig: matrix is not square (" +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
    const double scale = std::max(1.0, a.norm());
    const double dev = (a - a.adjoint()).norm();
    if (dev > herm_tol * scale)
        throw DomainError("hermitian_eig: matrix is not Hermitian; ||A - A^dag||_F = " +
                          std::to_string(dev));
    Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("hermitian_eig: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// --------------------------------------------------------------------------
// PSD square root
// --------------------------------------------------------------------------

/// Hermitian PSD square root. Eigenvalues within the clamping threshold of
/// zero are eigensolver noise and are treated as exact zeros (a stray +1e-16
/// would otherwise surface as a 1e-8 square root); anything below -psd_tol
/// is an error.
inline Matrix matrix_sqrt_psd(const Matrix& a, double psd_tol = 1e-10) {
    HermitianEig eig = hermitian_eig(a);
    const Eigen::Index n = eig.eigenvalues.size();
    RealVector sqrt_vals(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double w = eig.eigenvalues(i);
        if (w < -psd_tol)
            throw NotPsdError("matrix_sqrt_psd: eigenvalue " + std::to_string(w) +
                              " below PSD tolerance");
        sqrt_vals(i) = w <= psd_tol ? 0.0 : std::sqrt(w);
    }
    Matrix r = eig.eigenvectors * sqrt_vals.asDiagonal() * eig.eigenvectors.adjoint();
    return 0.5 * (r + r.adjoint());
}

// --------------------------------------------------------------------------
// Kronecker products
// --------------------------------------------------------------------------

/// (A (x) B)[(i*rB + k), (j*cB + l)] = A[i,j] * B[k,l]
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// --------------------------------------------------------------------------
// Partial trace
// --------------------------------------------------------------------------

/// Trace out all parties not listed in `keep`. Party order of the result
/// follows the original order of the kept indices.
inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionError("partial_trace: nonpositive party dimension");
        total *= d;
    }
    if (rho.rows() != rho.cols() || rho.rows() != total)
        throw DimensionError("partial_trace: dims product " + std::to_string(total) +
                             " does not match matrix side " + std::to_string(rho.rows()));

    const int parties = static_cast<int>(dims.size());
    std::vector<int> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    keep_sorted.erase(std::unique(keep_sorted.begin(), keep_sorted.end()), keep_sorted.end());
    for (int k : keep_sorted)
        if (k < 0 || k >= parties)
            throw DimensionError("partial_trace: keep index out of range");

    std::vector<int> traced;
    for (int p = 0; p < parties; ++p)
        if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), p)) traced.push_back(p);

    // strides for the row-major multi-index, party 0 slowest
    std::vector<long> stride(parties, 1);
    for (int p = parties - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];

    long keep_dim = 1, trace_dim = 1;
    for (int k : keep_sorted) keep_dim *= dims[k];
    for (int t : traced) trace_dim *= dims[t];

    // flat offset for the j-th multi-index over a party subset
    auto offset = [&](const std::vector<int>& subset, long j) {
        long off = 0;
        for (int s = static_cast<int>(subset.size()) - 1; s >= 0; --s) {
            int p = subset[s];
            off += (j % dims[p]) * stride[p];
            j /= dims[p];
        }
        return off;
    };

    Matrix out = Matrix::Zero(keep_dim, keep_dim);
    for (long i = 0; i < keep_dim; ++i) {
        const long row_keep = offset(keep_sorted, i);
        for (long j = 0; j < keep_dim; ++j) {
            const long col_keep = offset(keep_sorted, j);
            Complex acc = 0.0;
            for (long t = 0; t < trace_dim; ++t) {
                const long off_t = offset(traced, t);
                acc += rho(row_keep + off_t, col_keep + off_t);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

// --------------------------------------------------------------------------
// Affinity
// --------------------------------------------------------------------------

/// Tr[sqrt(rho) sqrt(sigma)], clamped to [0, 1]. Both arguments must be
/// valid density matrices of equal dimension.
inline double affinity(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw DimensionError("affinity: dimension mismatch");
    Matrix sr = matrix_sqrt_psd(rho);
    Matrix ss = matrix_sqrt_psd(sigma);
    Complex tr = (sr * ss).trace();
    // product of two Hermitian PSD factors: the trace is real up to round-off
    return std::clamp(tr.real(), 0.0, 1.0);
}

// --------------------------------------------------------------------------
// Small constructors used throughout
// --------------------------------------------------------------------------

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace qdh
