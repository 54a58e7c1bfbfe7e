// states.hpp — pure states, density matrices, Schmidt decomposition,
// parameterized product bases, and completely classical states.
//
// Conventions used everywhere in this library:
//   * computational basis: |0> = e0, |1> = e1 per qubit;
//   * multi-party amplitudes are indexed lexicographically, party 0 slowest
//     (index n = (...(k0*d1 + k1)*d2 + k2)... );
//   * the qubit basis chart is
//       |+> = cos(t/2)|1> + e^{-i p} sin(t/2)|0>
//       |-> = e^{i p} sin(t/2)|1> - cos(t/2)|0>
//     with t in [0, pi], p in [0, 2 pi); local index 0 is |+>, 1 is |->.
//     At t = 0 this gives {|1>, -|0>}.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qdh/errors.hpp"
#include "qdh/linalg.hpp"

namespace qdh {

inline long product_of(const std::vector<int>& dims) {
    long p = 1;
    for (int d : dims) p *= d;
    return p;
}

// --------------------------------------------------------------------------
// PureState / DensityMatrix
// --------------------------------------------------------------------------

struct PureState {
    Vector amplitudes;
    std::vector<int> dims;

    int num_parties() const { return static_cast<int>(dims.size()); }
    long total_dim() const { return product_of(dims); }
};

/// Validating constructor; renormalizes after the tolerance check so the
/// stored norm is 1 to machine precision.
inline PureState pure_state(Vector amplitudes, std::vector<int> dims, double norm_tol = 1e-6) {
    if (amplitudes.size() != product_of(dims))
        throw DimensionError("pure_state: amplitudes length " + std::to_string(amplitudes.size()) +
                             " does not match dims product " + std::to_string(product_of(dims)));
    if (!amplitudes.allFinite()) throw DomainError("pure_state: non-finite amplitude");
    const double nrm = amplitudes.norm();
    if (std::abs(nrm - 1.0) > norm_tol)
        throw DomainError("pure_state: norm " + std::to_string(nrm) + " deviates from 1 beyond " +
                          std::to_string(norm_tol));
    amplitudes /= nrm;
    return {std::move(amplitudes), std::move(dims)};
}

struct DensityMatrix {
    Matrix matrix;
    std::vector<int> dims;

    int num_parties() const { return static_cast<int>(dims.size()); }
    long total_dim() const { return product_of(dims); }
};

/// Validating constructor: Hermitian, unit trace, PSD within tolerances.
inline DensityMatrix density_matrix(Matrix m, std::vector<int> dims, double herm_tol = 1e-10,
                                    double trace_tol = 1e-10, double psd_tol = 1e-10) {
    const long total = product_of(dims);
    if (m.rows() != m.cols() || m.rows() != total)
        throw DimensionError("density_matrix: matrix side does not match dims product");
    if (!m.allFinite()) throw DomainError("density_matrix: non-finite entry");
    const double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > herm_tol * scale)
        throw DomainError("density_matrix: not Hermitian within tolerance");
    m = 0.5 * (m + m.adjoint()).eval();
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > trace_tol)
        throw DomainError("density_matrix: trace " + std::to_string(tr) +
                          " deviates from 1 beyond tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw NotPsdError("density_matrix: eigenvalue " + std::to_string(es.eigenvalues().minCoeff()) +
                          " below PSD tolerance");
    return {std::move(m), std::move(dims)};
}

inline DensityMatrix to_density(const PureState& psi) {
    return {psi.amplitudes * psi.amplitudes.adjoint(), psi.dims};
}

inline double affinity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return affinity(rho.matrix, sigma.matrix);
}

// --------------------------------------------------------------------------
// Schmidt decomposition
// --------------------------------------------------------------------------

/// Coefficients descending and real non-negative (phases absorbed into the
/// left vectors); left/right vectors are full local orthonormal bases.
struct SchmidtDecomposition {
    RealVector coefficients;
    Matrix left_vectors;   // d_A x d_A unitary, columns |i_A>
    Matrix right_vectors;  // d_B x d_B unitary, columns |i_B>

    int rank(double tol = 1e-12) const {
        int r = 0;
        for (Eigen::Index i = 0; i < coefficients.size(); ++i)
            if (coefficients(i) > tol) ++r;
        return r;
    }
};

inline SchmidtDecomposition schmidt_decompose(const PureState& psi) {
    if (psi.num_parties() != 2)
        throw DimensionError("schmidt_decompose: state must be bipartite, got " +
                             std::to_string(psi.num_parties()) + " parties");
    const int da = psi.dims[0], db = psi.dims[1];
    Matrix m(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) m(i, j) = psi.amplitudes(static_cast<long>(i) * db + j);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // psi = sum_k s_k |u_k> (x) |conj(v_k)>
    const int r = static_cast<int>(std::min(da, db));
    RealVector coeffs = RealVector::Zero(r);
    coeffs.head(svd.singularValues().size()) = svd.singularValues();
    return {coeffs, svd.matrixU(), svd.matrixV().conjugate()};
}

// --------------------------------------------------------------------------
// Product bases
// --------------------------------------------------------------------------

struct QubitBasisAngles {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)
};

/// 2x2 unitary with columns [|+>, |->] for the chart above.
inline Matrix qubit_basis_matrix(const QubitBasisAngles& a) {
    const double c = std::cos(a.theta / 2.0), s = std::sin(a.theta / 2.0);
    const Complex em = std::polar(1.0, -a.phi), ep = std::polar(1.0, a.phi);
    Matrix u(2, 2);
    // rows: component on |0>, |1>; columns: |+>, |->
    u(0, 0) = em * s;
    u(1, 0) = c;
    u(0, 1) = -c;
    u(1, 1) = ep * s;
    return u;
}

/// One local orthonormal basis per party. Qubit parties built from angles
/// keep them for reporting; general parties carry a d x d unitary whose
/// columns are the basis vectors.
struct ProductBasis {
    std::vector<Matrix> locals;
    std::vector<QubitBasisAngles> angles;  // nonempty iff built from the qubit chart

    int num_parties() const { return static_cast<int>(locals.size()); }
    std::vector<int> dims() const {
        std::vector<int> d;
        d.reserve(locals.size());
        for (const auto& u : locals) d.push_back(static_cast<int>(u.rows()));
        return d;
    }
    long total_dim() const {
        long t = 1;
        for (const auto& u : locals) t *= u.rows();
        return t;
    }
};

inline ProductBasis product_basis_from_angles(const std::vector<QubitBasisAngles>& angles) {
    ProductBasis b;
    b.angles = angles;
    b.locals.reserve(angles.size());
    for (const auto& a : angles) b.locals.push_back(qubit_basis_matrix(a));
    return b;
}

inline ProductBasis product_basis_from_unitaries(std::vector<Matrix> locals,
                                                 double unitary_tol = 1e-10) {
    for (const auto& u : locals) {
        if (u.rows() != u.cols()) throw DimensionError("product_basis: local basis not square");
        if ((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() > unitary_tol)
            throw DomainError("product_basis: local basis not unitary within tolerance");
    }
    return {std::move(locals), {}};
}

/// Computational product basis (identity locals).
inline ProductBasis computational_basis(const std::vector<int>& dims) {
    std::vector<Matrix> locals;
    locals.reserve(dims.size());
    for (int d : dims) locals.push_back(Matrix::Identity(d, d));
    return {std::move(locals), {}};
}

/// n-th product vector |sigma_n| in lexicographic order, party 0 slowest.
inline Vector product_vector(const ProductBasis& b, long n) {
    const int parties = b.num_parties();
    std::vector<int> local_idx(parties);
    long rem = n;
    for (int p = parties - 1; p >= 0; --p) {
        const long d = b.locals[p].rows();
        local_idx[p] = static_cast<int>(rem % d);
        rem /= d;
    }
    Vector v = b.locals[0].col(local_idx[0]);
    for (int p = 1; p < parties; ++p) v = kron(v, Vector(b.locals[p].col(local_idx[p])));
    return v;
}

/// All d^N product vectors as PureStates, lexicographic order.
inline std::vector<PureState> basis_vectors(const ProductBasis& b) {
    const long total = b.total_dim();
    std::vector<PureState> out;
    out.reserve(total);
    const auto dims = b.dims();
    for (long n = 0; n < total; ++n) out.push_back({product_vector(b, n), dims});
    return out;
}

/// Full-space unitary with the product vectors as columns.
inline Matrix basis_matrix(const ProductBasis& b) {
    Matrix w = b.locals[0];
    for (int p = 1; p < b.num_parties(); ++p) w = kron(w, b.locals[p]);
    return w;
}

// --------------------------------------------------------------------------
// Completely classical states
// --------------------------------------------------------------------------

/// Product basis plus joint probability table (lexicographic order).
struct ClassicalState {
    ProductBasis basis;
    RealVector probabilities;
};

inline void validate_probabilities(const RealVector& p, double tol = 1e-12) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(p(i) >= -tol))
            throw ProbabilityError("probability " + std::to_string(p(i)) + " negative at index " +
                                   std::to_string(i));
        sum += p(i);
    }
    if (std::abs(sum - 1.0) > std::max(tol, 1e-12 * p.size()))
        throw ProbabilityError("probabilities sum to " + std::to_string(sum));
}

/// sigma = sum_n p_n |sigma_n><sigma_n|
inline DensityMatrix classical_state(const ProductBasis& b, const RealVector& p) {
    if (p.size() != b.total_dim())
        throw DimensionError("classical_state: probability table size does not match basis");
    validate_probabilities(p);
    const long total = b.total_dim();
    Matrix sigma = Matrix::Zero(total, total);
    for (long n = 0; n < total; ++n) {
        if (p(n) == 0.0) continue;
        Vector v = product_vector(b, n);
        sigma.noalias() += std::max(p(n), 0.0) * (v * v.adjoint());
    }
    return {std::move(sigma), b.dims()};
}

inline DensityMatrix to_density(const ClassicalState& cs) {
    return classical_state(cs.basis, cs.probabilities);
}

}  // namespace qdh
