// named_states.hpp — builders for the standard state families used by the
// evaluators, the verify suites, and the tests.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qdh/linalg.hpp"
#include "qdh/states.hpp"

namespace qdh {

/// |psi+> = (|10> + |01>)/sqrt(2)
inline PureState bell_psi_plus() {
    Vector v = Vector::Zero(4);
    v(1) = v(2) = 1.0 / std::numbers::sqrt2;
    return pure_state(v, {2, 2});
}

/// GHZ_N = (|1...1> + |0...0>)/sqrt(2)
inline PureState ghz_state(int n) {
    const long total = 1L << n;
    Vector v = Vector::Zero(total);
    v(0) = v(total - 1) = 1.0 / std::numbers::sqrt2;
    return pure_state(v, std::vector<int>(n, 2));
}

/// W_N = (|10...0> + |010...0> + ... )/sqrt(N)
inline PureState w_state(int n) {
    const long total = 1L << n;
    Vector v = Vector::Zero(total);
    for (int i = 0; i < n; ++i) v(1L << i) = 1.0 / std::sqrt(static_cast<double>(n));
    return pure_state(v, std::vector<int>(n, 2));
}

/// |GHZ_1>_4 = (|1010> + |0101>)/sqrt(2), cyclic unit 1010
inline PureState ghz1_4qubit() {
    Vector v = Vector::Zero(16);
    v(0b1010) = v(0b0101) = 1.0 / std::numbers::sqrt2;
    return pure_state(v, {2, 2, 2, 2});
}

/// |W_2>_4 = (|1100> + |0110> + |0011> + |1001>)/2, cyclic unit 1100
inline PureState w2_4qubit() {
    Vector v = Vector::Zero(16);
    v(0b1100) = v(0b0110) = v(0b0011) = v(0b1001) = 0.5;
    return pure_state(v, {2, 2, 2, 2});
}

/// Full 2^N-dimensional expansion of the Dicke state |N, m>.
inline PureState dicke_state_full(int n, int m) {
    if (m < 0 || m > n) throw DomainError("dicke_state_full: m out of range");
    const long total = 1L << n;
    Vector v = Vector::Zero(total);
    long count = 0;
    for (long s = 0; s < total; ++s)
        if (__builtin_popcountll(static_cast<unsigned long long>(s)) == m) ++count;
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (long s = 0; s < total; ++s)
        if (__builtin_popcountll(static_cast<unsigned long long>(s)) == m) v(s) = amp;
    return pure_state(v, std::vector<int>(n, 2));
}

/// The two-qubit state from the bipartite worked example:
/// (1/sqrt2)|1>(1/2|1> + sqrt3/2|0>) + (1/sqrt2)|0>(sqrt3/2|1> + 1/2|0>),
/// Schmidt coefficients sqrt(2 +- sqrt(3))/2.
inline PureState schmidt_example_state() {
    Vector v(4);
    const double s = 1.0 / std::numbers::sqrt2;
    v(0) = s * 0.5;                  // |00>
    v(1) = s * std::sqrt(3.0) / 2;   // |01>
    v(2) = s * std::sqrt(3.0) / 2;   // |10>
    v(3) = s * 0.5;                  // |11>
    return pure_state(v, {2, 2});
}

/// Werner state (1-r)/4 I + r |psi+><psi+|, r in [0, 1].
inline DensityMatrix werner_2qubit_state(double r) {
    if (r < 0.0 || r > 1.0) throw DomainError("werner_2qubit_state: r must be in [0, 1]");
    const PureState psi = bell_psi_plus();
    Matrix m = (1.0 - r) / 4.0 * Matrix::Identity(4, 4) +
               r * (psi.amplitudes * psi.amplitudes.adjoint());
    return density_matrix(std::move(m), {2, 2});
}

/// Bell basis in this library's index convention:
///   Psi+- = (|00> +- |11>)/sqrt2, Phi+- = (|01> +- |10>)/sqrt2.
inline std::vector<Vector> bell_basis() {
    std::vector<Vector> b(4, Vector::Zero(4));
    const double s = 1.0 / std::numbers::sqrt2;
    b[0](0) = s; b[0](3) = s;    // Psi+
    b[1](0) = s; b[1](3) = -s;   // Psi-
    b[2](1) = s; b[2](2) = s;    // Phi+
    b[3](1) = s; b[3](2) = -s;   // Phi-
    return b;
}

/// Bell-diagonal state sum_i lambda_i on {Psi+, Psi-, Phi+, Phi-}.
inline DensityMatrix bell_diagonal_state(const std::array<double, 4>& lambda) {
    const auto basis = bell_basis();
    Matrix m = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) m.noalias() += lambda[i] * (basis[i] * basis[i].adjoint());
    return density_matrix(std::move(m), {2, 2});
}

/// (m x m)-dimensional Werner family (m - x) I / (m^3 - m) + (m x - 1) F / (m^3 - m)
/// with F the swap operator; x in [-1, 1]. Reduces to I/m^2 at x = 1/m.
inline DensityMatrix werner_mlevel_state(int m, double x) {
    if (m < 2) throw DomainError("werner_mlevel_state: m must be >= 2");
    if (x < -1.0 || x > 1.0) throw DomainError("werner_mlevel_state: x must be in [-1, 1]");
    const long d = static_cast<long>(m) * m;
    const double denom = static_cast<double>(m) * m * m - m;
    Matrix mat = (m - x) / denom * Matrix::Identity(d, d);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) mat(k * m + l, l * m + k) += (m * x - 1.0) / denom;
    return density_matrix(std::move(mat), {m, m});
}

/// (m x m)-dimensional isotropic family (1 - x)/(m^2 - 1) I + (m^2 x - 1)/(m^2 - 1) P+
/// with P+ the projector on the maximally entangled state; x = fidelity in [0, 1].
inline DensityMatrix isotropic_mlevel_state(int m, double x) {
    if (m < 2) throw DomainError("isotropic_mlevel_state: m must be >= 2");
    if (x < 0.0 || x > 1.0) throw DomainError("isotropic_mlevel_state: x must be in [0, 1]");
    const long d = static_cast<long>(m) * m;
    Vector psi = Vector::Zero(d);
    for (int k = 0; k < m; ++k) psi(static_cast<long>(k) * m + k) = 1.0 / std::sqrt(double(m));
    const double dd = static_cast<double>(m) * m - 1.0;
    Matrix mat = (1.0 - x) / dd * Matrix::Identity(d, d) +
                 (m * static_cast<double>(m) * x - 1.0) / dd * (psi * psi.adjoint());
    return density_matrix(std::move(mat), {m, m});
}

}  // namespace qdh
