// symmetric.hpp — fast-path D^H for permutation-invariant N-qubit states.
//
// The nearest classical state of a permutation-invariant state is taken
// party-uniform: one (theta, phi) pair and per-orbit probabilities, where
// orbit m collects the C(N, m) patterns |+>^m |->^(N-m). States are stored
// by their Dicke coefficients (weight basis), so the search is 2-dimensional
// and the per-point cost is polynomial in N.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "qdh/detail/nelder_mead.hpp"
#include "qdh/detail/parallel.hpp"
#include "qdh/discord.hpp"
#include "qdh/errors.hpp"
#include "qdh/linalg.hpp"
#include "qdh/states.hpp"

namespace qdh {

// --------------------------------------------------------------------------
// Symmetric state representations
// --------------------------------------------------------------------------

/// Coefficients c_m over Dicke states |N, m>, m = number of excited qubits.
struct SymmetricPureState {
    int num_qubits = 0;
    Vector dicke_coeffs;  // size N + 1
};

inline SymmetricPureState symmetric_pure_state(int n, Vector coeffs, double norm_tol = 1e-10) {
    if (n < 1) throw DimensionError("symmetric_pure_state: need at least one qubit");
    if (coeffs.size() != n + 1)
        throw DimensionError("symmetric_pure_state: expected " + std::to_string(n + 1) +
                             " Dicke coefficients");
    const double nrm = coeffs.norm();
    if (std::abs(nrm - 1.0) > norm_tol)
        throw DomainError("symmetric_pure_state: norm deviates from 1 by " +
                          std::to_string(std::abs(nrm - 1.0)));
    coeffs /= nrm;
    return {n, std::move(coeffs)};
}

/// Dicke state |N, m> in the weight-basis representation.
inline SymmetricPureState dicke_state(int n, int m) {
    if (m < 0 || m > n) throw DomainError("dicke_state: m out of range");
    Vector c = Vector::Zero(n + 1);
    c(m) = 1.0;
    return symmetric_pure_state(n, std::move(c));
}

/// Mixed permutation-invariant state supported on the symmetric sector:
/// eigenvalues plus eigenvectors given as Dicke-coefficient columns.
struct SymmetricMixedState {
    int num_qubits = 0;
    RealVector eigenvalues;
    Matrix eigenvectors;  // (N+1) x K, orthonormal columns
};

inline SymmetricMixedState symmetric_mixed_state(int n, RealVector eigenvalues, Matrix eigenvectors,
                                                 double tol = 1e-10) {
    if (eigenvectors.rows() != n + 1 || eigenvectors.cols() != eigenvalues.size())
        throw DimensionError("symmetric_mixed_state: eigenvector shape mismatch");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
        if (eigenvalues(k) < -tol)
            throw NotPsdError("symmetric_mixed_state: negative eigenvalue");
        eigenvalues(k) = std::max(eigenvalues(k), 0.0);
        sum += eigenvalues(k);
    }
    if (std::abs(sum - 1.0) > std::max(tol, 1e-9))
        throw ProbabilityError("symmetric_mixed_state: eigenvalues sum to " + std::to_string(sum));
    if ((eigenvectors.adjoint() * eigenvectors -
         Matrix::Identity(eigenvectors.cols(), eigenvectors.cols()))
            .norm() > 1e-8)
        throw DomainError("symmetric_mixed_state: eigenvectors not orthonormal");
    return {n, std::move(eigenvalues), std::move(eigenvectors)};
}

// --------------------------------------------------------------------------
// Pattern overlaps
// --------------------------------------------------------------------------

namespace detail {

inline RealVector binomial_row(int n) {
    RealVector c(n + 1);
    c(0) = 1.0;
    for (int k = 1; k <= n; ++k) c(k) = c(k - 1) * (n - k + 1) / k;
    return c;
}

/// B(k, m) = <N, m | (+)^k (-)^(N-k)>: overlap of every Dicke basis state
/// with every sorted pattern, by a dynamic program over parties that
/// accumulates pattern amplitude per computational weight.
inline Matrix pattern_dicke_overlaps(int n, double theta, double phi) {
    const Complex on1_plus = std::cos(theta / 2.0);
    const Complex on0_plus = std::polar(1.0, -phi) * std::sin(theta / 2.0);
    const Complex on1_minus = std::polar(1.0, phi) * std::sin(theta / 2.0);
    const Complex on0_minus = -std::cos(theta / 2.0);

    const RealVector binom = binomial_row(n);
    Matrix b(n + 1, n + 1);
    std::vector<Complex> f(n + 1), next(n + 1);
    for (int k = 0; k <= n; ++k) {
        std::fill(f.begin(), f.end(), Complex(0.0));
        f[0] = 1.0;
        for (int slot = 0; slot < n; ++slot) {
            const Complex a1 = slot < k ? on1_plus : on1_minus;
            const Complex a0 = slot < k ? on0_plus : on0_minus;
            std::fill(next.begin(), next.end(), Complex(0.0));
            for (int w = 0; w <= slot; ++w) {
                next[w] += f[w] * a0;
                next[w + 1] += f[w] * a1;
            }
            std::swap(f, next);
        }
        for (int m = 0; m <= n; ++m) b(k, m) = f[m] / std::sqrt(binom(m));
    }
    return b;
}

}  // namespace detail

/// A_k = <psi | (+)^k (-)^(N-k)> for the sorted pattern of each orbit;
/// by permutation invariance |A_k| is shared by the whole orbit.
inline Vector dicke_overlap_amplitudes(const SymmetricPureState& s, double theta, double phi) {
    const Matrix b = detail::pattern_dicke_overlaps(s.num_qubits, theta, phi);
    return b * s.dicke_coeffs.conjugate();
}

// --------------------------------------------------------------------------
// Symmetric-ansatz objective and search
// --------------------------------------------------------------------------

/// Nearest classical state in the symmetric ansatz: one angle pair plus
/// per-pattern probabilities p_m shared inside each orbit.
struct SymmetricSigma {
    double theta = 0.0;
    double phi = 0.0;
    RealVector pattern_probs;  // per-pattern probability of orbit m (size N+1)
};

struct SymmetricResult {
    double value = 0.0;
    double affinity = 0.0;
    SymmetricSigma sigma;
    int restarts_used = 0;
    int refine_iterations = 0;
    long best_grid_cell = -1;
};

struct SymmetricScanConfig {
    int theta_points = 181;
    int phi_points = 90;
    int refine_starts = 4;
    int max_refine_iter = 500;
    double tol = 1e-9;  // affinity convergence tolerance
    int workers = 0;
};

namespace detail {

class SymmetricObjective {
  public:
    explicit SymmetricObjective(const SymmetricPureState& s)
        : n_(s.num_qubits), conj_coeffs_(s.dicke_coeffs.conjugate()), binom_(binomial_row(n_)) {}
    SymmetricObjective(const SymmetricMixedState& s)
        : n_(s.num_qubits), binom_(binomial_row(n_)) {
        sqrt_evals_ = s.eigenvalues.array().max(0.0).sqrt();
        conj_vectors_ = s.eigenvectors.conjugate();
    }

    int num_qubits() const { return n_; }
    const RealVector& binomials() const { return binom_; }

    /// a_k per orbit: |A_k|^2 (pure) or sum_j sqrt(l_j) |<phi_j|P_k>|^2 (mixed).
    RealVector orbit_weights(double theta, double phi) const {
        const Matrix b = pattern_dicke_overlaps(n_, theta, phi);
        RealVector a(n_ + 1);
        if (conj_vectors_.size() == 0) {
            const Vector amps = b * conj_coeffs_;
            for (int k = 0; k <= n_; ++k) a(k) = std::norm(amps(k));
        } else {
            const Matrix ov = b * conj_vectors_;  // (k, j) = <phi_j|P_k>
            for (int k = 0; k <= n_; ++k) {
                double acc = 0.0;
                for (Eigen::Index j = 0; j < sqrt_evals_.size(); ++j)
                    acc += sqrt_evals_(j) * std::norm(ov(k, j));
                a(k) = acc;
            }
        }
        return a;
    }

    double affinity_sq(double theta, double phi) const {
        const RealVector a = orbit_weights(theta, phi);
        double g = 0.0;
        for (int k = 0; k <= n_; ++k) g += binom_(k) * a(k) * a(k);
        return g;
    }

  private:
    int n_;
    Vector conj_coeffs_;     // pure only
    RealVector sqrt_evals_;  // mixed only
    Matrix conj_vectors_;    // mixed only
    RealVector binom_;
};

inline SymmetricResult symmetric_search(const SymmetricObjective& obj,
                                        const SymmetricScanConfig& cfg) {
    const int nt = std::max(cfg.theta_points, 2), np = std::max(cfg.phi_points, 1);
    const long total = static_cast<long>(nt) * np;
    auto cell_theta = [&](long c) { return std::numbers::pi * (c / np) / (nt - 1); };
    auto cell_phi = [&](long c) { return 2.0 * std::numbers::pi * (c % np) / np; };

    const auto seeds = parallel_topk(total, cfg.refine_starts, cfg.workers, [&](long c) {
        return obj.affinity_sq(cell_theta(c), cell_phi(c));
    });

    const double step = std::numbers::pi / (nt - 1);
    const double ftol = std::max(cfg.tol * 1e-4, 1e-14);
    double best_g = -1.0;
    std::vector<double> best_x{0.0, 0.0};
    int best_iters = 0, restarts = 0;
    for (const auto& seed : seeds) {
        auto nm = nelder_mead([&](const std::vector<double>& x) { return -obj.affinity_sq(x[0], x[1]); },
                              {cell_theta(seed.second), cell_phi(seed.second)}, step / 2, ftol, 1e-9,
                              cfg.max_refine_iter);
        ++restarts;
        const double g = std::max(-nm.f, seed.first);
        if (g > best_g) {
            best_g = g;
            best_x = -nm.f >= seed.first
                         ? nm.x
                         : std::vector<double>{cell_theta(seed.second), cell_phi(seed.second)};
            best_iters = nm.iterations;
        }
    }

    const QubitBasisAngles a = normalize_angles(best_x[0], best_x[1]);
    const RealVector weights = obj.orbit_weights(a.theta, a.phi);
    double g = 0.0;
    for (int k = 0; k <= obj.num_qubits(); ++k) g += obj.binomials()(k) * weights(k) * weights(k);

    SymmetricResult res;
    res.affinity = std::min(std::sqrt(std::max(g, 0.0)), 1.0);
    res.value = 1.0 - res.affinity;
    res.sigma.theta = a.theta;
    res.sigma.phi = a.phi;
    res.sigma.pattern_probs = weights.array().square() / std::max(g, 1e-300);
    res.restarts_used = restarts;
    res.refine_iterations = best_iters;
    res.best_grid_cell = seeds.empty() ? -1 : seeds.front().second;
    return res;
}

}  // namespace detail

/// D^H of a permutation-invariant pure state via the symmetric ansatz:
/// grid scan plus simplex refinement over the single (theta, phi) pair.
inline SymmetricResult dh_symmetric(const SymmetricPureState& s,
                                    const SymmetricScanConfig& cfg = {}) {
    return detail::symmetric_search(detail::SymmetricObjective(s), cfg);
}

inline SymmetricResult dh_symmetric(const SymmetricMixedState& s,
                                    const SymmetricScanConfig& cfg = {}) {
    return detail::symmetric_search(detail::SymmetricObjective(s), cfg);
}

// --------------------------------------------------------------------------
// Conversions to the full 2^N representation (test oracles, small N)
// --------------------------------------------------------------------------

inline PureState expand_to_full(const SymmetricPureState& s) {
    const int n = s.num_qubits;
    if (n > 24) throw ResourceError("expand_to_full: 2^N expansion limited to N <= 24");
    const RealVector binom = detail::binomial_row(n);
    const long total = 1L << n;
    Vector v(total);
    for (long str = 0; str < total; ++str) {
        const int m = __builtin_popcountll(static_cast<unsigned long long>(str));
        v(str) = s.dicke_coeffs(m) / std::sqrt(binom(m));
    }
    return pure_state(std::move(v), std::vector<int>(n, 2));
}

inline DensityMatrix expand_to_full(const SymmetricMixedState& s) {
    const int n = s.num_qubits;
    if (n > 12) throw ResourceError("expand_to_full: density expansion limited to N <= 12");
    const long total = 1L << n;
    Matrix rho = Matrix::Zero(total, total);
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        if (s.eigenvalues(k) <= 0.0) continue;
        SymmetricPureState vec{n, s.eigenvectors.col(k)};
        const Vector full = expand_to_full(vec).amplitudes;
        rho.noalias() += s.eigenvalues(k) * (full * full.adjoint());
    }
    return {std::move(rho), std::vector<int>(n, 2)};
}

/// Project a 2^N pure state onto the Dicke representation; error if any
/// weight class is not uniform in amplitude (not permutation invariant).
inline SymmetricPureState symmetric_from_full(const PureState& psi, double tol = 1e-8) {
    const int n = psi.num_parties();
    if (!detail::all_qubits(psi.dims))
        throw UnsupportedError("symmetric_from_full: qubit parties only");
    const RealVector binom = detail::binomial_row(n);
    Vector coeffs = Vector::Zero(n + 1);
    const long total = 1L << n;
    // first pass: accumulate c_m = sum_str amp / sqrt(C) consistent with expand_to_full
    for (long str = 0; str < total; ++str) {
        const int m = __builtin_popcountll(static_cast<unsigned long long>(str));
        coeffs(m) += psi.amplitudes(str);
    }
    for (int m = 0; m <= n; ++m) coeffs(m) /= std::sqrt(binom(m));
    // second pass: verify uniformity
    for (long str = 0; str < total; ++str) {
        const int m = __builtin_popcountll(static_cast<unsigned long long>(str));
        const Complex expect = coeffs(m) / std::sqrt(binom(m));
        if (std::abs(psi.amplitudes(str) - expect) > tol)
            throw DomainError("symmetric_from_full: state is not permutation invariant "
                              "within tolerance");
    }
    return symmetric_pure_state(n, std::move(coeffs), 1e-6);
}

}  // namespace qdh
