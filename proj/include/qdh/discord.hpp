// discord.hpp — the variational core of the Hellinger geometric discord
//
//   D^H(rho) = 1 - max_sigma Tr[sqrt(rho) sqrt(sigma)]
//
// over completely classical sigma. For a fixed product basis the optimal
// probability table is closed-form, so only basis angles are searched:
//   pure:   p_n = |<psi|sigma_n>|^4 / sum_m |<psi|sigma_m>|^4,
//           affinity^2 = sum_n |<psi|sigma_n>|^4
//   mixed:  a_n = <sigma_n|sqrt(rho)|sigma_n>, p_n = a_n^2 / sum a^2,
//           affinity^2 = sum_n a_n^2
// The optimizer runs a coarse Cartesian grid over per-party (theta, phi)
// followed by simplex refinement from the best cells.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qdh/detail/nelder_mead.hpp"
#include "qdh/detail/parallel.hpp"
#include "qdh/errors.hpp"
#include "qdh/linalg.hpp"
#include "qdh/states.hpp"

namespace qdh {

// --------------------------------------------------------------------------
// Fixed-basis evaluation
// --------------------------------------------------------------------------

namespace detail {

inline bool all_qubits(const std::vector<int>& dims) {
    for (int d : dims)
        if (d != 2) return false;
    return !dims.empty();
}

/// Overlaps o_n = <sigma_n|psi> for every product vector of a qubit basis,
/// via party-wise application of the local adjoints (O(N 2^N)).
inline void qubit_overlaps(Vector& v, const std::vector<Matrix>& locals) {
    const int parties = static_cast<int>(locals.size());
    const long total = v.size();
    for (int p = 0; p < parties; ++p) {
        const Matrix& u = locals[p];
        const Complex b00 = std::conj(u(0, 0)), b10 = std::conj(u(1, 0));
        const Complex b01 = std::conj(u(0, 1)), b11 = std::conj(u(1, 1));
        const long stride = 1L << (parties - 1 - p);
        for (long base = 0; base < total; base += 2 * stride) {
            for (long off = 0; off < stride; ++off) {
                const Complex a0 = v(base + off);
                const Complex a1 = v(base + off + stride);
                v(base + off) = b00 * a0 + b10 * a1;
                v(base + off + stride) = b01 * a0 + b11 * a1;
            }
        }
    }
}

inline Vector overlaps(const PureState& psi, const ProductBasis& b) {
    if (b.total_dim() != psi.total_dim())
        throw DimensionError("overlaps: basis dimension does not match state");
    if (all_qubits(b.dims())) {
        Vector v = psi.amplitudes;
        qubit_overlaps(v, b.locals);
        return v;
    }
    return basis_matrix(b).adjoint() * psi.amplitudes;
}

inline double affinity_sq_pure(const PureState& psi, const ProductBasis& b) {
    Vector o = overlaps(psi, b);
    double g = 0.0;
    for (Eigen::Index n = 0; n < o.size(); ++n) {
        const double w = std::norm(o(n));
        g += w * w;
    }
    return g;
}

/// Diagonal of sqrt(rho) in the product basis: a_n = <sigma_n|sqrt(rho)|sigma_n>.
inline RealVector sqrt_rho_diagonal(const Matrix& sqrt_rho, const ProductBasis& b) {
    const Matrix w = basis_matrix(b);
    const Matrix m = sqrt_rho * w;
    RealVector a(w.cols());
    for (Eigen::Index n = 0; n < w.cols(); ++n) a(n) = w.col(n).dot(m.col(n)).real();
    return a;
}

inline double affinity_sq_mixed(const Matrix& sqrt_rho, const ProductBasis& b) {
    const RealVector a = sqrt_rho_diagonal(sqrt_rho, b);
    return a.squaredNorm();
}

}  // namespace detail

/// Stationary probability table of a pure state: p_i proportional to
/// |<psi|sigma_i>|^4.
inline RealVector optimal_probs_pure(const PureState& psi, const ProductBasis& b) {
    Vector o = detail::overlaps(psi, b);
    RealVector p(o.size());
    double sum = 0.0;
    for (Eigen::Index n = 0; n < o.size(); ++n) {
        const double w = std::norm(o(n));
        p(n) = w * w;
        sum += p(n);
    }
    if (!(sum > 0.0))
        throw std::logic_error("optimal_probs_pure: all overlaps vanish for a complete basis");
    return p / sum;
}

/// Stationary probability table of a mixed state: p_i proportional to
/// <sigma_i|sqrt(rho)|sigma_i>^2.
inline RealVector optimal_probs_mixed(const Matrix& sqrt_rho, const ProductBasis& b) {
    RealVector a = detail::sqrt_rho_diagonal(sqrt_rho, b);
    RealVector p = a.array().square();
    const double sum = p.sum();
    if (!(sum > 0.0)) throw std::logic_error("optimal_probs_mixed: zero diagonal mass");
    return p / sum;
}

inline RealVector optimal_probs_mixed(const DensityMatrix& rho, const ProductBasis& b) {
    return optimal_probs_mixed(matrix_sqrt_psd(rho.matrix), b);
}

/// D^H at a fixed basis with the optimal probability table folded in:
/// 1 - sqrt(sum_n |<psi|sigma_n>|^4).
inline double dh_fixed_basis(const PureState& psi, const ProductBasis& b) {
    return 1.0 - std::sqrt(detail::affinity_sq_pure(psi, b));
}

/// Mixed-state counterpart: 1 - sqrt(sum_n <sigma_n|sqrt(rho)|sigma_n>^2).
inline double dh_fixed_basis(const DensityMatrix& rho, const ProductBasis& b) {
    if (b.total_dim() != rho.total_dim())
        throw DimensionError("dh_fixed_basis: basis dimension does not match state");
    return 1.0 - std::sqrt(detail::affinity_sq_mixed(matrix_sqrt_psd(rho.matrix), b));
}

// --------------------------------------------------------------------------
// Optimizer
// --------------------------------------------------------------------------

struct OptimizerConfig {
    int grid_theta = 0;           // points per theta axis; 0 = auto (9, or 5 for >= 4 parties)
    int grid_phi = 0;             // points per phi axis; 0 = auto
    int refine_starts = 8;        // best grid cells refined by simplex
    int max_refine_iter = 0;      // 0 = auto (400 * parties)
    double tol = 1e-9;            // affinity convergence tolerance
    int workers = 0;              // 0 = DISCORD_WORKERS env, then hardware
    unsigned long long seed = 0;  // jitter stream for refinement starts
};

struct DiscordDiagnostics {
    int restarts_used = 0;
    long best_grid_cell = -1;
    int refine_iterations = 0;
    int grid_theta = 0;
    int grid_phi = 0;
    double grid_affinity = 0.0;  // best affinity before refinement
};

struct DiscordResult {
    double value = 0.0;
    double affinity = 0.0;
    ProductBasis basis;
    RealVector probabilities;
    DiscordDiagnostics diagnostics;
};

namespace detail {

/// Map (theta, phi) onto the canonical chart: theta in [0, pi], phi in [0, 2 pi).
/// Uses the exact identities (-t, p) == (t, p + pi) and 2 pi periodicity.
inline QubitBasisAngles normalize_angles(double theta, double phi) {
    const double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0) theta += two_pi;
    if (theta > std::numbers::pi) {
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
    return {theta, phi};
}

struct AngleGrid {
    std::vector<double> thetas;
    std::vector<double> phis;
    std::vector<Matrix> locals;  // one per (theta, phi) pair, theta-major

    long cells_per_party() const { return static_cast<long>(thetas.size()) * phis.size(); }
    QubitBasisAngles cell_angles(long c) const {
        const long np = static_cast<long>(phis.size());
        return {thetas[static_cast<size_t>(c / np)], phis[static_cast<size_t>(c % np)]};
    }
};

inline AngleGrid make_angle_grid(int n_theta, int n_phi, bool phi_inclusive) {
    AngleGrid g;
    g.thetas.resize(n_theta);
    for (int i = 0; i < n_theta; ++i)
        g.thetas[i] = n_theta == 1 ? 0.0 : std::numbers::pi * i / (n_theta - 1);
    g.phis.resize(n_phi);
    for (int j = 0; j < n_phi; ++j)
        g.phis[j] = phi_inclusive ? (n_phi == 1 ? 0.0 : 2.0 * std::numbers::pi * j / (n_phi - 1))
                                  : 2.0 * std::numbers::pi * j / n_phi;
    g.locals.reserve(g.cells_per_party());
    for (double t : g.thetas)
        for (double p : g.phis) g.locals.push_back(qubit_basis_matrix(QubitBasisAngles{t, p}));
    return g;
}

/// Objective over per-party angles, pure or mixed; value is affinity^2.
class QubitObjective {
  public:
    QubitObjective(const PureState& psi) : pure_(&psi), parties_(psi.num_parties()) {}
    QubitObjective(const Matrix& sqrt_rho, int parties)
        : sqrt_rho_(&sqrt_rho), parties_(parties) {}

    int parties() const { return parties_; }

    double eval_locals(const std::vector<Matrix>& locals) const {
        if (pure_) {
            Vector v = pure_->amplitudes;
            qubit_overlaps(v, locals);
            double g = 0.0;
            for (Eigen::Index n = 0; n < v.size(); ++n) {
                const double w = std::norm(v(n));
                g += w * w;
            }
            return g;
        }
        Matrix w = locals[0];
        for (int p = 1; p < parties_; ++p) w = kron(w, locals[p]);
        const Matrix m = (*sqrt_rho_) * w;
        double g = 0.0;
        for (Eigen::Index n = 0; n < w.cols(); ++n) {
            const double a = w.col(n).dot(m.col(n)).real();
            g += a * a;
        }
        return g;
    }

    double eval_angles(const std::vector<double>& x) const {
        std::vector<Matrix> locals(parties_);
        for (int p = 0; p < parties_; ++p)
            locals[p] = qubit_basis_matrix(QubitBasisAngles{x[2 * p], x[2 * p + 1]});
        return eval_locals(locals);
    }

  private:
    const PureState* pure_ = nullptr;
    const Matrix* sqrt_rho_ = nullptr;
    int parties_;
};

inline DiscordResult optimize_qubits(const QubitObjective& obj, const OptimizerConfig& cfg,
                                     const std::function<RealVector(const ProductBasis&)>& probs) {
    const int parties = obj.parties();
    int gt = cfg.grid_theta, gp = cfg.grid_phi;
    if (gt <= 0) gt = parties >= 4 ? 5 : 9;
    if (gp <= 0) gp = parties >= 4 ? 5 : 9;
    const AngleGrid grid = make_angle_grid(gt, gp, /*phi_inclusive=*/false);

    const long per_party = grid.cells_per_party();
    long total = 1;
    for (int p = 0; p < parties; ++p) total *= per_party;

    auto cell_locals = [&](long cell) {
        std::vector<Matrix> locals(parties);
        long rem = cell;
        for (int p = parties - 1; p >= 0; --p) {
            locals[p] = grid.locals[static_cast<size_t>(rem % per_party)];
            rem /= per_party;
        }
        return locals;
    };
    auto cell_angles = [&](long cell) {
        std::vector<double> x(2 * parties);
        long rem = cell;
        for (int p = parties - 1; p >= 0; --p) {
            const QubitBasisAngles a = grid.cell_angles(rem % per_party);
            x[2 * p] = a.theta;
            x[2 * p + 1] = a.phi;
            rem /= per_party;
        }
        return x;
    };

    const auto seeds = detail::parallel_topk(total, cfg.refine_starts, cfg.workers,
                                             [&](long c) { return obj.eval_locals(cell_locals(c)); });

    const double theta_step = gt > 1 ? std::numbers::pi / (gt - 1) : std::numbers::pi / 8;
    const int max_iter = cfg.max_refine_iter > 0 ? cfg.max_refine_iter : 400 * parties;
    const double ftol = std::max(cfg.tol * 1e-4, 1e-14);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> jitter(-theta_step / 4, theta_step / 4);

    double best_g = -1.0;
    std::vector<double> best_x;
    int best_iters = 0, restarts = 0;
    for (size_t s = 0; s < seeds.size(); ++s) {
        std::vector<double> x0 = cell_angles(seeds[s].second);
        if (s > 0)
            for (double& xi : x0) xi += jitter(rng);
        auto nm = detail::nelder_mead([&](const std::vector<double>& x) { return -obj.eval_angles(x); },
                                      x0, theta_step / 2, ftol, 1e-8, max_iter);
        ++restarts;
        const double g = std::max(-nm.f, seeds[s].first);
        if (g > best_g) {
            best_g = g;
            best_x = -nm.f >= seeds[s].first ? nm.x : cell_angles(seeds[s].second);
            best_iters = nm.iterations;
        }
    }
    if (best_x.empty()) throw std::logic_error("dh_optimize: empty search grid");

    std::vector<QubitBasisAngles> angles(parties);
    for (int p = 0; p < parties; ++p) angles[p] = normalize_angles(best_x[2 * p], best_x[2 * p + 1]);
    DiscordResult res;
    res.basis = product_basis_from_angles(angles);
    res.affinity = std::min(std::sqrt(std::max(best_g, 0.0)), 1.0);
    res.value = 1.0 - res.affinity;
    res.probabilities = probs(res.basis);
    res.diagnostics = {restarts, seeds.empty() ? -1 : seeds.front().second, best_iters,
                       gt, gp, std::sqrt(std::max(seeds.empty() ? 0.0 : seeds.front().first, 0.0))};
    return res;
}

}  // namespace detail

/// Variational D^H over per-qubit (theta, phi) product bases: coarse grid,
/// then simplex refinement from the best cells.
inline DiscordResult dh_optimize(const PureState& psi, const OptimizerConfig& cfg = {}) {
    if (!detail::all_qubits(psi.dims))
        throw UnsupportedError("dh_optimize: every party must be a qubit; use the closed forms "
                               "for multilevel states");
    detail::QubitObjective obj(psi);
    return detail::optimize_qubits(obj, cfg,
                                   [&](const ProductBasis& b) { return optimal_probs_pure(psi, b); });
}

inline DiscordResult dh_optimize(const DensityMatrix& rho, const OptimizerConfig& cfg = {}) {
    if (!detail::all_qubits(rho.dims))
        throw UnsupportedError("dh_optimize: every party must be a qubit; use the closed forms "
                               "for multilevel states");
    const Matrix sqrt_rho = matrix_sqrt_psd(rho.matrix);
    detail::QubitObjective obj(sqrt_rho, rho.num_parties());
    return detail::optimize_qubits(
        obj, cfg, [&](const ProductBasis& b) { return optimal_probs_mixed(sqrt_rho, b); });
}

// --------------------------------------------------------------------------
// Brute-force grid oracle
// --------------------------------------------------------------------------

namespace detail {

template <typename EvalLocals>
double bruteforce_impl(int parties, int grid_n, int workers, EvalLocals&& eval) {
    if (parties > 4)
        throw ResourceError("dh_bruteforce: supports at most 4 qubits, got " +
                            std::to_string(parties));
    if (grid_n < 2) throw DomainError("dh_bruteforce: grid_n must be at least 2");
    const AngleGrid grid = make_angle_grid(grid_n, grid_n, /*phi_inclusive=*/true);
    const long per_party = grid.cells_per_party();
    long total = 1;
    for (int p = 0; p < parties; ++p) total *= per_party;
    auto best = detail::parallel_argmax(total, workers, [&](long cell) {
        std::vector<Matrix> locals(parties);
        long rem = cell;
        for (int p = parties - 1; p >= 0; --p) {
            locals[p] = grid.locals[static_cast<size_t>(rem % per_party)];
            rem /= per_party;
        }
        return eval(locals);
    });
    return 1.0 - std::sqrt(std::max(best.first, 0.0));
}

}  // namespace detail

/// Exhaustive D^H upper bound over the Cartesian angle grid (grid_n points
/// per theta and phi axis, endpoints included).
inline double dh_bruteforce(const PureState& psi, int grid_n, int workers = 0) {
    if (!detail::all_qubits(psi.dims)) throw UnsupportedError("dh_bruteforce: qubit parties only");
    detail::QubitObjective obj(psi);
    return detail::bruteforce_impl(psi.num_parties(), grid_n, workers,
                                   [&](const std::vector<Matrix>& l) { return obj.eval_locals(l); });
}

inline double dh_bruteforce(const DensityMatrix& rho, int grid_n, int workers = 0) {
    if (!detail::all_qubits(rho.dims)) throw UnsupportedError("dh_bruteforce: qubit parties only");
    const Matrix sqrt_rho = matrix_sqrt_psd(rho.matrix);
    detail::QubitObjective obj(sqrt_rho, rho.num_parties());
    return detail::bruteforce_impl(rho.num_parties(), grid_n, workers,
                                   [&](const std::vector<Matrix>& l) { return obj.eval_locals(l); });
}

}  // namespace qdh
