// spin_models.hpp — ground-state builders for the collective spin models
// whose D^H scans mark quantum phase transitions: the LMG model (isotropic
// and anisotropic), the uniaxial model, and the Dicke model via truncated-
// Fock exact diagonalization in the symmetric spin sector.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qdh/errors.hpp"
#include "qdh/symmetric.hpp"

namespace qdh {

// --------------------------------------------------------------------------
// Collective spin operators in the Dicke basis (m = 0..N, M = m - N/2)
// --------------------------------------------------------------------------

namespace detail {

inline Eigen::MatrixXd collective_sz(int n) {
    Eigen::MatrixXd sz = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int m = 0; m <= n; ++m) sz(m, m) = m - 0.5 * n;
    return sz;
}

/// <m+1|S_+|m> = sqrt(S(S+1) - M(M+1)), S = N/2.
inline double splus_element(int n, int m) {
    const double s = 0.5 * n, mm = m - 0.5 * n;
    return std::sqrt(std::max(s * (s + 1) - mm * (mm + 1), 0.0));
}

inline Eigen::MatrixXd collective_sx(int n) {
    Eigen::MatrixXd sx = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int m = 0; m < n; ++m) {
        const double v = 0.5 * splus_element(n, m);
        sx(m + 1, m) = v;
        sx(m, m + 1) = v;
    }
    return sx;
}

inline Eigen::MatrixXcd collective_sy(int n) {
    Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (int m = 0; m < n; ++m) {
        const double v = 0.5 * splus_element(n, m);
        sy(m + 1, m) = Complex(0, -v);
        sy(m, m + 1) = Complex(0, v);
    }
    return sy;
}

}  // namespace detail

// --------------------------------------------------------------------------
// LMG model: H = -(lambda/N)(S_x^2 + gamma S_y^2) - h_z S_z
// --------------------------------------------------------------------------

struct LMGParams {
    int num_spins = 2;
    double lambda = 1.0;
    double gamma = 1.0;
    double h_z = 0.0;
};

inline void validate(const LMGParams& p) {
    if (p.num_spins < 2) throw DomainError("LMG: need at least 2 spins");
    if (p.gamma < 0.0 || p.gamma > 1.0) throw DomainError("LMG: gamma must be in [0, 1]");
}

/// gamma = 1 exact ground state: the Dicke state |N, m*> minimizing
/// E(m) = (lambda/N)(m - N/2)^2 - h_z (m - N/2); boundary ties resolve
/// toward the smaller |m - N/2|.
inline SymmetricPureState lmg_ground_isotropic(const LMGParams& p) {
    validate(p);
    if (std::abs(p.gamma - 1.0) > 1e-12)
        throw DomainError("lmg_ground_isotropic: requires gamma = 1");
    if (p.lambda == 0.0)
        throw DomainError("lmg_ground_isotropic: lambda = 0 leaves the spectrum degenerate in m");
    const int n = p.num_spins;
    auto energy = [&](int m) {
        const double mm = m - 0.5 * n;
        return (p.lambda / n) * mm * mm - p.h_z * mm;
    };
    std::vector<int> candidates;
    if (p.lambda > 0.0) {
        const double mhat = 0.5 * n + p.h_z * n / (2.0 * p.lambda);
        const int lo = static_cast<int>(std::floor(mhat)), hi = static_cast<int>(std::ceil(mhat));
        candidates = {std::clamp(lo, 0, n), std::clamp(hi, 0, n)};
    } else {
        candidates = {0, n};
    }
    int best = candidates.front();
    for (int m : candidates) {
        const double em = energy(m), eb = energy(best);
        if (em < eb - 1e-15 ||
            (std::abs(em - eb) <= 1e-15 && std::abs(m - 0.5 * n) < std::abs(best - 0.5 * n)))
            best = m;
    }
    if (p.lambda < 0.0 && p.h_z == 0.0) best = n;  // fully degenerate pair, fixed pick
    return dicke_state(n, best);
}

/// tanh(2x) of the variational ground state, by coupling-sign branch.
inline double lmg_aniso_tanh2x(const LMGParams& p) {
    validate(p);
    if (p.gamma >= 1.0) throw DomainError("lmg_aniso_tanh2x: requires gamma < 1");
    if (p.lambda == 0.0) throw DomainError("lmg_aniso_tanh2x: lambda must be nonzero");
    if (p.lambda > 0.0) {
        if (p.h_z < 0.0)
            throw DomainError("lmg_aniso_tanh2x: ferromagnetic branch defined for h_z >= 0");
        if (p.h_z == 1.0)
            throw DomainError("lmg_aniso_tanh2x: h_z = 1 is the critical point; evaluate one-sided");
        if (p.h_z > 1.0) return -(1.0 - p.gamma) / (2.0 * p.h_z - 1.0 - p.gamma);
        return -(p.h_z * p.h_z - p.gamma) / (2.0 - p.h_z * p.h_z - p.gamma);
    }
    return (1.0 - p.gamma) / (1.0 + p.gamma + 2.0 * std::abs(p.h_z));
}

/// Squeezed-pair variational state: coefficients on |N, N-2n> proportional
/// to (-1)^n sqrt((2n-1)!!/(2n)!!) tanh(x)^n, normalized by the sum of
/// squared magnitudes.
inline SymmetricPureState pair_condensate_state(int n, double tanh2x) {
    if (n < 2) throw DomainError("pair_condensate_state: need at least 2 spins");
    if (std::abs(tanh2x) >= 1.0)
        throw DomainError("pair_condensate_state: |tanh 2x| = " + std::to_string(std::abs(tanh2x)) +
                          " >= 1 (unphysical branch)");
    const double x = 0.5 * std::atanh(tanh2x);
    const double tx = std::tanh(x);
    Vector coeffs = Vector::Zero(n + 1);
    double ratio = 1.0;  // (2n-1)!!/(2n)!!, with (-1)!! = 0!! = 1
    double norm_sq = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        if (k > 0) ratio *= (2.0 * k - 1.0) / (2.0 * k);
        const double c = (k % 2 == 0 ? 1.0 : -1.0) * std::sqrt(ratio) * std::pow(tx, k);
        coeffs(n - 2 * k) = c;
        norm_sq += c * c;
    }
    coeffs /= std::sqrt(norm_sq);
    return {n, std::move(coeffs)};
}

inline SymmetricPureState lmg_ground_aniso(const LMGParams& p) {
    return pair_condensate_state(p.num_spins, lmg_aniso_tanh2x(p));
}

// --------------------------------------------------------------------------
// Uniaxial model: H = -(1/N) S_x^2 - h_x S_x - h_z S_z
// --------------------------------------------------------------------------

struct UniaxialParams {
    int num_spins = 2;
    double h_x = 0.0;
    double h_z = 0.0;
};

struct UniaxialCandidate {
    double lambda0 = 0.0;
    double tanh2x = 0.0;
    double energy = 0.0;
    bool valid = false;  // |tanh 2x| < 1 and Delta != 0
};

struct UniaxialGround {
    SymmetricPureState state;
    double lambda0 = 0.0;
    double tanh2x = 0.0;
    double energy = 0.0;
    std::vector<UniaxialCandidate> candidates;
};

namespace detail {

inline double uniaxial_root_fn(double l, double h_x, double h_z) {
    return l * h_z - h_x * (1.0 - 2.0 * l * l) / (2.0 * std::sqrt(1.0 - l * l)) -
           l * (1.0 - 2.0 * l * l);
}

inline double uniaxial_gamma_fn(double l, double h_x) {
    const double om = 1.0 - l * l;
    return -(1.0 - 5.0 * l * l) / 4.0 + h_x * l * (2.0 - l * l) / (8.0 * std::pow(om, 1.5));
}

inline double uniaxial_delta_fn(double l, double h_x, double h_z) {
    const double om = 1.0 - l * l;
    return h_z - (1.0 - 7.0 * l * l) / 2.0 + h_x * l * (4.0 - 3.0 * l * l) / (4.0 * std::pow(om, 1.5));
}

/// The pair-condensate form lives in a collective frame tilted by the
/// mean-field angle theta0 = 2 asin(lambda0); apply exp(-i theta0 S_y).
inline Vector rotate_about_y(const Vector& dicke_coeffs, int n, double lambda0) {
    const double theta0 = 2.0 * std::asin(std::clamp(lambda0, -1.0, 1.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(collective_sy(n));
    Vector phases(n + 1);
    for (int k = 0; k <= n; ++k) phases(k) = std::polar(1.0, -theta0 * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * dicke_coeffs;
}

/// All simple roots of f on (lo, hi): sign-change scan plus bisection.
template <typename F>
std::vector<double> bracketed_roots(F&& f, double lo, double hi, int scan_points) {
    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = lo + (hi - lo) * i / scan_points;
        const double fx = f(x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (fx != 0.0 && std::signbit(fx) != std::signbit(prev_f)) {
            double a = prev_x, b = x, fa = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fm == 0.0) { a = b = mid; break; }
                if (std::signbit(fm) == std::signbit(fa)) { a = mid; fa = fm; } else { b = mid; }
                if (b - a < 1e-15) break;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    if (prev_f == 0.0) roots.push_back(prev_x);
    // dedupe near-coincident roots
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                roots.end());
    return roots;
}

}  // namespace detail

/// Variational uniaxial ground state. All real roots lambda_0 in (-1, 1) of
/// the stationarity equation are enumerated; each valid candidate state is
/// built and the one with the lowest <H> wins. The energy is evaluated on
/// the candidate rotated into its mean-field frame (theta0 = 2 asin(lambda0));
/// comparing unrotated forms would select the metastable branch for h_x != 0
/// and put the first-order jump at the spinodal instead of h_x = 0. The
/// returned state is the pair-condensate form itself, whose D^H equals the
/// rotated state's by local-unitary invariance.
inline UniaxialGround uniaxial_ground(const UniaxialParams& p) {
    if (p.num_spins < 2) throw DomainError("uniaxial_ground: need at least 2 spins");
    if (!std::isfinite(p.h_x) || !std::isfinite(p.h_z))
        throw DomainError("uniaxial_ground: fields must be finite");
    const double eps = 1e-9;
    auto f = [&](double l) { return detail::uniaxial_root_fn(l, p.h_x, p.h_z); };
    const std::vector<double> roots = detail::bracketed_roots(f, -1.0 + eps, 1.0 - eps, 4000);
    if (roots.empty())
        throw DomainError("uniaxial_ground: no stationary lambda_0 in (-1, 1)");

    const int n = p.num_spins;
    const Eigen::MatrixXd sx = detail::collective_sx(n);
    const Eigen::MatrixXd sz = detail::collective_sz(n);
    const Eigen::MatrixXd h =
        (-1.0 / n) * (sx * sx) - p.h_x * sx - p.h_z * sz;

    UniaxialGround out;
    out.energy = std::numeric_limits<double>::infinity();
    bool found = false;
    for (double l0 : roots) {
        UniaxialCandidate cand;
        cand.lambda0 = l0;
        const double delta = detail::uniaxial_delta_fn(l0, p.h_x, p.h_z);
        const double gamma = detail::uniaxial_gamma_fn(l0, p.h_x);
        cand.tanh2x = delta != 0.0 ? 2.0 * gamma / delta
                                   : std::numeric_limits<double>::infinity();
        cand.valid = std::isfinite(cand.tanh2x) && std::abs(cand.tanh2x) < 1.0;
        if (cand.valid) {
            SymmetricPureState state = pair_condensate_state(n, cand.tanh2x);
            const Vector rotated = detail::rotate_about_y(state.dicke_coeffs, n, l0);
            cand.energy = (rotated.adjoint() * h.cast<Complex>() * rotated).value().real();
            if (cand.energy < out.energy - 1e-12) {
                out.state = std::move(state);
                out.lambda0 = l0;
                out.tanh2x = cand.tanh2x;
                out.energy = cand.energy;
                found = true;
            }
        } else {
            cand.energy = std::numeric_limits<double>::quiet_NaN();
        }
        out.candidates.push_back(cand);
    }
    if (!found)
        throw DomainError("uniaxial_ground: every stationary point gives |tanh 2x| >= 1");
    return out;
}

// --------------------------------------------------------------------------
// Dicke model: H = omega a^dag a + omega0 J_z + (lambda/sqrt N)(a^dag + a)(J+ + J-)
// --------------------------------------------------------------------------

struct DickeParams {
    int num_atoms = 2;
    double omega = 1.0;
    double omega0 = 1.0;
    double lambda = 0.0;
    int fock_cutoff = 16;
};

inline void validate(const DickeParams& p) {
    if (p.num_atoms < 1) throw DomainError("Dicke: need at least 1 atom");
    if (p.fock_cutoff < 1) throw DomainError("Dicke: fock_cutoff must be >= 1");
    if (p.omega <= 0.0 || p.omega0 <= 0.0) throw DomainError("Dicke: omega, omega0 must be > 0");
}

struct DickeGround {
    SymmetricMixedState atomic_state;
    double energy = 0.0;
    int parity = 0;  // parity of m + n_photon in the chosen sector
    int fock_cutoff = 0;
};

namespace detail {

/// Ground eigenpair of one parity sector ((m + n) mod 2 == parity) of the
/// Dicke Hamiltonian with the boson truncated at `cutoff` photons.
/// States are ordered m-major; returns the full (m, n) grid amplitudes.
inline std::pair<double, Eigen::MatrixXd> dicke_sector_ground(const DickeParams& p, int cutoff,
                                                              int parity) {
    const int n_atoms = p.num_atoms, nph = cutoff + 1;
    std::vector<int> id(static_cast<size_t>(n_atoms + 1) * nph, -1);
    std::vector<std::pair<int, int>> states;
    for (int m = 0; m <= n_atoms; ++m)
        for (int ph = 0; ph < nph; ++ph)
            if ((m + ph) % 2 == parity) {
                id[static_cast<size_t>(m) * nph + ph] = static_cast<int>(states.size());
                states.emplace_back(m, ph);
            }
    const int dim = static_cast<int>(states.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const double g = p.lambda / std::sqrt(static_cast<double>(n_atoms));
    for (int i = 0; i < dim; ++i) {
        const auto [m, ph] = states[static_cast<size_t>(i)];
        h(i, i) = p.omega * ph + p.omega0 * (m - 0.5 * n_atoms);
        if (m + 1 <= n_atoms) {
            const double jp = splus_element(n_atoms, m);
            if (ph + 1 < nph) {
                const int j = id[static_cast<size_t>(m + 1) * nph + ph + 1];
                h(i, j) = h(j, i) = g * jp * std::sqrt(ph + 1.0);
            }
            if (ph - 1 >= 0) {
                const int j = id[static_cast<size_t>(m + 1) * nph + ph - 1];
                h(i, j) = h(j, i) = g * jp * std::sqrt(static_cast<double>(ph));
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dicke_sector_ground: eigensolver failed");
    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(n_atoms + 1, nph);
    for (int i = 0; i < dim; ++i)
        psi(states[static_cast<size_t>(i)].first, states[static_cast<size_t>(i)].second) =
            es.eigenvectors()(i, 0);
    return {es.eigenvalues()(0), std::move(psi)};
}

}  // namespace detail

/// Ground state of the truncated Dicke Hamiltonian, reduced over the boson.
/// The Hamiltonian conserves the parity of (m + n); the two sectors are
/// diagonalized separately and the lower one wins (ties -> even), which
/// keeps the near-degenerate superradiant ground state deterministic.
inline DickeGround dicke_ground_reduced(const DickeParams& p) {
    validate(p);
    auto [e_even, psi_even] = detail::dicke_sector_ground(p, p.fock_cutoff, 0);
    auto [e_odd, psi_odd] = detail::dicke_sector_ground(p, p.fock_cutoff, 1);
    const bool even_wins = e_even <= e_odd + 1e-12;
    const Eigen::MatrixXd& psi = even_wins ? psi_even : psi_odd;

    Eigen::MatrixXd rho_atom = psi * psi.transpose();
    rho_atom = 0.5 * (rho_atom + rho_atom.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho_atom);
    std::vector<std::pair<double, int>> kept;
    for (int k = 0; k <= p.num_atoms; ++k)
        if (es.eigenvalues()(k) > 1e-14) kept.emplace_back(es.eigenvalues()(k), k);
    RealVector evals(kept.size());
    Matrix evecs(p.num_atoms + 1, kept.size());
    for (size_t j = 0; j < kept.size(); ++j) {
        evals(static_cast<Eigen::Index>(j)) = kept[j].first;
        evecs.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(kept[j].second);
    }
    evals /= evals.sum();

    DickeGround out;
    out.atomic_state = symmetric_mixed_state(p.num_atoms, std::move(evals), std::move(evecs));
    out.energy = even_wins ? e_even : e_odd;
    out.parity = even_wins ? 0 : 1;
    out.fock_cutoff = p.fock_cutoff;
    return out;
}

}  // namespace qdh
