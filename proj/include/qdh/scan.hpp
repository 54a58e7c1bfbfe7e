// scan.hpp — parameter scans of D^H over the spin-model ground states,
// with CSV output. This is the engine behind the CLI `scan` subcommand.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "qdh/detail/parallel.hpp"
#include "qdh/errors.hpp"
#include "qdh/spin_models.hpp"
#include "qdh/symmetric.hpp"

namespace qdh {

// --------------------------------------------------------------------------
// Dicke model with cutoff-convergence check
// --------------------------------------------------------------------------

/// Starting truncation sized from the superradiant mean photon number.
inline int default_dicke_cutoff(const DickeParams& p) {
    const double mean_ph = p.num_atoms * p.lambda * p.lambda / (p.omega * p.omega);
    return std::max(16, static_cast<int>(std::ceil(4.0 + 2.5 * mean_ph)));
}

struct DickeDiscord {
    SymmetricResult result;   // at the doubled cutoff
    double dh_at_cutoff = 0.0;
    double residual = 0.0;    // |D^H(2c) - D^H(c)|
    int cutoff = 0;           // accepted (doubled) cutoff
    int parity = 0;
};

/// D^H of the Dicke ground state with the doubling contract enforced:
/// the value at fock_cutoff and at twice that must agree within dh_tol,
/// otherwise a ConvergenceError carries a suggested cutoff.
inline DickeDiscord dicke_discord_checked(DickeParams p, const SymmetricScanConfig& cfg = {},
                                          double dh_tol = 1e-6) {
    validate(p);
    const DickeGround g1 = dicke_ground_reduced(p);
    const SymmetricResult r1 = dh_symmetric(g1.atomic_state, cfg);
    DickeParams doubled = p;
    doubled.fock_cutoff = 2 * p.fock_cutoff;
    const DickeGround g2 = dicke_ground_reduced(doubled);
    const SymmetricResult r2 = dh_symmetric(g2.atomic_state, cfg);
    const double residual = std::abs(r2.value - r1.value);
    if (residual > dh_tol)
        throw ConvergenceError("dicke_discord_checked: D^H moved by " + std::to_string(residual) +
                                   " when doubling fock_cutoff from " +
                                   std::to_string(p.fock_cutoff) + "; increase the cutoff",
                               4 * p.fock_cutoff);
    return {r2, r1.value, residual, doubled.fock_cutoff, g2.parity};
}

// --------------------------------------------------------------------------
// Scan specification
// --------------------------------------------------------------------------

enum class ScanModel { LmgIso, LmgAniso, Uniaxial, Dicke };

inline std::string to_string(ScanModel m) {
    switch (m) {
        case ScanModel::LmgIso: return "lmg-iso";
        case ScanModel::LmgAniso: return "lmg-aniso";
        case ScanModel::Uniaxial: return "uniaxial";
        case ScanModel::Dicke: return "dicke";
    }
    return "?";
}

struct ScanModelParams {
    int num_spins = 20;
    double lambda = 1.0;
    double gamma = 1.0;
    double h_z = 0.0;
    double h_x = 0.0;
    double omega = 1.0;
    double omega0 = 1.0;
    int fock_cutoff = 0;  // 0 = auto per sweep point
};

struct ScanSpec {
    ScanModel model = ScanModel::LmgIso;
    ScanModelParams params;
    std::string sweep;  // parameter name swept over the grid
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
};

struct ScanRow {
    double param = 0.0;
    bool ok = false;
    double dh = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    int restarts = 0;
    double residual = 0.0;  // cutoff-doubling residual (Dicke), else 0
    std::string error;
};

namespace detail {

inline const std::vector<std::string>& sweepable(ScanModel m) {
    static const std::vector<std::string> lmg_iso{"hz", "lambda"};
    static const std::vector<std::string> lmg_aniso{"hz", "lambda", "gamma"};
    static const std::vector<std::string> uniaxial{"hx", "hz"};
    static const std::vector<std::string> dicke{"lambda", "omega", "omega0"};
    switch (m) {
        case ScanModel::LmgIso: return lmg_iso;
        case ScanModel::LmgAniso: return lmg_aniso;
        case ScanModel::Uniaxial: return uniaxial;
        case ScanModel::Dicke: return dicke;
    }
    return lmg_iso;
}

inline void apply_sweep(ScanModelParams& p, const std::string& name, double value) {
    if (name == "hz") p.h_z = value;
    else if (name == "hx") p.h_x = value;
    else if (name == "lambda") p.lambda = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "omega") p.omega = value;
    else if (name == "omega0") p.omega0 = value;
    else throw DomainError("scan: unknown sweep parameter '" + name + "'");
}

}  // namespace detail

inline void validate(const ScanSpec& spec) {
    if (spec.points < 2) throw DomainError("scan: points must be >= 2");
    if (!(spec.start < spec.stop)) throw DomainError("scan: start must be < stop");
    const auto& names = detail::sweepable(spec.model);
    if (std::find(names.begin(), names.end(), spec.sweep) == names.end())
        throw DomainError("scan: parameter '" + spec.sweep + "' not sweepable for model " +
                          to_string(spec.model));
    if ((spec.model == ScanModel::LmgAniso || spec.model == ScanModel::Uniaxial) &&
        spec.params.num_spins % 2 != 0)
        throw DomainError("scan: the variational pair ansatz requires an even spin count");
}

/// One scan row; row errors are captured, not thrown.
inline ScanRow scan_point(const ScanSpec& spec, double value, const SymmetricScanConfig& cfg) {
    ScanRow row;
    row.param = value;
    try {
        ScanModelParams p = spec.params;
        detail::apply_sweep(p, spec.sweep, value);
        SymmetricResult res;
        switch (spec.model) {
            case ScanModel::LmgIso: {
                res = dh_symmetric(
                    lmg_ground_isotropic({p.num_spins, p.lambda, 1.0, p.h_z}), cfg);
                break;
            }
            case ScanModel::LmgAniso: {
                res = dh_symmetric(lmg_ground_aniso({p.num_spins, p.lambda, p.gamma, p.h_z}), cfg);
                break;
            }
            case ScanModel::Uniaxial: {
                res = dh_symmetric(uniaxial_ground({p.num_spins, p.h_x, p.h_z}).state, cfg);
                break;
            }
            case ScanModel::Dicke: {
                DickeParams dp{p.num_spins, p.omega, p.omega0, p.lambda, p.fock_cutoff};
                if (dp.fock_cutoff <= 0) dp.fock_cutoff = default_dicke_cutoff(dp);
                DickeDiscord dd = dicke_discord_checked(dp, cfg);
                res = dd.result;
                row.residual = dd.residual;
                break;
            }
        }
        row.ok = true;
        row.dh = res.value;
        row.theta = res.sigma.theta;
        row.phi = res.sigma.phi;
        row.restarts = res.restarts_used;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

/// Run every grid point; rows come back in sweep order regardless of the
/// worker schedule. Worker parallelism is across rows, so each row's own
/// scan runs single-threaded.
inline std::vector<ScanRow> run_scan(const ScanSpec& spec, SymmetricScanConfig cfg = {},
                                     int workers = 0) {
    validate(spec);
    cfg.workers = 1;
    const int n = spec.points;
    return detail::parallel_map<ScanRow>(n, workers, [&](long i) {
        const double value = spec.start + (spec.stop - spec.start) * i / (n - 1);
        return scan_point(spec, value, cfg);
    });
}

// --------------------------------------------------------------------------
// CSV output
// --------------------------------------------------------------------------

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Header `param,dh,theta,phi`; an `error` column is appended when any row
/// failed. Numbers carry 12 significant digits.
inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    bool any_error = false;
    for (const auto& r : rows) any_error |= !r.ok;
    std::string out = any_error ? "param,dh,theta,phi,error\n" : "param,dh,theta,phi\n";
    for (const auto& r : rows) {
        out += format_number(r.param);
        out += ',';
        if (r.ok) {
            out += format_number(r.dh);
            out += ',';
            out += format_number(r.theta);
            out += ',';
            out += format_number(r.phi);
            if (any_error) out += ',';
        } else {
            out += ",,";
            if (any_error) {
                out += ',';
                std::string msg = r.error;
                for (char& c : msg)
                    if (c == ',' || c == '\n') c = ';';
                out += msg;
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace qdh
