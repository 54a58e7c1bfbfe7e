// qdh — Hellinger geometric quantum discord toolkit
//
// Subcommands:
//   discord   D^H of a state file (or parameterized family) as JSON
//   scan      D^H along a spin-model parameter sweep as CSV
//   verify    randomized cross-checks between evaluators

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qdh/closed_forms.hpp"
#include "qdh/discord.hpp"
#include "qdh/named_states.hpp"
#include "qdh/scan.hpp"
#include "qdh/spin_models.hpp"
#include "qdh/state_io.hpp"
#include "qdh/symmetric.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qdh;

// 12 significant digits on every emitted number
double round_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

json angles_json(const std::vector<QubitBasisAngles>& angles) {
    json arr = json::array();
    for (const auto& a : angles) arr.push_back({{"theta", round_sig(a.theta)}, {"phi", round_sig(a.phi)}});
    return {{"type", "qubit-angles"}, {"angles", std::move(arr)}};
}

json basis_json(const ProductBasis& b) {
    if (!b.angles.empty()) return angles_json(b.angles);
    json parties = json::array();
    for (const auto& u : b.locals) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < u.cols(); ++c)
                row.push_back({round_sig(u(r, c).real()), round_sig(u(r, c).imag())});
            rows.push_back(std::move(row));
        }
        parties.push_back(std::move(rows));
    }
    return {{"type", "unitaries"}, {"unitaries", std::move(parties)}};
}

json probs_json(const RealVector& p) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(round_sig(p(i)));
    return arr;
}

json symmetric_sigma_json(const SymmetricSigma& s, int n) {
    const RealVector binom = qdh::detail::binomial_row(n);
    json orbits = json::array();
    for (int m = 0; m <= n; ++m)
        orbits.push_back({{"m", m},
                          {"patterns", static_cast<long>(binom(m))},
                          {"p_per_pattern", round_sig(s.pattern_probs(m))},
                          {"p_orbit", round_sig(binom(m) * s.pattern_probs(m))}});
    return {{"type", "orbits"}, {"orbits", std::move(orbits)}};
}

// ---------------------------------------------------------------------------
// discord subcommand
// ---------------------------------------------------------------------------

struct DiscordCmdOptions {
    std::string state_path;
    std::string method = "auto";
    double werner_r = -1.0;
    std::vector<double> bell_lambdas;
    int grid_n = 9;
    OptimizerConfig opt;
    SymmetricScanConfig sym;
    std::string out_path;
};

std::optional<double> match_werner(const DensityMatrix& rho, double tol = 1e-9) {
    if (rho.dims != std::vector<int>{2, 2}) return std::nullopt;
    const double r = 1.0 - 4.0 * rho.matrix(0, 0).real();
    if (r < -tol || r > 1.0 + tol) return std::nullopt;
    const double rc = std::clamp(r, 0.0, 1.0);
    if ((rho.matrix - werner_2qubit_state(rc).matrix).norm() > tol) return std::nullopt;
    return rc;
}

std::optional<std::array<double, 4>> match_bell_diagonal(const DensityMatrix& rho,
                                                         double tol = 1e-9) {
    if (rho.dims != std::vector<int>{2, 2}) return std::nullopt;
    const auto basis = bell_basis();
    std::array<double, 4> lambda{};
    Matrix recon = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        lambda[i] = (basis[i].adjoint() * rho.matrix * basis[i]).value().real();
        recon += lambda[i] * (basis[i] * basis[i].adjoint());
    }
    if ((rho.matrix - recon).norm() > tol) return std::nullopt;
    return lambda;
}

XStateSpec xstate_spec_from(const DensityMatrix& rho) {
    const long n = rho.total_dim();
    XStateSpec spec;
    spec.dims = rho.dims;
    spec.diagonal = rho.matrix.diagonal().real();
    spec.antidiagonal = Vector(n / 2);
    for (long i = 0; i < n / 2; ++i) spec.antidiagonal(i) = rho.matrix(i, n - 1 - i);
    return spec;
}

std::optional<SymmetricMixedState> match_symmetric_sector(const DensityMatrix& rho,
                                                          double tol = 1e-8) {
    const int n = rho.num_parties();
    if (!qdh::detail::all_qubits(rho.dims) || n > 14) return std::nullopt;
    // Dicke vectors in the full space
    std::vector<Vector> dicke(n + 1);
    for (int m = 0; m <= n; ++m) dicke[m] = expand_to_full(dicke_state(n, m)).amplitudes;
    Matrix coeff(n + 1, n + 1);
    Matrix recon = Matrix::Zero(rho.total_dim(), rho.total_dim());
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            coeff(a, b) = (dicke[a].adjoint() * rho.matrix * dicke[b]).value();
            recon += coeff(a, b) * (dicke[a] * dicke[b].adjoint());
        }
    if ((rho.matrix - recon).norm() > tol) return std::nullopt;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (coeff + coeff.adjoint()));
    std::vector<int> kept;
    for (int k = 0; k <= n; ++k)
        if (es.eigenvalues()(k) > 1e-13) kept.push_back(k);
    RealVector evals(kept.size());
    Matrix evecs(n + 1, kept.size());
    for (size_t j = 0; j < kept.size(); ++j) {
        evals(static_cast<Eigen::Index>(j)) = es.eigenvalues()(kept[j]);
        evecs.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(kept[j]);
    }
    evals /= evals.sum();
    return symmetric_mixed_state(n, std::move(evals), std::move(evecs));
}

int total_qubits(const std::vector<int>& dims) {
    for (int d : dims)
        if (d != 2) return -1;
    return static_cast<int>(dims.size());
}

std::string pick_auto_method(const std::optional<StateVariant>& state) {
    if (!state) throw DomainError("discord: method 'auto' needs --state");
    if (std::holds_alternative<PureState>(*state)) {
        const auto& psi = std::get<PureState>(*state);
        if (psi.num_parties() == 2) return "pure-bipartite";
        try {
            symmetric_from_full(psi);
            return "symmetric";
        } catch (const std::exception&) {}
        if (total_qubits(psi.dims) > 0) return "optimize";
        throw UnsupportedError("discord: no evaluator applies to a multilevel state with " +
                               std::to_string(psi.num_parties()) + " parties");
    }
    const auto& rho = std::get<DensityMatrix>(*state);
    if (match_werner(rho)) return "werner";
    if (match_bell_diagonal(rho)) return "bell-diagonal";
    if (rho.num_parties() == 2 && rho.total_dim() % 2 == 0 && is_x_form(rho.matrix))
        return "xstate";
    if (match_symmetric_sector(rho)) return "symmetric";
    if (total_qubits(rho.dims) > 0) return "optimize";
    throw UnsupportedError("discord: no evaluator applies to this state");
}

int run_discord(const DiscordCmdOptions& o) {
    std::optional<StateVariant> state;
    if (!o.state_path.empty()) state = load_state_file(o.state_path);

    std::string method = o.method;
    const bool auto_mode = method == "auto";
    if (auto_mode && !state && o.werner_r >= 0.0) method = "werner";
    else if (auto_mode && !state && o.bell_lambdas.size() == 4) method = "bell-diagonal";
    else if (auto_mode) method = pick_auto_method(state);

    json out;
    out["value"] = nullptr;
    out["method"] = method;
    json diagnostics;

    auto require_state = [&]() -> const StateVariant& {
        if (!state) throw DomainError("discord: method '" + method + "' needs --state");
        return *state;
    };
    auto as_pure = [&]() -> const PureState& {
        const auto& s = require_state();
        if (!std::holds_alternative<PureState>(s))
            throw DomainError("discord: method '" + method + "' needs a pure state file");
        return std::get<PureState>(s);
    };
    auto as_density = [&]() -> DensityMatrix {
        const auto& s = require_state();
        if (std::holds_alternative<DensityMatrix>(s)) return std::get<DensityMatrix>(s);
        return to_density(std::get<PureState>(s));
    };

    double value = 0.0;
    std::vector<int> state_dims;

    if (method == "pure-bipartite") {
        const PureState& psi = as_pure();
        state_dims = psi.dims;
        auto res = dh_pure_bipartite(psi);
        value = res.value;
        out["basis"] = basis_json(res.sigma.basis);
        out["probabilities"] = probs_json(res.sigma.probabilities);
        json coeffs = json::array();
        for (Eigen::Index i = 0; i < res.schmidt.coefficients.size(); ++i)
            coeffs.push_back(round_sig(res.schmidt.coefficients(i)));
        diagnostics["schmidt_coefficients"] = std::move(coeffs);
    } else if (method == "werner") {
        double r = o.werner_r;
        if (state) {
            if (r >= 0.0) throw DomainError("discord: give either --r or --state, not both");
            auto matched = match_werner(as_density());
            if (!matched) throw DomainError("discord: state file is not a Werner state");
            r = *matched;
        }
        if (r < 0.0) throw DomainError("discord: method 'werner' needs --r or a Werner state file");
        value = dh_werner_2qubit(r);
        state_dims = {2, 2};
        diagnostics["r"] = round_sig(r);
        const DensityMatrix rho = werner_2qubit_state(r);
        ProductBasis comp = product_basis_from_angles({{0.0, 0.0}, {0.0, 0.0}});
        out["basis"] = basis_json(comp);
        out["probabilities"] = probs_json(optimal_probs_mixed(rho, comp));
        state = StateVariant(rho);
    } else if (method == "bell-diagonal") {
        BellDiagonalSpec spec;
        if (o.bell_lambdas.size() == 4) {
            std::copy(o.bell_lambdas.begin(), o.bell_lambdas.end(), spec.lambda.begin());
            state = StateVariant(bell_diagonal_state(spec.lambda));
        } else {
            auto matched = match_bell_diagonal(as_density());
            if (!matched) throw DomainError("discord: state file is not Bell-diagonal");
            spec.lambda = *matched;
        }
        state_dims = {2, 2};
        auto res = dh_bell_diagonal(spec);
        value = res.value;
        out["basis"] = basis_json(res.sigma.basis);
        out["probabilities"] = probs_json(res.sigma.probabilities);
        diagnostics["branch"] = res.branch;
    } else if (method == "xstate") {
        const DensityMatrix rho = as_density();
        state_dims = rho.dims;
        if (rho.num_parties() != 2 || rho.total_dim() % 2 != 0 || !is_x_form(rho.matrix))
            throw DomainError("discord: state is not X-form in the computational basis");
        auto res = dh_xstate(xstate_spec_from(rho));
        value = res.value;
        out["basis"] = basis_json(computational_basis(rho.dims));
        out["probabilities"] = probs_json(res.sigma.probabilities);
        diagnostics["min_random_basis_value"] = round_sig(res.min_random_basis_value);
        diagnostics["declared_basis_optimal"] = res.declared_basis_optimal;
    } else if (method == "symmetric") {
        const auto& s = require_state();
        SymmetricResult res;
        int n = 0;
        if (std::holds_alternative<PureState>(s)) {
            const auto sym = symmetric_from_full(std::get<PureState>(s));
            n = sym.num_qubits;
            res = dh_symmetric(sym, o.sym);
        } else {
            auto sym = match_symmetric_sector(std::get<DensityMatrix>(s));
            if (!sym)
                throw DomainError("discord: density matrix is not supported on the symmetric "
                                  "(Dicke) sector; use --method optimize");
            n = sym->num_qubits;
            res = dh_symmetric(*sym, o.sym);
        }
        state_dims = std::vector<int>(n, 2);
        value = res.value;
        out["basis"] = json{{"type", "symmetric"},
                            {"theta", round_sig(res.sigma.theta)},
                            {"phi", round_sig(res.sigma.phi)}};
        out["probabilities"] = symmetric_sigma_json(res.sigma, n);
        diagnostics["restarts"] = res.restarts_used;
        diagnostics["refine_iterations"] = res.refine_iterations;
    } else if (method == "optimize") {
        const auto& s = require_state();
        DiscordResult res = std::holds_alternative<PureState>(s)
                                ? dh_optimize(std::get<PureState>(s), o.opt)
                                : dh_optimize(std::get<DensityMatrix>(s), o.opt);
        state_dims = std::holds_alternative<PureState>(s) ? std::get<PureState>(s).dims
                                                          : std::get<DensityMatrix>(s).dims;
        value = res.value;
        out["basis"] = basis_json(res.basis);
        out["probabilities"] = probs_json(res.probabilities);
        diagnostics["restarts"] = res.diagnostics.restarts_used;
        diagnostics["best_grid_cell"] = res.diagnostics.best_grid_cell;
        diagnostics["refine_iterations"] = res.diagnostics.refine_iterations;
        diagnostics["grid"] = {res.diagnostics.grid_theta, res.diagnostics.grid_phi};
    } else if (method == "bruteforce") {
        const auto& s = require_state();
        value = std::holds_alternative<PureState>(s)
                    ? dh_bruteforce(std::get<PureState>(s), o.grid_n, o.opt.workers)
                    : dh_bruteforce(std::get<DensityMatrix>(s), o.grid_n, o.opt.workers);
        state_dims = std::holds_alternative<PureState>(s) ? std::get<PureState>(s).dims
                                                          : std::get<DensityMatrix>(s).dims;
        out["basis"] = nullptr;
        out["probabilities"] = nullptr;
        diagnostics["grid_n"] = o.grid_n;
    } else {
        throw DomainError("discord: unknown method '" + method + "'");
    }

    out["value"] = round_sig(value);
    out["diagnostics"] = std::move(diagnostics);

    // auto mode double-checks small instances against the general optimizer
    if (auto_mode && state && method != "optimize") {
        const int nq = total_qubits(state_dims);
        if (nq > 0 && nq <= 3) {
            const auto& s = *state;
            DiscordResult res = std::holds_alternative<PureState>(s)
                                    ? dh_optimize(std::get<PureState>(s), o.opt)
                                    : dh_optimize(std::get<DensityMatrix>(s), o.opt);
            const double delta = std::abs(res.value - value);
            out["cross_check"] = {{"method", "optimize"},
                                  {"value", round_sig(res.value)},
                                  {"delta", round_sig(delta)}};
            if (delta > 1e-4)
                out["warning"] = "cross-check against the optimizer deviates by " +
                                 format_number(delta);
        }
    }

    const std::string text = out.dump(2) + "\n";
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out_path);
        if (!f) throw std::runtime_error("cannot write " + o.out_path);
        f << text;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify subcommand
// ---------------------------------------------------------------------------

PureState random_bipartite_pure(std::mt19937_64& rng, int da, int db) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(static_cast<long>(da) * db);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v /= v.norm();
    return pure_state(std::move(v), {da, db});
}

// Random X state from the paired-diagonal family (a Bell-diagonal state
// dressed with random local phases); its optimal chart value is the
// branch-max closed form of the underlying spectrum.
struct DressedXState {
    XStateSpec spec;
    std::array<double, 4> spectrum;
};

DressedXState random_paired_xstate(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::array<double, 4> lambda{};
    double sum = 0.0;
    for (auto& l : lambda) {
        l = -std::log(1.0 - uni(rng));
        sum += l;
    }
    for (auto& l : lambda) l /= sum;
    RealVector diag(4);
    diag << (lambda[0] + lambda[1]) / 2, (lambda[2] + lambda[3]) / 2,
        (lambda[2] + lambda[3]) / 2, (lambda[0] + lambda[1]) / 2;
    Vector anti(2);
    const double alpha = 2 * std::numbers::pi * uni(rng), beta = 2 * std::numbers::pi * uni(rng);
    anti << (lambda[0] - lambda[1]) / 2 * std::polar(1.0, alpha),
        (lambda[2] - lambda[3]) / 2 * std::polar(1.0, beta);
    return {{{2, 2}, std::move(diag), std::move(anti)}, lambda};
}

struct SuiteReport {
    std::string name;
    double max_dev = 0.0;
    double threshold = 1e-4;
};

SuiteReport verify_conjecture1(unsigned long long seed, int trials, int workers) {
    std::mt19937_64 rng(seed);
    OptimizerConfig cfg;
    cfg.workers = workers;
    double max_dev = 0.0;
    for (int t = 0; t < trials; ++t) {
        const PureState psi = random_bipartite_pure(rng, 2, 2);
        const double closed = dh_pure_bipartite(psi).value;
        const double opt = dh_optimize(psi, cfg).value;
        max_dev = std::max(max_dev, std::abs(closed - opt));
    }
    return {"conjecture1", max_dev, 1e-4};
}

SuiteReport verify_conjecture2(unsigned long long seed, int trials, int workers) {
    // the X-chart statement is tested on its demonstrated domain, the
    // paired-diagonal (Bell-diagonal up to local phases) family; outside it
    // the declared chart can be strictly suboptimal, which dh_xstate reports
    // through its declared_basis_optimal probe
    std::mt19937_64 rng(seed);
    OptimizerConfig cfg;
    cfg.workers = workers;
    double max_dev = 0.0;
    for (int t = 0; t < trials; ++t) {
        const DressedXState dressed = random_paired_xstate(rng);
        const double closed = dh_bell_diagonal({dressed.spectrum}).value;
        const DensityMatrix rho = density_matrix(xstate_matrix(dressed.spec), {2, 2});
        const double opt = dh_optimize(rho, cfg).value;
        max_dev = std::max(max_dev, std::abs(closed - opt));
        // the declared-chart evaluation can never undercut the optimum
        max_dev = std::max(max_dev, opt - dh_xstate(dressed.spec).value);
    }
    return {"conjecture2", max_dev, 1e-4};
}

SuiteReport verify_conjecture3(unsigned long long, int, int workers) {
    OptimizerConfig cfg;
    cfg.workers = workers;
    SymmetricScanConfig sym;
    sym.workers = workers;
    double max_dev = 0.0;
    const std::vector<SymmetricPureState> states = {
        symmetric_from_full(ghz_state(3)), dicke_state(3, 1), dicke_state(4, 2)};
    for (const auto& s : states) {
        const double sym_val = dh_symmetric(s, sym).value;
        const double gen_val = dh_optimize(expand_to_full(s), cfg).value;
        max_dev = std::max(max_dev, std::abs(sym_val - gen_val));
    }
    return {"conjecture3", max_dev, 1e-4};
}

SuiteReport verify_multilevel(unsigned long long, int trials, int) {
    const int points = std::max(trials / 5, 5);
    double max_dev = 0.0;
    for (int m : {2, 3}) {
        const ProductBasis comp = computational_basis({m, m});
        for (int i = 0; i < points; ++i) {
            const double frac = (i + 0.5) / points;
            const double xw = -1.0 + 2.0 * frac;
            max_dev = std::max(max_dev, std::abs(dh_werner_mlevel(m, xw) -
                                                 dh_fixed_basis(werner_mlevel_state(m, xw), comp)));
            const double xi = frac;
            max_dev = std::max(max_dev, std::abs(dh_isotropic_mlevel(m, xi) -
                                                 dh_fixed_basis(isotropic_mlevel_state(m, xi), comp)));
        }
    }
    return {"multilevel", max_dev, 1e-4};
}

int run_verify(const std::string& suite, unsigned long long seed, int trials, int workers) {
    std::vector<SuiteReport> reports;
    if (suite == "conjecture1" || suite == "all")
        reports.push_back(verify_conjecture1(seed, trials, workers));
    if (suite == "conjecture2" || suite == "all")
        reports.push_back(verify_conjecture2(seed, trials, workers));
    if (suite == "conjecture3" || suite == "all")
        reports.push_back(verify_conjecture3(seed, trials, workers));
    if (suite == "multilevel" || suite == "all")
        reports.push_back(verify_multilevel(seed, trials, workers));
    if (reports.empty()) {
        std::cerr << "verify: unknown suite '" << suite
                  << "' (conjecture1|conjecture2|conjecture3|multilevel|all)\n";
        return 2;
    }
    bool ok = true;
    for (const auto& r : reports) {
        const bool pass = r.max_dev <= r.threshold;
        ok = ok && pass;
        std::printf("suite %-12s max deviation %.3e (threshold %.0e) [%s]\n", r.name.c_str(),
                    r.max_dev, r.threshold, pass ? "PASS" : "FAIL");
    }
    return ok ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"Hellinger geometric quantum discord toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file");
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config, "echo the resolved configuration to stderr");

    // discord
    DiscordCmdOptions d;
    auto* discord = app.add_subcommand("discord", "compute D^H of a state");
    discord->add_option("--state", d.state_path, "state JSON file (dims + amplitudes|matrix)");
    discord->add_option("--method", d.method,
                        "auto|optimize|bruteforce|pure-bipartite|werner|bell-diagonal|xstate|symmetric")
        ->default_val("auto");
    discord->add_option("--r", d.werner_r, "Werner mixing parameter in [0,1]");
    discord->add_option("--lambdas", d.bell_lambdas, "Bell-diagonal spectrum (4 values)")
        ->expected(4);
    discord->add_option("--grid-n", d.grid_n, "brute-force grid points per angle axis")
        ->default_val(9);
    discord->add_option("--grid-theta", d.opt.grid_theta, "optimizer theta grid per party (0=auto)");
    discord->add_option("--grid-phi", d.opt.grid_phi, "optimizer phi grid per party (0=auto)");
    discord->add_option("--restarts", d.opt.refine_starts, "refinement starts")->default_val(8);
    discord->add_option("--tol", d.opt.tol, "affinity convergence tolerance")->default_val(1e-9);
    discord->add_option("--workers", d.opt.workers, "worker threads (0 = DISCORD_WORKERS/auto)");
    discord->add_option("--seed", d.opt.seed, "refinement jitter seed")->default_val(0);
    discord->add_option("--out", d.out_path, "write JSON here instead of stdout");

    // scan
    ScanSpec spec;
    std::string model_name = "lmg-iso", out_path;
    SymmetricScanConfig scan_cfg;
    int scan_workers = 0;
    unsigned long long scan_seed = 0;
    auto* scan = app.add_subcommand("scan", "D^H along a model parameter sweep (CSV)");
    scan->add_option("--model", model_name, "lmg-iso|lmg-aniso|uniaxial|dicke")->required();
    scan->add_option("--sweep", spec.sweep, "swept parameter name")->required();
    scan->add_option("--start", spec.start, "sweep start")->required();
    scan->add_option("--stop", spec.stop, "sweep stop")->required();
    scan->add_option("--points", spec.points, "grid points")->required();
    scan->add_option("--N", spec.params.num_spins, "spin/atom count")->default_val(20);
    scan->add_option("--lambda", spec.params.lambda, "coupling");
    scan->add_option("--gamma", spec.params.gamma, "LMG anisotropy in [0,1]");
    scan->add_option("--hz", spec.params.h_z, "z field");
    scan->add_option("--hx", spec.params.h_x, "x field");
    scan->add_option("--omega", spec.params.omega, "field frequency");
    scan->add_option("--omega0", spec.params.omega0, "atomic splitting");
    scan->add_option("--cutoff", spec.params.fock_cutoff, "Fock truncation (0 = auto)");
    scan->add_option("--theta-points", scan_cfg.theta_points, "ansatz theta scan points")
        ->default_val(181);
    scan->add_option("--phi-points", scan_cfg.phi_points, "ansatz phi scan points")->default_val(90);
    scan->add_option("--workers", scan_workers, "row workers (0 = DISCORD_WORKERS/auto)");
    scan->add_option("--seed", scan_seed, "reserved for reproducibility bookkeeping");
    scan->add_option("--out", out_path, "CSV output path (default stdout)");

    // verify
    std::string suite = "all";
    unsigned long long verify_seed = 1;
    int trials = 50, verify_workers = 0;
    auto* verify = app.add_subcommand("verify", "randomized evaluator cross-checks");
    verify->add_option("--suite", suite, "conjecture1|conjecture2|conjecture3|multilevel|all")
        ->default_val("all");
    verify->add_option("--seed", verify_seed, "RNG seed")->default_val(1);
    verify->add_option("--trials", trials, "random trials per suite")->default_val(50);
    verify->add_option("--workers", verify_workers, "worker threads");

    CLI11_PARSE(app, argc, argv);
    if (dump_config) std::cerr << app.config_to_str(true, false);

    try {
        if (discord->parsed()) return run_discord(d);
        if (scan->parsed()) {
            if (model_name == "lmg-iso") spec.model = ScanModel::LmgIso;
            else if (model_name == "lmg-aniso") spec.model = ScanModel::LmgAniso;
            else if (model_name == "uniaxial") spec.model = ScanModel::Uniaxial;
            else if (model_name == "dicke") spec.model = ScanModel::Dicke;
            else throw DomainError("scan: unknown model '" + model_name + "'");
            const auto rows = run_scan(spec, scan_cfg, scan_workers);
            const std::string csv = scan_to_csv(rows);
            if (out_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot write " + out_path);
                f << csv;
            }
            bool any_ok = false;
            for (const auto& r : rows) any_ok |= r.ok;
            return any_ok ? 0 : 1;
        }
        if (verify->parsed()) return run_verify(suite, verify_seed, trials, verify_workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
