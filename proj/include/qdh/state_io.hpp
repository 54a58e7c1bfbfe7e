// state_io.hpp — JSON state files: `dims` plus either `amplitudes` or
// `matrix` as arrays of [re, im] pairs, row-major.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdh/errors.hpp"
#include "qdh/states.hpp"

namespace qdh {

using StateVariant = std::variant<PureState, DensityMatrix>;

namespace detail {

inline Complex parse_complex_entry(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DomainError(std::string("state file: each ") + what +
                          " entry must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

/// Parse a state from JSON text. Normalization failures beyond 1e-6
/// (norm for amplitudes, trace/Hermiticity/PSD for matrices) are rejected.
inline StateVariant parse_state_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("state file: invalid JSON: ") + e.what());
    }
    if (!j.contains("dims") || !j["dims"].is_array())
        throw DomainError("state file: missing integer list field 'dims'");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<long>() < 1)
            throw DomainError("state file: 'dims' entries must be positive integers");
        dims.push_back(d.get<int>());
    }
    if (dims.empty()) throw DomainError("state file: 'dims' must be nonempty");
    const long total = product_of(dims);

    const bool has_amp = j.contains("amplitudes"), has_mat = j.contains("matrix");
    if (has_amp == has_mat)
        throw DomainError("state file: provide exactly one of 'amplitudes' or 'matrix'");

    if (has_amp) {
        const auto& arr = j["amplitudes"];
        if (!arr.is_array() || static_cast<long>(arr.size()) != total)
            throw DomainError("state file: 'amplitudes' must have " + std::to_string(total) +
                              " entries");
        Vector v(total);
        for (long i = 0; i < total; ++i)
            v(i) = detail::parse_complex_entry(arr[static_cast<size_t>(i)], "amplitude");
        return pure_state(std::move(v), std::move(dims), 1e-6);
    }

    const auto& arr = j["matrix"];
    if (!arr.is_array() || static_cast<long>(arr.size()) != total * total)
        throw DomainError("state file: 'matrix' must have " + std::to_string(total * total) +
                          " row-major entries");
    Matrix m(total, total);
    for (long r = 0; r < total; ++r)
        for (long c = 0; c < total; ++c)
            m(r, c) = detail::parse_complex_entry(arr[static_cast<size_t>(r * total + c)], "matrix");
    DensityMatrix rho = density_matrix(std::move(m), std::move(dims), 1e-6, 1e-6, 1e-6);
    // project round-off within the file tolerance onto an exactly valid state,
    // mirroring the renormalization of parsed amplitudes
    HermitianEig eig = hermitian_eig(rho.matrix);
    RealVector clamped = eig.eigenvalues.array().max(0.0);
    clamped /= clamped.sum();
    rho.matrix = eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.adjoint();
    rho.matrix = 0.5 * (rho.matrix + rho.matrix.adjoint()).eval();
    return rho;
}

inline StateVariant load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_state_json(ss.str());
}

inline nlohmann::json state_to_json(const PureState& psi) {
    nlohmann::json j;
    j["dims"] = psi.dims;
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
        amps.push_back({psi.amplitudes(i).real(), psi.amplitudes(i).imag()});
    j["amplitudes"] = std::move(amps);
    return j;
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
    nlohmann::json j;
    j["dims"] = rho.dims;
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c)
            entries.push_back({rho.matrix(r, c).real(), rho.matrix(r, c).imag()});
    j["matrix"] = std::move(entries);
    return j;
}

inline void save_state_file(const std::string& path, const StateVariant& state) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write state file: " + path);
    std::visit([&](const auto& s) { out << state_to_json(s).dump(2) << '\n'; }, state);
}

}  // namespace qdh
