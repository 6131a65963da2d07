#include "qui/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qui/errors.hpp"

namespace qui {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(ErrorCode::ParseError, "cannot write '" + path.string() + "'");
    }
    out << j.dump(2) << '\n';
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        raise(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) {
        raise(ErrorCode::ParseError, std::string(what) + " must be a number");
    }
    return j.get<double>();
}

std::size_t natural(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        raise(ErrorCode::ParseError, std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::vector<std::size_t> parse_index(const json& j, const SubsystemLayout& layout) {
    std::vector<std::size_t> multi(layout.size(), 0);
    if (j.is_array()) {
        if (j.size() != layout.size()) {
            raise(ErrorCode::ParseError, "amplitude index has " + std::to_string(j.size()) + " entries, expected " +
                                             std::to_string(layout.size()));
        }
        for (std::size_t k = 0; k < multi.size(); ++k) {
            multi[k] = natural(j[k], "index entry");
        }
    } else if (j.is_object()) {
        if (j.size() != layout.size()) {
            raise(ErrorCode::ParseError, "amplitude index must name every subsystem");
        }
        for (const auto& [label, value] : j.items()) {
            if (!layout.contains(label)) {
                raise(ErrorCode::ParseError, "amplitude index refers to unknown subsystem '" + label + "'");
            }
            multi[layout.position(label)] = natural(value, "index entry");
        }
    } else {
        raise(ErrorCode::ParseError, "amplitude index must be an array or object");
    }
    for (std::size_t k = 0; k < multi.size(); ++k) {
        if (multi[k] >= layout.entries()[k].dim) {
            raise(ErrorCode::ParseError, "index " + std::to_string(multi[k]) + " out of range for '" +
                                             layout.entries()[k].label + "'");
        }
    }
    return multi;
}

} // namespace

PureState state_from_json(const json& j) {
    const json& systems = field(j, "systems");
    if (!systems.is_array() || systems.empty()) {
        raise(ErrorCode::ParseError, "'systems' must be a non-empty array");
    }
    std::vector<Subsystem> subs;
    for (const auto& s : systems) {
        const json& label = field(s, "label");
        if (!label.is_string()) {
            raise(ErrorCode::ParseError, "subsystem label must be a string");
        }
        subs.push_back({label.get<std::string>(), natural(field(s, "dim"), "dim")});
    }
    const SubsystemLayout layout(std::move(subs));

    const json& amps = field(j, "amplitudes");
    if (!amps.is_array()) {
        raise(ErrorCode::ParseError, "'amplitudes' must be an array");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    std::set<std::size_t> seen;
    for (const auto& a : amps) {
        const auto flat = layout.ravel(parse_index(field(a, "index"), layout));
        if (!seen.insert(flat).second) {
            raise(ErrorCode::ParseError, "duplicate amplitude index");
        }
        const double re = a.contains("re") ? number(a.at("re"), "re") : 0.0;
        const double im = a.contains("im") ? number(a.at("im"), "im") : 0.0;
        v[static_cast<Eigen::Index>(flat)] = Complex(re, im);
    }
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > kFileNormTolerance) {
        raise(ErrorCode::NormalizationError, "state norm is " + residual_text(norm));
    }
    return PureState(layout, v / norm);
}

json state_to_json(const PureState& psi) {
    json systems = json::array();
    for (const auto& s : psi.layout().entries()) {
        systems.push_back({{"label", s.label}, {"dim", s.dim}});
    }
    json amps = json::array();
    const auto& v = psi.amplitudes();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] == Complex(0.0, 0.0)) {
            continue;
        }
        amps.push_back({{"index", psi.layout().unravel(static_cast<std::size_t>(i))},
                        {"re", v[i].real()},
                        {"im", v[i].imag()}});
    }
    return {{"systems", systems}, {"amplitudes", amps}};
}

PureState load_state(const std::filesystem::path& path) {
    try {
        return state_from_json(read_json(path));
    } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void save_state(const PureState& psi, const std::filesystem::path& path) { write_json(state_to_json(psi), path); }

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        raise(ErrorCode::ParseError, "matrix must be a non-empty list of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            raise(ErrorCode::ParseError, "ragged matrix");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = Complex(number(e[0], "re"), number(e[1], "im"));
            } else {
                raise(ErrorCode::ParseError, "matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

CommonSubspaceCert cert_from_json(const json& j, std::size_t d) {
    if (!j.is_object()) {
        raise(ErrorCode::ParseError, "certificate must be an object");
    }
    const CMatrix v = j.contains("V") ? matrix_from_json(j.at("V")) : CMatrix{};
    const CMatrix w = j.contains("W") ? matrix_from_json(j.at("W")) : CMatrix{};
    if (j.contains("subspace_indices")) {
        const json& idx = j.at("subspace_indices");
        if (!idx.is_array()) {
            raise(ErrorCode::ParseError, "'subspace_indices' must be an array");
        }
        std::vector<std::size_t> indices;
        for (const auto& i : idx) {
            indices.push_back(natural(i, "subspace index"));
        }
        if (indices.empty()) {
            return CommonSubspaceCert::none(d);
        }
        return CommonSubspaceCert::from_indices(d, std::move(indices), v, w);
    }
    if (j.contains("basis")) {
        CMatrix basis = matrix_from_json(j.at("basis"));
        if (static_cast<std::size_t>(basis.rows()) != d) {
            raise(ErrorCode::DimMismatch, "basis rows do not match the local dimension");
        }
        return CommonSubspaceCert::from_basis(std::move(basis), v, w);
    }
    raise(ErrorCode::ParseError, "certificate needs 'subspace_indices' or 'basis'");
}

json cert_to_json(const CommonSubspaceCert& cert) {
    json j;
    if (cert.basis_subset) {
        j["subspace_indices"] = cert.indices;
    } else {
        j["basis"] = matrix_to_json(cert.basis);
    }
    if (!cert.V.isIdentity(0.0)) {
        j["V"] = matrix_to_json(cert.V);
    }
    if (!cert.W.isIdentity(0.0)) {
        j["W"] = matrix_to_json(cert.W);
    }
    if (std::isfinite(cert.residual_decomposition)) {
        j["residuals"] = {{"decomposition", cert.residual_decomposition}, {"symmetry", cert.residual_symmetry}};
        j["verified"] = cert.verified;
    }
    return j;
}

CommonSubspaceCert load_cert(const std::filesystem::path& path, std::size_t d) {
    try {
        return cert_from_json(read_json(path), d);
    } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void save_cert(const CommonSubspaceCert& cert, const std::filesystem::path& path) {
    write_json(cert_to_json(cert), path);
}

DecompositionSpec spec_from_json(const json& j) {
    const json& rates = field(j, "rates");
    if (!rates.is_array() || rates.size() != 4) {
        raise(ErrorCode::ParseError, "'rates' must hold four numbers");
    }
    std::array<double, 4> r{};
    for (std::size_t k = 0; k < 4; ++k) {
        r[k] = number(rates[k], "rate");
    }
    return DecompositionSpec(r, state_from_json(field(j, "phi_l")), state_from_json(field(j, "phi_b")),
                             state_from_json(field(j, "phi_r")), state_from_json(field(j, "phi_c")));
}

json spec_to_json(const DecompositionSpec& spec) {
    return {{"rates", spec.rates},
            {"phi_l", state_to_json(spec.phi_l)},
            {"phi_b", state_to_json(spec.phi_b)},
            {"phi_r", state_to_json(spec.phi_r)},
            {"phi_c", state_to_json(spec.phi_c)}};
}

DecompositionSpec load_spec(const std::filesystem::path& path) {
    try {
        return spec_from_json(read_json(path));
    } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void save_spec(const DecompositionSpec& spec, const std::filesystem::path& path) {
    write_json(spec_to_json(spec), path);
}

json report_to_json(const BoundReport& report) {
    json j{{"l1", report.l1}, {"l2_found", report.l2_found}, {"u1", report.u1}, {"chain_ok", report.chain_ok}};
    j["l_new"] = report.l_new ? json(*report.l_new) : json(nullptr);
    j["u_new"] = report.u_new ? json(*report.u_new) : json(nullptr);
    j["provenance"] = report.provenance;
    return j;
}

json ledger_to_json(const EbitLedger& ledger) {
    json entries = json::array();
    for (const auto& e : ledger.entries()) {
        entries.push_back({{"step", e.step},
                           {"ebits", e.ebits},
                           {"mechanism", std::string(to_string(e.mechanism))},
                           {"teleport_dim", e.teleport_dim},
                           {"integer_ebits", e.integer_ebits},
                           {"classical_bits", e.classical_bits}});
    }
    return {{"entries", entries},
            {"total", ledger.total()},
            {"integer_total", ledger.integer_total()},
            {"classical_total", ledger.classical_total()}};
}

} // namespace qui
