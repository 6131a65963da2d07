#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qui/bounds.hpp"
#include "qui/exchange_exact.hpp"
#include "qui/pure_state.hpp"
#include "qui/subspace.hpp"

namespace qui {

/// Files whose norm is off by more than this are rejected; smaller drift is renormalised.
inline constexpr double kFileNormTolerance = 1e-6;

// State files: {"systems": [{"label", "dim"}...], "amplitudes": [{"index": [...], "re", "im"}...]}.
// An index may also be an object keyed by label. Omitted amplitudes are zero.
PureState state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const PureState& psi);
PureState load_state(const std::filesystem::path& path);
void save_state(const PureState& psi, const std::filesystem::path& path);

// Cert files: {"subspace_indices": [...]} or {"basis": matrix}, optional "V", "W";
// matrices are row lists of [re, im] pairs. `d` is the local dimension of A.
CommonSubspaceCert cert_from_json(const nlohmann::json& j, std::size_t d);
nlohmann::json cert_to_json(const CommonSubspaceCert& cert);
CommonSubspaceCert load_cert(const std::filesystem::path& path, std::size_t d);
void save_cert(const CommonSubspaceCert& cert, const std::filesystem::path& path);

// Decomposition files: {"rates": [r1, r2, r3, r4], "phi_l": <state>, "phi_b", "phi_r", "phi_c"}.
DecompositionSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const DecompositionSpec& spec);
DecompositionSpec load_spec(const std::filesystem::path& path);
void save_spec(const DecompositionSpec& spec, const std::filesystem::path& path);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const BoundReport& report);
nlohmann::json ledger_to_json(const EbitLedger& ledger);

} // namespace qui
