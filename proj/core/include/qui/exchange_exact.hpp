#pragma once

#include <string>
#include <vector>

#include "qui/pure_state.hpp"
#include "qui/subspace.hpp"

namespace qui {

/// The ancillas must factor back out as |0>|0> to this accuracy.
inline constexpr double kAncillaFactorTolerance = 1e-10;
/// Accepted trace distance between the protocol output and the exchanged state.
inline constexpr double kExchangeTolerance = 1e-9;

enum class Mechanism { TeleportQudit, None };

std::string_view to_string(Mechanism m) noexcept;

struct LedgerEntry {
    std::string step;
    double ebits = 0.0; // log2(teleport_dim), real valued
    Mechanism mechanism = Mechanism::None;
    std::size_t teleport_dim = 1;
    unsigned integer_ebits = 0;  // ceil(log2(teleport_dim))
    unsigned classical_bits = 0; // 2 * integer_ebits, informational
};

class EbitLedger {
public:
    void add(LedgerEntry entry);
    /// Convenience: one qudit teleport of dimension `dim` (dim 1 is logged as Mechanism::None).
    void add_teleport(std::string step, std::size_t dim);

    const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }
    double total() const noexcept;
    unsigned integer_total() const noexcept;
    unsigned classical_total() const noexcept;

private:
    std::vector<LedgerEntry> entries_;
};

/// 2 log2 d: plain two-way qudit teleportation. DomainError for d < 2.
double naive_swap_cost(std::size_t d);

/// Support dimension of a stretched register: d - d_C + 1 (d when d_C = 0, 1 when d_C = d).
std::size_t effective_teleport_dim(std::size_t d, std::size_t d_C);

struct SseOutcome {
    PureState final_state; // same layout as the input
    EbitLedger ledger;
    double distance = 0.0; // trace distance to exchange_final_state(psi)
};

/// Runs the subspace-exchange protocol on the state vector. NotCommon for an
/// unverified certificate, ProtocolError if the ancillas do not factor or the output
/// misses the exchanged state.
SseOutcome run_exact_sse(const PureState& psi, const CommonSubspaceCert& cert);

/// naive_swap_cost(d) - ledger total.
double savings(const PureState& psi, const CommonSubspaceCert& cert);

} // namespace qui
