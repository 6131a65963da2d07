#include "qui/exchange_exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qui/errors.hpp"
#include "qui/linalg.hpp"
#include "qui/qstate.hpp"

namespace qui {

namespace {

unsigned ceil_log2(std::size_t n) {
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < n) {
        ++bits;
    }
    return bits;
}

} // namespace

std::string_view to_string(Mechanism m) noexcept {
    return m == Mechanism::TeleportQudit ? "teleport_qudit" : "none";
}

void EbitLedger::add(LedgerEntry entry) {
    if (!(entry.ebits >= 0.0)) {
        raise(ErrorCode::DomainError, "ledger entries cannot gain entanglement");
    }
    entries_.push_back(std::move(entry));
}

void EbitLedger::add_teleport(std::string step, std::size_t dim) {
    if (dim == 0) {
        raise(ErrorCode::DomainError, "teleport dimension must be positive");
    }
    LedgerEntry e;
    e.step = std::move(step);
    e.teleport_dim = dim;
    e.mechanism = dim > 1 ? Mechanism::TeleportQudit : Mechanism::None;
    e.ebits = std::log2(static_cast<double>(dim));
    e.integer_ebits = ceil_log2(dim);
    e.classical_bits = 2 * e.integer_ebits;
    add(std::move(e));
}

double EbitLedger::total() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0.0,
                           [](double s, const LedgerEntry& e) { return s + e.ebits; });
}

unsigned EbitLedger::integer_total() const noexcept {
    unsigned s = 0;
    for (const auto& e : entries_) {
        s += e.integer_ebits;
    }
    return s;
}

unsigned EbitLedger::classical_total() const noexcept {
    unsigned s = 0;
    for (const auto& e : entries_) {
        s += e.classical_bits;
    }
    return s;
}

double naive_swap_cost(std::size_t d) {
    if (d < 2) {
        raise(ErrorCode::DomainError, "naive swap needs d >= 2, got " + std::to_string(d));
    }
    return 2.0 * std::log2(static_cast<double>(d));
}

std::size_t effective_teleport_dim(std::size_t d, std::size_t d_C) {
    if (d_C > d) {
        raise(ErrorCode::DomainError, "subspace dimension exceeds local dimension");
    }
    if (d_C == 0) {
        return d;
    }
    return d - d_C + 1;
}

SseOutcome run_exact_sse(const PureState& psi, const CommonSubspaceCert& cert) {
    const CommonSubspaceCert checked = verify_common(psi, cert);
    if (!checked.verified) {
        raise(ErrorCode::NotCommon, "subspace is not common (decomposition residual " +
                                        residual_text(checked.residual_decomposition) + ", symmetry residual " +
                                        residual_text(checked.residual_symmetry) + ")");
    }
    const std::size_t d = checked.dim();
    const std::size_t d_C = checked.subspace_dim();

    LabelSet order{kPartyA, kPartyB};
    for (const auto& l : psi.layout().complement({kPartyA, kPartyB})) {
        order.push_back(l);
    }
    PureState state = permute(psi, order);
    state = apply_local(state, {kPartyA}, checked.V);
    state = apply_local(state, {kPartyB}, checked.W);

    // (i)-(ii): canonicalise and stretch
    const CMatrix q = canonicalizer(checked);
    state = stretch_registers(state, {kPartyA, kPartyB}, {kAncillaA, kAncillaB}, q, d_C);

    // (iii): the ancillas travel by teleportation; modelled as an index swap
    SseOutcome out{psi, {}, 0.0};
    const std::size_t d_eff = effective_teleport_dim(d, d_C);
    out.ledger.add_teleport("teleport A' to Bob", d_eff);
    out.ledger.add_teleport("teleport B' to Alice", d_eff);
    state = exchange_final_state(state, kAncillaA, kAncillaB);

    // (iv): unstretch
    if (d_C < d) {
        const CMatrix u_dag = build_stretch_unitary(d, d_C).matrix().adjoint();
        state = apply_local(state, {kPartyA, kAncillaA}, u_dag);
        state = apply_local(state, {kPartyB, kAncillaB}, u_dag);
    }

    // (v): discard |0>|0> ancillas, undo the canonicaliser and the swapped common unitaries
    const CMatrix m = split_matrix(state, {kAncillaA, kAncillaB});
    const double leak = std::sqrt(std::max(0.0, m.squaredNorm() - m.row(0).squaredNorm()));
    if (leak > kAncillaFactorTolerance) {
        raise(ErrorCode::ProtocolError, "ancillas did not return to |0>|0> (leak " + residual_text(leak) + ")");
    }
    PureState reduced = PureState::fragment(
        state.layout().restricted(state.layout().complement({kAncillaA, kAncillaB})), m.row(0).transpose());
    if (!q.isIdentity(0.0)) {
        reduced = apply_local(reduced, {kPartyA}, q);
        reduced = apply_local(reduced, {kPartyB}, q);
    }
    reduced = apply_local(reduced, {kPartyA}, checked.W.adjoint());
    reduced = apply_local(reduced, {kPartyB}, checked.V.adjoint());
    reduced = permute(reduced, psi.layout().labels());

    out.final_state = PureState(psi.layout(), reduced.amplitudes());
    out.distance = trace_distance(out.final_state, exchange_final_state(psi, kPartyA, kPartyB));
    if (out.distance > kExchangeTolerance) {
        raise(ErrorCode::ProtocolError,
              "protocol output misses the exchanged state (trace distance " + residual_text(out.distance) + ")");
    }
    return out;
}

double savings(const PureState& psi, const CommonSubspaceCert& cert) {
    const SseOutcome r = run_exact_sse(psi, cert);
    return naive_swap_cost(psi.layout().dim(kPartyA)) - r.ledger.total();
}

} // namespace qui
