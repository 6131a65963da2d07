#include <cmath>

#include <gtest/gtest.h>

#include "error_code.hpp"
#include "qui/bounds.hpp"
#include "qui/exchange_exact.hpp"
#include "qui/linalg.hpp"
#include "qui/qstate.hpp"
#include "random_states.hpp"

using namespace qui;
using qui::test::code_of;

TEST(NaiveSwap, Costs) {
    EXPECT_NEAR(naive_swap_cost(6), 5.16993, 1e-5);
    EXPECT_DOUBLE_EQ(naive_swap_cost(2), 2.0);
    EXPECT_DOUBLE_EQ(naive_swap_cost(4), 4.0);
    EXPECT_EQ(code_of([] { naive_swap_cost(1); }), ErrorCode::DomainError);
}

TEST(EffectiveDim, Rules) {
    EXPECT_EQ(effective_teleport_dim(6, 3), 4u);
    EXPECT_EQ(effective_teleport_dim(6, 0), 6u);
    EXPECT_EQ(effective_teleport_dim(6, 6), 1u);
    EXPECT_EQ(effective_teleport_dim(5, 2), 4u);
    for (std::size_t d = 2; d < 9; ++d) {
        for (std::size_t dc = 1; dc + 1 <= d; ++dc) {
            EXPECT_LE(effective_teleport_dim(d, dc + 1), effective_teleport_dim(d, dc));
        }
    }
}

TEST(Ledger, Accounting) {
    EbitLedger l;
    l.add_teleport("a", 4);
    l.add_teleport("b", 3);
    l.add_teleport("c", 1);
    EXPECT_NEAR(l.total(), 2.0 + std::log2(3.0), 1e-15);
    EXPECT_EQ(l.integer_total(), 4u);
    EXPECT_EQ(l.classical_total(), 8u);
    EXPECT_EQ(l.entries()[2].mechanism, Mechanism::None);
    LedgerEntry bad;
    bad.ebits = -1;
    EXPECT_EQ(code_of([&] { l.add(bad); }), ErrorCode::DomainError);
}

TEST(Sse, ZetaSpendsFourEbits) {
    const auto z = make_zeta(zeta_from_x(0.5));
    const auto r = run_exact_sse(z, zeta_common_cert());
    EXPECT_LE(r.distance, 1e-10);
    EXPECT_EQ(r.ledger.total(), 4.0);
    EXPECT_EQ(r.ledger.integer_total(), 4u);
    EXPECT_LE(trace_distance(r.final_state, exchange_final_state(z, "A", "B")), 1e-10);
    EXPECT_NEAR(savings(z, zeta_common_cert()), 1.16993, 1e-5);
}

TEST(Sse, GhzFullSpaceIsFree) {
    const auto ghz = make_named(NamedState::GHZ3);
    const auto cert = CommonSubspaceCert::from_indices(2, {0, 1});
    const auto r = run_exact_sse(ghz, cert);
    EXPECT_EQ(r.ledger.total(), 0.0);
    EXPECT_LE(trace_distance(r.final_state, ghz), 1e-12);
    EXPECT_DOUBLE_EQ(savings(ghz, cert), 2.0);
}

TEST(Sse, NoSubspaceIsNaiveTeleportation) {
    test::Rng rng(61);
    const auto psi = test::random_state({{"A", 3}, {"B", 3}, {"R", 2}}, rng);
    const auto r = run_exact_sse(psi, CommonSubspaceCert::none(3));
    EXPECT_NEAR(r.ledger.total(), naive_swap_cost(3), 1e-15);
    EXPECT_LE(r.distance, 1e-9);
    EXPECT_EQ(savings(psi, CommonSubspaceCert::none(3)), 0.0);
}

TEST(Sse, RejectsUnverifiedCert) {
    const auto z = make_zeta(zeta_from_x(0.5));
    EXPECT_EQ(code_of([&] { run_exact_sse(z, CommonSubspaceCert::from_indices(6, {0, 1})); }),
              ErrorCode::NotCommon);
}

TEST(Sse, RandomCommonStatesWithHiddenUnitaries) {
    test::Rng rng(67);
    for (int t = 0; t < 20; ++t) {
        const auto cc = test::random_common_case(rng, 5, 3, t % 2 == 1);
        const auto r = run_exact_sse(cc.psi, cc.cert);
        EXPECT_LE(r.distance, 1e-9);
        EXPECT_GE(savings(cc.psi, cc.cert), 0.0);
    }
}
