#include <algorithm>

#include <gtest/gtest.h>

#include "error_code.hpp"
#include "oracle_values.hpp"
#include "qui/linalg.hpp"
#include "qui/qsr.hpp"
#include "qui/qstate.hpp"
#include "random_states.hpp"

using namespace qui;
using qui::test::code_of;

namespace {

PureState symmetric_ghz_with_trivial_reference() {
    CVector v = CVector::Zero(8);
    v[0] = v[7] = 1 / std::sqrt(2.0);
    return PureState({{"A1", 2}, {"A2", 2}, {"A3", 2}, {"R", 1}}, v);
}

} // namespace

TEST(Qsr, CyclicIndex) {
    EXPECT_EQ(cyclic_party(1, 1), 2);
    EXPECT_EQ(cyclic_party(3, 1), 1);
    EXPECT_EQ(cyclic_party(2, 2), 1);
    EXPECT_EQ(cyclic_party(2, 3), 2);
}

TEST(Qsr, VerifyThreeCommon) {
    const auto xi = make_xi(zeta_from_x(0.5));
    EXPECT_TRUE(verify_three_common(xi, xi_common_cert()).verified);
    EXPECT_FALSE(verify_three_common(xi, ThreePartyCert::from_indices(6, {0})).verified);
    EXPECT_TRUE(verify_three_common(symmetric_ghz_with_trivial_reference(), ThreePartyCert::from_indices(2, {0, 1}))
                    .verified);
    EXPECT_EQ(code_of([&] { verify_three_common(xi, ThreePartyCert::from_indices(2, {0})); }),
              ErrorCode::DimMismatch);
}

TEST(Qsr, StretchThree) {
    const auto xi = make_xi(zeta_from_x(0.8));
    const auto s = stretch_three(xi, xi_common_cert());
    EXPECT_EQ(s.layout().labels(), (LabelSet{"A1", "A2", "A3", "R", "A1'", "A2'", "A3'"}));
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_NEAR(entropy(s, {"R"}), entropy(xi, {"R"}), 1e-9);
    EXPECT_EQ(code_of([&] { stretch_three(xi, ThreePartyCert::from_indices(6, {0})); }), ErrorCode::NotCommon);

    const auto ghz = symmetric_ghz_with_trivial_reference();
    const auto full = stretch_three(ghz, ThreePartyCert::from_indices(2, {0, 1}));
    for (const auto& a : kQsrAncillas) {
        EXPECT_NEAR(entropy(full, {a}), 0.0, 1e-12);
    }
    const CMatrix m = split_matrix(full, {"A1'", "A2'", "A3'"});
    EXPECT_NEAR(m.row(0).norm(), 1.0, 1e-12);
}

TEST(Qsr, RatesMatchOracle) {
    const auto cert = xi_common_cert();
    for (const auto& row : test::kQsrOracle) {
        const auto params = zeta_from_x(row.x);
        const auto closed = qsr_closed_forms(params);
        const auto numeric = qsr_numeric(make_xi(params), cert);
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_NEAR(closed.u[i], row.u[i], 1e-12);
            EXPECT_NEAR(closed.v[i], row.v[i], 1e-12);
            EXPECT_NEAR(numeric.u[i], row.u[i], 1e-9);
            EXPECT_NEAR(numeric.v[i], row.v[i], 1e-9);
        }
        EXPECT_LE(closed.v_new_min, closed.u_old_min + 1e-7);
    }
}

TEST(Qsr, SpotValuesAndErrors) {
    const auto xi0 = make_xi(zeta_from_x(0.0));
    EXPECT_NEAR(rate_u_qsr(xi0, 1), 2.32944, 1e-5);
    EXPECT_NEAR(rate_v_qsr(xi0, xi_common_cert(), 1), 2.32944, 1e-5);
    EXPECT_EQ(code_of([&] { rate_u_qsr(xi0, 0); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([&] { rate_v_qsr(xi0, xi_common_cert(), 4); }), ErrorCode::DomainError);
    const auto c0 = qsr_closed_forms(zeta_from_x(0.0));
    EXPECT_DOUBLE_EQ(c0.u_old_min, c0.v_new_min);
}

TEST(Qsr, SingleTermLimitIsFinite) {
    const auto r = qsr_closed_forms(ZetaParams::from_coefficients({1, 0, 0, 0}));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_TRUE(std::isfinite(r.u[i]));
        EXPECT_TRUE(std::isfinite(r.v[i]));
    }
    const auto n = qsr_numeric(make_xi(ZetaParams::from_coefficients({1, 0, 0, 0})), xi_common_cert());
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(n.u[i], r.u[i], 1e-9);
        EXPECT_NEAR(n.v[i], r.v[i], 1e-9);
    }
}

TEST(Qsr, VSumInvariantUnderPartyUnitaries) {
    // the same common unitary on all three parties keeps the subspace common
    test::Rng rng(51);
    const auto xi = make_xi(zeta_from_x(0.4));
    CMatrix u = CMatrix::Identity(6, 6);
    u.topLeftCorner(3, 3) = test::random_unitary(3, rng);
    u.bottomRightCorner(3, 3) = test::random_unitary(3, rng);
    PureState hidden = xi;
    for (const auto& p : kQsrParties) {
        hidden = apply_local(hidden, {p}, u.adjoint());
    }
    const auto cert = ThreePartyCert::from_indices(6, {3, 4, 5}, {u, u, u});
    ASSERT_TRUE(verify_three_common(hidden, cert).verified);
    const auto base = qsr_numeric(xi, xi_common_cert());
    const auto moved = qsr_numeric(hidden, cert);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(moved.v[i], base.v[i], 1e-9);
    }
}

TEST(Qsr, RotationOrderThreeOnCommonPiece) {
    const auto xi = make_xi(zeta_from_x(0.9));
    const auto cert = xi_common_cert();
    const CMatrix p = cert.basis * cert.basis.adjoint();
    PureState com = PureState::fragment(xi.layout(), xi.amplitudes());
    for (const auto& a : kQsrParties) {
        com = apply_local(com, {a}, p);
    }
    const auto once = rotate_final_state(com, kQsrParties);
    EXPECT_LT((once.amplitudes() - com.amplitudes()).norm(), 1e-15);
    const auto thrice = rotate_final_state(rotate_final_state(once, kQsrParties), kQsrParties);
    EXPECT_EQ(thrice.amplitudes(), com.amplitudes());
}
