#include <cmath>

#include <Eigen/Eigenvalues>

#include <gtest/gtest.h>

#include "error_code.hpp"
#include "qui/linalg.hpp"
#include "qui/qstate.hpp"
#include "random_states.hpp"

using namespace qui;
using qui::test::code_of;

namespace {

PureState ket(const std::string& label, std::size_t d, std::size_t i) {
    return PureState::basis_state(SubsystemLayout{{label, d}}, {&i, 1});
}

DensityOperator density(const std::string& label, const CMatrix& m) {
    return DensityOperator(Operator(SubsystemLayout{{label, static_cast<std::size_t>(m.rows())}}, m));
}

} // namespace

TEST(Tensor, IdentityTimesIdentity) {
    const Operator a = Operator::identity({{"A", 2}});
    const Operator b = Operator::identity({{"B", 3}});
    const Operator ab = tensor(a, b);
    EXPECT_EQ(ab.dim(), 6u);
    EXPECT_TRUE(ab.matrix().isIdentity(0.0));
    EXPECT_EQ(code_of([&] { tensor(a, a); }), ErrorCode::LabelCollision);
}

TEST(Tensor, BasisProductAmplitude) {
    const PureState s = tensor(ket("A", 2, 0), ket("B", 2, 1));
    const std::vector<std::size_t> m{0, 1};
    EXPECT_EQ(s.amplitude(m), Complex(1.0, 0.0));
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
}

TEST(Tensor, ProductOfBellDensitiesIsPure) {
    const auto rho = tensor(DensityOperator::from_state(make_epr("A", "B")),
                            DensityOperator::from_state(make_epr("C", "D")));
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    int rank = 0;
    for (auto ev : es.eigenvalues()) {
        rank += ev > 1e-10;
    }
    EXPECT_EQ(rank, 1);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    const auto rho = partial_trace(DensityOperator::from_state(make_epr("A", "B")), {"A"});
    EXPECT_TRUE(rho.matrix().isApprox(CMatrix::Identity(2, 2) / 2.0, 1e-14));
}

TEST(PartialTrace, GhzTwoPartyMarginal) {
    const auto rho = partial_trace(DensityOperator::from_state(make_named(NamedState::GHZ3)), {"A", "B"});
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    EXPECT_LT((rho.matrix() - expect).norm(), 1e-14);
}

TEST(PartialTrace, ChainedEqualsSingle) {
    test::Rng rng(7);
    const auto psi = test::random_state({{"A", 2}, {"B", 3}, {"C", 2}}, rng);
    const auto rho = DensityOperator::from_state(psi);
    const auto twice = partial_trace(partial_trace(rho, {"A", "C"}), {"C"});
    const auto once = partial_trace(rho, {"C"});
    EXPECT_LT((twice.matrix() - once.matrix()).norm(), 1e-12);
    // the pure-state shortcut agrees with the operator route
    EXPECT_LT((reduced_density(psi, {"A", "C"}).matrix() - partial_trace(rho, {"A", "C"}).matrix()).norm(), 1e-12);
}

TEST(PartialTrace, Errors) {
    const auto rho = DensityOperator::from_state(make_epr("A", "B"));
    EXPECT_EQ(code_of([&] { partial_trace(rho, {}); }), ErrorCode::EmptyKeepSet);
    EXPECT_EQ(code_of([&] { partial_trace(rho, {"Z"}); }), ErrorCode::UnknownLabel);
}

TEST(DensityOperator, Validation) {
    CMatrix m(2, 2);
    m << 0.5, 0.1, 0.3, 0.5;
    EXPECT_EQ(code_of([&] { density("A", m); }), ErrorCode::NotHermitian);
    EXPECT_EQ(code_of([&] { density("A", CMatrix::Identity(2, 2)); }), ErrorCode::NormalizationError);
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_EQ(code_of([&] { density("A", neg); }), ErrorCode::NotPositive);
}

TEST(Entropy, PureMixedAndGhz) {
    EXPECT_NEAR(von_neumann_entropy(DensityOperator::from_state(make_epr("A", "B"))), 0.0, 1e-12);
    for (int d : {2, 3, 6}) {
        EXPECT_NEAR(von_neumann_entropy(density("A", CMatrix::Identity(d, d) / d)), std::log2(d), 1e-12);
    }
    const auto ghz = DensityOperator::from_state(make_named(NamedState::GHZ3));
    EXPECT_NEAR(von_neumann_entropy(partial_trace(ghz, {"A", "B"})), 1.0, 1e-12);
    EXPECT_NEAR(entropy(make_named(NamedState::GHZ3), {"A", "B"}), 1.0, 1e-12);
}

TEST(Entropy, RejectsBadOperators) {
    CMatrix m(2, 2);
    m << 0.5, 0.1, 0.3, 0.5;
    EXPECT_EQ(code_of([&] { von_neumann_entropy(Operator({{"A", 2}}, m)); }), ErrorCode::NotHermitian);
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    EXPECT_EQ(code_of([&] { von_neumann_entropy(Operator({{"A", 2}}, neg)); }), ErrorCode::NotPositive);
}

TEST(ConditionalEntropy, Examples) {
    const auto epr = make_epr("A", "B");
    EXPECT_NEAR(conditional_entropy(epr, {"A"}, {"B"}), -1.0, 1e-12);
    EXPECT_NEAR(conditional_entropy(DensityOperator::from_state(epr), {"A"}, {"B"}), -1.0, 1e-12);
    const auto prod = tensor(ket("A", 2, 0), ket("B", 2, 0));
    EXPECT_NEAR(conditional_entropy(prod, {"A"}, {"B"}), 0.0, 1e-12);
    EXPECT_EQ(code_of([&] { conditional_entropy(epr, {"A"}, {"A", "B"}); }), ErrorCode::LabelCollision);
}

TEST(Schmidt, BellProductAndZeta) {
    const auto s = schmidt_decomposition(make_epr("A", "B"), {"A"});
    ASSERT_EQ(s.rank, 2u);
    EXPECT_NEAR(s.coefficients[0], 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s.coefficients[1], 1 / std::sqrt(2.0), 1e-12);

    const auto p = schmidt_decomposition(tensor(ket("A", 3, 1), ket("B", 2, 0)), {"A"});
    EXPECT_EQ(p.rank, 1u);
    EXPECT_NEAR(p.coefficients[0], 1.0, 1e-12);

    EXPECT_EQ(schmidt_decomposition(make_zeta(zeta_from_x(1.0)), {"A"}).rank, 6u);
    EXPECT_EQ(code_of([] { schmidt_decomposition(make_epr("A", "B"), {}); }), ErrorCode::EmptyCut);
    EXPECT_EQ(code_of([] { schmidt_decomposition(make_epr("A", "B"), {"A", "B"}); }), ErrorCode::EmptyCut);
}

TEST(Schmidt, ReconstructsRandomStates) {
    test::Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto psi = test::random_state({{"A", 3}, {"B", 2}, {"R", 4}}, rng);
        const auto s = schmidt_decomposition(psi, {"B", "R"});
        const auto back = permute(s.reconstruct(), psi.layout().labels());
        EXPECT_LT((back.amplitudes() - psi.amplitudes()).norm(), 1e-9);
    }
}

TEST(TraceDistance, Examples) {
    const auto zero = DensityOperator::from_state(ket("A", 2, 0));
    const auto one = DensityOperator::from_state(ket("A", 2, 1));
    const auto mixed = density("A", CMatrix::Identity(2, 2) / 2.0);
    EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-14);
    EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);
    EXPECT_NEAR(trace_distance(zero, mixed), 0.5, 1e-14);
    EXPECT_NEAR(trace_distance(ket("A", 2, 0), ket("A", 2, 1)), 1.0, 1e-14);
    EXPECT_EQ(code_of([&] { trace_distance(zero, DensityOperator::from_state(ket("B", 2, 0))); }),
              ErrorCode::LayoutMismatch);
}

TEST(TraceDistance, PureFormulaMatchesDensityRoute) {
    test::Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const auto a = test::random_state({{"A", 3}, {"B", 2}}, rng);
        const auto b = test::random_state({{"A", 3}, {"B", 2}}, rng);
        EXPECT_NEAR(trace_distance(a, b),
                    trace_distance(DensityOperator::from_state(a), DensityOperator::from_state(b)), 1e-10);
    }
}

TEST(ApplyLocal, MatchesKroneckerProduct) {
    test::Rng rng(5);
    const auto psi = test::random_state({{"A", 2}, {"B", 3}}, rng);
    const CMatrix u = test::random_unitary(3, rng);
    CMatrix full = CMatrix::Zero(6, 6); // 1 (x) u
    full.block(0, 0, 3, 3) = u;
    full.block(3, 3, 3, 3) = u;
    const auto out = apply_local(psi, {"B"}, u);
    EXPECT_LT((out.amplitudes() - full * psi.amplitudes()).norm(), 1e-12);
}

TEST(Permute, RoundTrip) {
    test::Rng rng(9);
    const auto psi = test::random_state({{"A", 2}, {"B", 3}, {"C", 4}}, rng);
    const auto p = permute(psi, {"C", "A", "B"});
    EXPECT_EQ(p.layout().labels(), (LabelSet{"C", "A", "B"}));
    const std::vector<std::size_t> m{1, 2, 3};
    const std::vector<std::size_t> pm{3, 1, 2};
    EXPECT_EQ(psi.amplitude(m), p.amplitude(pm));
    EXPECT_LT((permute(p, {"A", "B", "C"}).amplitudes() - psi.amplitudes()).norm(), 1e-15);
}
