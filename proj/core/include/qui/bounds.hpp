#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qui/pure_state.hpp"
#include "qui/qstate.hpp"
#include "qui/subspace.hpp"

namespace qui {

/// Slack used by the ordering check l1 <= l_new <= u_new <= u1.
inline constexpr double kChainSlack = 1e-7;
/// Agreement required between S(R|A) and the merge-and-merge sum on a stretched state.
inline constexpr double kRateIdentityTolerance = 1e-9;
/// Basis-partition splits are only enumerated up to this reference dimension.
inline constexpr std::size_t kMaxBasisSplitDim = 16;

/// |S(B) - S(A)|.
double bound_l1(const PureState& psi);
/// S(AB).
double bound_u1(const PureState& psi);

struct UNewEvaluation {
    double u_new = 0.0;     // S(R|A) on the stretched state
    double merge_sum = 0.0; // S(A'|BB') + S(B'|A)
};

/// Both routes to the subspace-exchange rate; throws NumericalMismatch when they differ by
/// more than kRateIdentityTolerance.
UNewEvaluation evaluate_u_new(const StretchedState& stretched);
double bound_u_new(const PureState& psi, const CommonSubspaceCert& cert);

/// One member of the restricted isometry family R -> R1 R2 used for l2.
///
/// BasisPartition: the (flattened) reference basis vector |k> goes to |k>_R1 |vac>_R2 when
/// to_r1[k], else to |vac>_R1 |k>_R2, with R1, R2 of dimension d_R + 1.
/// LabelPartition: the reference labels in r1_labels form R1, the rest R2.
/// An optional pre_rotation (unitary on the whole reference space) is applied first.
struct IsometrySplit {
    enum class Mode { BasisPartition, LabelPartition };

    Mode mode = Mode::LabelPartition;
    std::vector<bool> to_r1;
    LabelSet r1_labels;
    std::optional<CMatrix> pre_rotation;

    static IsometrySplit basis(std::vector<bool> to_r1, std::optional<CMatrix> pre_rotation = std::nullopt);
    static IsometrySplit labels(LabelSet r1_labels, std::optional<CMatrix> pre_rotation = std::nullopt);
};

/// Reference labels of psi: everything except A and B, in layout order.
LabelSet reference_labels(const PureState& psi);

/// All label partitions of the reference plus all 2^{d_R} basis partitions (when
/// d_R <= kMaxBasisSplitDim). Always contains the two trivial splits.
std::vector<IsometrySplit> default_splits(const PureState& psi);

/// S(B R1) - S(A R1) after applying the split.
double split_value(const PureState& psi, const IsometrySplit& split);

/// Maximum of split_value over the family; a lower estimate of the supremum over all
/// isometries. Throws EmptyFamily.
double bound_l2(const PureState& psi, std::span<const IsometrySplit> splits);

/// Declared reversible decomposition into phi_l [A1,R1], phi_b [A2,B2], phi_r [R2,B1],
/// phi_c [A3,R3,R4,B3] at rates r1..r4.
struct DecompositionSpec {
    std::array<double, 4> rates{};
    PureState phi_l;
    PureState phi_b;
    PureState phi_r;
    PureState phi_c;

    /// Throws DomainError for negative rates and NormalizationError for fragments.
    DecompositionSpec(std::array<double, 4> rates, PureState phi_l, PureState phi_b, PureState phi_r,
                      PureState phi_c);
};

/// r1 S(A1)_l + r3 S(B1)_r + r4 (S(B3 R3)_c - S(A3 R3)_c).
double bound_l_new(const DecompositionSpec& spec);

/// EPR/EPR/EPR/GHZ decomposition of the zeta family at rates
/// (c1^2, c2^2, c0^2, -sum c_i^2 log c_i^2).
DecompositionSpec make_zeta_decomposition(const ZetaParams& params);

/// Shannon entropy (bits) of the squared coefficients, 0 log 0 = 0.
double coefficient_entropy(const ZetaParams& params);

struct ZetaClosedForms {
    double l1 = 0.0;
    double l_new = 0.0;
    double u_new = 0.0;
    double u1 = 0.0;
};

/// Closed-form bounds of the zeta family with common subspace span{|3>,|4>,|5>}.
ZetaClosedForms zeta_closed_forms(const ZetaParams& params);

/// Common subspace span{|3>,|4>,|5>} of the zeta family (identity unitaries).
CommonSubspaceCert zeta_common_cert();

struct BoundReport {
    double l1 = 0.0;
    double l2_found = 0.0;
    std::optional<double> l_new;
    std::optional<double> u_new;
    double u1 = 0.0;
    std::map<std::string, std::string> provenance;
    bool chain_ok = false;
};

struct ReportInputs {
    std::optional<CommonSubspaceCert> cert;
    std::optional<DecompositionSpec> spec;
    std::vector<IsometrySplit> splits; // empty: default_splits
};

BoundReport full_report(const PureState& psi, const ReportInputs& inputs = {});

/// Ordering check over every present pair (see kChainSlack).
bool chain_holds(const BoundReport& report, double slack = kChainSlack);

} // namespace qui
