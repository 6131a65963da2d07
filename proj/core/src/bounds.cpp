#include "qui/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qui/errors.hpp"
#include "qui/linalg.hpp"

namespace qui {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

void require_labels(const PureState& psi, const LabelSet& labels, const char* role) {
    for (const auto& l : labels) {
        if (!psi.layout().contains(l)) {
            raise(ErrorCode::UnknownLabel, std::string(role) + " has no subsystem '" + l + "'");
        }
    }
}

LabelSet with(LabelSet a, const LabelSet& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

double bound_l1(const PureState& psi) {
    require_labels(psi, {kPartyA, kPartyB}, "state");
    return std::abs(entropy(psi, {kPartyB}) - entropy(psi, {kPartyA}));
}

double bound_u1(const PureState& psi) {
    require_labels(psi, {kPartyA, kPartyB}, "state");
    return entropy(psi, {kPartyA, kPartyB});
}

UNewEvaluation evaluate_u_new(const StretchedState& stretched) {
    const PureState& s = stretched.state;
    const LabelSet refs = s.layout().complement({kPartyA, kPartyB, kAncillaA, kAncillaB});
    UNewEvaluation out;
    out.u_new = conditional_entropy(s, refs, {kPartyA});
    out.merge_sum = conditional_entropy(s, {kAncillaA}, {kPartyB, kAncillaB}) +
                    conditional_entropy(s, {kAncillaB}, {kPartyA});
    if (std::abs(out.u_new - out.merge_sum) > kRateIdentityTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "S(R|A) = " << out.u_new << " but merge-and-merge sum = " << out.merge_sum;
        raise(ErrorCode::NumericalMismatch, msg.str());
    }
    return out;
}

double bound_u_new(const PureState& psi, const CommonSubspaceCert& cert) {
    return evaluate_u_new(stretch(psi, cert)).u_new;
}

// ---------------------------------------------------------------------------

IsometrySplit IsometrySplit::basis(std::vector<bool> to_r1, std::optional<CMatrix> pre_rotation) {
    IsometrySplit s;
    s.mode = Mode::BasisPartition;
    s.to_r1 = std::move(to_r1);
    s.pre_rotation = std::move(pre_rotation);
    return s;
}

IsometrySplit IsometrySplit::labels(LabelSet r1_labels, std::optional<CMatrix> pre_rotation) {
    IsometrySplit s;
    s.mode = Mode::LabelPartition;
    s.r1_labels = std::move(r1_labels);
    s.pre_rotation = std::move(pre_rotation);
    return s;
}

LabelSet reference_labels(const PureState& psi) {
    require_labels(psi, {kPartyA, kPartyB}, "state");
    return psi.layout().complement({kPartyA, kPartyB});
}

std::vector<IsometrySplit> default_splits(const PureState& psi) {
    const LabelSet refs = reference_labels(psi);
    std::vector<IsometrySplit> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << refs.size()); ++mask) {
        LabelSet r1;
        for (std::size_t i = 0; i < refs.size(); ++i) {
            if (mask & (std::size_t{1} << i)) {
                r1.push_back(refs[i]);
            }
        }
        out.push_back(IsometrySplit::labels(std::move(r1)));
    }
    const std::size_t d_r = dim_of(psi.layout(), refs);
    if (d_r > 1 && d_r <= kMaxBasisSplitDim) {
        // all-in and all-out partitions repeat the trivial label splits
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << d_r); ++mask) {
            std::vector<bool> to_r1(d_r);
            for (std::size_t k = 0; k < d_r; ++k) {
                to_r1[k] = (mask >> k) & 1U;
            }
            out.push_back(IsometrySplit::basis(std::move(to_r1)));
        }
    }
    return out;
}

double split_value(const PureState& psi, const IsometrySplit& split) {
    const LabelSet refs = reference_labels(psi);
    const std::size_t d_r = dim_of(psi.layout(), refs);
    PureState state = psi;
    if (split.pre_rotation) {
        if (refs.empty()) {
            raise(ErrorCode::DimMismatch, "pre-rotation needs a reference system");
        }
        const double r = unitarity_residual(*split.pre_rotation);
        if (r > kUnitaryTolerance) {
            raise(ErrorCode::DomainError, "pre-rotation is not unitary");
        }
        state = apply_local(state, refs, *split.pre_rotation);
    }

    if (split.mode == IsometrySplit::Mode::LabelPartition) {
        for (const auto& l : split.r1_labels) {
            if (std::find(refs.begin(), refs.end(), l) == refs.end()) {
                raise(ErrorCode::UnknownLabel, "'" + l + "' is not a reference subsystem");
            }
        }
        return entropy(state, with({kPartyB}, split.r1_labels)) - entropy(state, with({kPartyA}, split.r1_labels));
    }

    if (split.to_r1.size() != d_r) {
        raise(ErrorCode::DimMismatch, "basis partition has " + std::to_string(split.to_r1.size()) +
                                          " entries, reference dimension is " + std::to_string(d_r));
    }
    const CMatrix m = split_matrix(state, {kPartyA, kPartyB}); // rows (a, b), columns k
    const std::size_t n = d_r + 1;
    const std::size_t vac = d_r;
    const std::size_t da = state.layout().dim(kPartyA);
    const std::size_t db = state.layout().dim(kPartyB);
    SubsystemLayout layout{{kPartyA, da}, {kPartyB, db}, {"R1", n}, {"R2", n}};
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    for (Eigen::Index ab = 0; ab < m.rows(); ++ab) {
        for (std::size_t k = 0; k < d_r; ++k) {
            const std::size_t r1 = split.to_r1[k] ? k : vac;
            const std::size_t r2 = split.to_r1[k] ? vac : k;
            amps(static_cast<Eigen::Index>((static_cast<std::size_t>(ab) * n + r1) * n + r2)) =
                m(ab, static_cast<Eigen::Index>(k));
        }
    }
    const PureState image = state.rebuilt(std::move(layout), std::move(amps));
    return entropy(image, {kPartyB, "R1"}) - entropy(image, {kPartyA, "R1"});
}

double bound_l2(const PureState& psi, std::span<const IsometrySplit> splits) {
    if (splits.empty()) {
        raise(ErrorCode::EmptyFamily, "l2 needs at least one isometry split");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : splits) {
        best = std::max(best, split_value(psi, s));
    }
    return best;
}

// ---------------------------------------------------------------------------

DecompositionSpec::DecompositionSpec(std::array<double, 4> rates_, PureState l, PureState b, PureState r,
                                     PureState c)
    : rates(rates_), phi_l(std::move(l)), phi_b(std::move(b)), phi_r(std::move(r)), phi_c(std::move(c)) {
    for (double v : rates) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            raise(ErrorCode::DomainError, "decomposition rates must be finite and non-negative");
        }
    }
    for (const PureState* s : {&phi_l, &phi_b, &phi_r, &phi_c}) {
        if (s->is_fragment()) {
            raise(ErrorCode::NormalizationError, "decomposition components must be normalised states");
        }
    }
}

double bound_l_new(const DecompositionSpec& spec) {
    require_labels(spec.phi_l, {"A1", "R1"}, "phi_l");
    require_labels(spec.phi_b, {"A2", "B2"}, "phi_b");
    require_labels(spec.phi_r, {"R2", "B1"}, "phi_r");
    require_labels(spec.phi_c, {"A3", "R3", "R4", "B3"}, "phi_c");
    const auto& r = spec.rates;
    double value = 0.0;
    if (r[0] > 0.0) {
        value += r[0] * entropy(spec.phi_l, {"A1"});
    }
    if (r[2] > 0.0) {
        value += r[2] * entropy(spec.phi_r, {"B1"});
    }
    if (r[3] > 0.0) {
        value += r[3] * (entropy(spec.phi_c, {"B3", "R3"}) - entropy(spec.phi_c, {"A3", "R3"}));
    }
    return value;
}

double coefficient_entropy(const ZetaParams& params) {
    double h = 0.0;
    for (double p : params.squares()) {
        h -= plogp(p);
    }
    return h;
}

DecompositionSpec make_zeta_decomposition(const ZetaParams& params) {
    const auto p = params.squares();
    const double h = 1.0 / std::sqrt(2.0);
    SubsystemLayout ghz_layout{{"A3", 2}, {"R3", 2}, {"R4", 1}, {"B3", 2}};
    CVector ghz = CVector::Zero(static_cast<Eigen::Index>(ghz_layout.total_dim()));
    const std::size_t zeros[] = {0, 0, 0, 0};
    const std::size_t ones[] = {1, 1, 0, 1};
    ghz(static_cast<Eigen::Index>(ghz_layout.ravel(zeros))) = h;
    ghz(static_cast<Eigen::Index>(ghz_layout.ravel(ones))) = h;
    return DecompositionSpec({p[1], p[2], p[0], coefficient_entropy(params)}, make_epr("A1", "R1"),
                             make_epr("A2", "B2"), make_epr("R2", "B1"),
                             PureState(std::move(ghz_layout), std::move(ghz)));
}

ZetaClosedForms zeta_closed_forms(const ZetaParams& params) {
    const auto p = params.squares();
    // -p log(p/2) = -p log p + p
    const double half0 = -plogp(p[0]) + p[0];
    const double half1 = -plogp(p[1]) + p[1];
    ZetaClosedForms out;
    out.l1 = std::abs(p[0] - p[1]);
    out.l_new = p[0] + p[1];
    out.u_new = half0 + plogp(p[0] + p[1]) + half1;
    out.u1 = half0 + half1 - plogp(p[2]) - plogp(p[3]);
    return out;
}

CommonSubspaceCert zeta_common_cert() { return CommonSubspaceCert::from_indices(6, {3, 4, 5}); }

// ---------------------------------------------------------------------------

bool chain_holds(const BoundReport& r, double slack) {
    auto le = [slack](double a, double b) { return a - slack <= b + slack; };
    std::vector<double> lower{r.l1, r.l2_found};
    std::vector<double> upper{r.u1};
    bool ok = le(r.l1, r.l2_found);
    if (r.l_new) {
        lower.push_back(*r.l_new);
        ok = ok && le(r.l1, *r.l_new);
    }
    if (r.u_new) {
        upper.push_back(*r.u_new);
        ok = ok && le(*r.u_new, r.u1);
    }
    for (double lo : lower) {
        for (double up : upper) {
            ok = ok && le(lo, up);
        }
    }
    return ok;
}

BoundReport full_report(const PureState& psi, const ReportInputs& inputs) {
    BoundReport report;
    report.l1 = bound_l1(psi);
    report.provenance["l1"] = "numeric: |S(B) - S(A)| from reduced spectra";
    report.u1 = bound_u1(psi);
    report.provenance["u1"] = "numeric: S(AB) from reduced spectrum";

    const std::vector<IsometrySplit> splits = inputs.splits.empty() ? default_splits(psi) : inputs.splits;
    report.l2_found = bound_l2(psi, splits);
    report.provenance["l2_found"] = "numeric: maximum over " + std::to_string(splits.size()) +
                                    " isometry splits (restricted family, lower estimate of the supremum)";

    if (inputs.spec) {
        report.l_new = bound_l_new(*inputs.spec);
        report.provenance["l_new"] = "numeric: declared decomposition (one transformation, not the supremum)";
    } else {
        report.provenance["l_new"] = "absent: no decomposition supplied";
    }

    if (inputs.cert) {
        const StretchedState stretched = stretch(psi, *inputs.cert);
        const UNewEvaluation eval = evaluate_u_new(stretched);
        report.u_new = eval.u_new;
        report.provenance["u_new"] = "numeric: S(R|A) on the stretched state (d_C = " +
                                     std::to_string(stretched.cert.subspace_dim()) +
                                     "), merge-and-merge sum agrees";
    } else {
        report.provenance["u_new"] = "absent: no common subspace supplied";
    }
    report.chain_ok = chain_holds(report);
    return report;
}

} // namespace qui
