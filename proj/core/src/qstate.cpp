#include "qui/qstate.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "qui/errors.hpp"
#include "qui/linalg.hpp"

namespace qui {

namespace {

using Term = std::pair<std::vector<std::size_t>, double>;

PureState from_terms(SubsystemLayout layout, const std::vector<Term>& terms) {
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    for (const auto& [index, amp] : terms) {
        amps(static_cast<Eigen::Index>(layout.ravel(index))) += amp;
    }
    return PureState(std::move(layout), std::move(amps));
}

void require_equal_dims(const SubsystemLayout& layout, std::initializer_list<std::string> labels) {
    std::size_t d = 0;
    for (const auto& l : labels) {
        const std::size_t dl = layout.dim(l);
        if (d != 0 && dl != d) {
            raise(ErrorCode::DimMismatch, "subsystems to permute must have equal dimensions");
        }
        d = dl;
    }
}

} // namespace

ZetaParams ZetaParams::from_coefficients(const std::array<double, 4>& c) {
    double sum = 0.0;
    for (double v : c) {
        if (!(v >= 0.0)) {
            raise(ErrorCode::DomainError, "coefficients must be non-negative");
        }
        sum += v * v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        raise(ErrorCode::NormalizationError, "sum of squared coefficients is " + std::to_string(sum));
    }
    return ZetaParams(c);
}

std::array<double, 4> ZetaParams::squares() const noexcept {
    return {c_[0] * c_[0], c_[1] * c_[1], c_[2] * c_[2], c_[3] * c_[3]};
}

ZetaParams zeta_from_x(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        raise(ErrorCode::DomainError, "sweep parameter must lie in [0, 1]");
    }
    return ZetaParams::from_coefficients({std::sqrt((5.0 - 2.0 * x) / 8.0), std::sqrt((3.0 - x) / 8.0),
                                          std::sqrt(x / 8.0), std::sqrt(x / 4.0)});
}

PureState make_zeta(const ZetaParams& params) {
    const auto& c = params.c();
    const double h = 1.0 / std::sqrt(2.0);
    return from_terms(SubsystemLayout{{"A", 6}, {"B", 6}, {"R", 6}},
                      {{{0, 0, 0}, c[0] * h},
                       {{0, 1, 1}, c[0] * h},
                       {{1, 2, 2}, c[1] * h},
                       {{2, 2, 3}, c[1] * h},
                       {{3, 3, 4}, c[2] * h},
                       {{4, 4, 4}, c[2] * h},
                       {{5, 5, 5}, c[3]}});
}

PureState make_xi(const ZetaParams& params) {
    const auto& c = params.c();
    const double h = 1.0 / std::sqrt(2.0);
    return from_terms(SubsystemLayout{{"A1", 6}, {"A2", 6}, {"A3", 6}, {"R", 6}},
                      {{{0, 0, 1, 0}, c[0] * h},
                       {{0, 1, 0, 1}, c[0] * h},
                       {{1, 2, 0, 2}, c[1] * h},
                       {{2, 2, 1, 3}, c[1] * h},
                       {{3, 3, 3, 4}, c[2] * h},
                       {{4, 4, 4, 4}, c[2] * h},
                       {{5, 5, 5, 5}, c[3]}});
}

PureState make_epr(const std::string& first, const std::string& second) {
    const double h = 1.0 / std::sqrt(2.0);
    return from_terms(SubsystemLayout{{first, 2}, {second, 2}}, {{{0, 0}, h}, {{1, 1}, h}});
}

PureState make_named(NamedState name) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (name) {
    case NamedState::GHZ3:
        return from_terms(SubsystemLayout{{"A", 2}, {"B", 2}, {"R", 2}}, {{{0, 0, 0}, h}, {{1, 1, 1}, h}});
    case NamedState::EPR:
        return make_epr("A", "B");
    case NamedState::ProductEPR: {
        const PureState pair = tensor(make_epr("A", "R1"), make_epr("R2", "B"));
        return permute(pair, {"A", "B", "R1", "R2"});
    }
    }
    raise(ErrorCode::UnknownState, "unrecognised named state");
}

NamedState parse_named_state(std::string_view name) {
    if (name == "GHZ3") {
        return NamedState::GHZ3;
    }
    if (name == "EPR") {
        return NamedState::EPR;
    }
    if (name == "ProductEPR") {
        return NamedState::ProductEPR;
    }
    raise(ErrorCode::UnknownState, "no named state '" + std::string(name) + "'");
}

std::string_view to_string(NamedState name) noexcept {
    switch (name) {
    case NamedState::GHZ3: return "GHZ3";
    case NamedState::EPR: return "EPR";
    case NamedState::ProductEPR: return "ProductEPR";
    }
    return "?";
}

PureState exchange_final_state(const PureState& psi, const std::string& label_a, const std::string& label_b) {
    const SubsystemLayout& layout = psi.layout();
    require_equal_dims(layout, {label_a, label_b});
    LabelSet order = layout.labels();
    std::swap(order[layout.position(label_a)], order[layout.position(label_b)]);
    return psi.rebuilt(layout, permute(psi, order).amplitudes());
}

PureState rotate_final_state(const PureState& xi, const std::array<std::string, 3>& labels) {
    const SubsystemLayout& layout = xi.layout();
    require_equal_dims(layout, {labels[0], labels[1], labels[2]});
    // slot of party i+1 receives the content of party i
    LabelSet order = layout.labels();
    order[layout.position(labels[0])] = labels[2];
    order[layout.position(labels[1])] = labels[0];
    order[layout.position(labels[2])] = labels[1];
    return xi.rebuilt(layout, permute(xi, order).amplitudes());
}

} // namespace qui
