#include "qui/qsr.hpp"

#include <algorithm>
#include <cmath>

#include "qui/errors.hpp"
#include "qui/linalg.hpp"
#include "qui/subspace.hpp"

namespace qui {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

const std::string& party(int i) { return kQsrParties[static_cast<std::size_t>(i - 1)]; }
const std::string& ancilla(int i) { return kQsrAncillas[static_cast<std::size_t>(i - 1)]; }

void check_starter(int starter) {
    if (starter < 1 || starter > 3) {
        raise(ErrorCode::DomainError, "starter must be 1, 2 or 3");
    }
}

void check_parties(const PureState& xi, std::size_t d) {
    for (const auto& p : kQsrParties) {
        if (xi.layout().dim(p) != d) {
            raise(ErrorCode::DimMismatch, "party '" + p + "' must have dimension " + std::to_string(d));
        }
    }
}

PureState rotate_parties(PureState state, const std::array<CMatrix, 3>& v) {
    for (std::size_t k = 0; k < 3; ++k) {
        if (!v[k].isIdentity(0.0)) {
            state = apply_local(state, {kQsrParties[k]}, v[k]);
        }
    }
    return state;
}

} // namespace

ThreePartyCert ThreePartyCert::from_indices(std::size_t d, std::vector<std::size_t> indices,
                                            std::array<CMatrix, 3> V) {
    // reuse the two-party validation for the subspace and the first two unitaries
    const CommonSubspaceCert two = CommonSubspaceCert::from_indices(d, indices, V[0], V[1]);
    ThreePartyCert cert;
    cert.basis = two.basis;
    cert.indices = two.indices;
    cert.basis_subset = true;
    cert.V = {two.V, two.W,
              V[2].size() == 0 ? CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) : V[2]};
    if (cert.V[2].rows() != static_cast<Eigen::Index>(d) || unitarity_residual(cert.V[2]) > kUnitaryTolerance) {
        raise(ErrorCode::DomainError, "V3 must be a " + std::to_string(d) + "-dimensional unitary");
    }
    return cert;
}

int cyclic_party(int i, int k) noexcept { return ((i - 1 + k) % 3 + 3) % 3 + 1; }

ThreePartyCert verify_three_common(const PureState& xi, ThreePartyCert cert) {
    check_parties(xi, cert.dim());
    const PureState rotated = rotate_parties(xi, cert.V);
    const CMatrix p = cert.basis * cert.basis.adjoint();
    const CMatrix p_perp = CMatrix::Identity(p.rows(), p.cols()) - p;
    PureState common = PureState::fragment(rotated.layout(), rotated.amplitudes());
    PureState uncommon = common;
    for (const auto& label : kQsrParties) {
        common = apply_local(common, {label}, p);
        uncommon = apply_local(uncommon, {label}, p_perp);
    }
    const PureState turned = rotate_final_state(common, kQsrParties);
    cert.residual_decomposition = (rotated.amplitudes() - common.amplitudes() - uncommon.amplitudes()).norm();
    cert.residual_symmetry = (common.amplitudes() - turned.amplitudes()).norm();
    cert.verified = cert.residual_decomposition <= kCommonTolerance && cert.residual_symmetry <= kCommonTolerance;
    return cert;
}

PureState stretch_three(const PureState& xi, const ThreePartyCert& cert) {
    const ThreePartyCert checked = verify_three_common(xi, cert);
    if (!checked.verified) {
        raise(ErrorCode::NotCommon, "subspace is not three-party common (decomposition residual " +
                                        residual_text(checked.residual_decomposition) + ", symmetry residual " +
                                        residual_text(checked.residual_symmetry) + ")");
    }
    LabelSet order(kQsrParties.begin(), kQsrParties.end());
    for (const auto& l : xi.layout().complement(order)) {
        order.push_back(l);
    }
    const PureState rotated = rotate_parties(permute(xi, order), checked.V);

    CommonSubspaceCert view;
    view.basis = checked.basis;
    view.indices = checked.indices;
    view.basis_subset = checked.basis_subset;
    return stretch_registers(rotated, {kQsrParties.begin(), kQsrParties.end()},
                             {kQsrAncillas.begin(), kQsrAncillas.end()}, canonicalizer(view),
                             checked.subspace_dim());
}

double rate_u_qsr(const PureState& xi, int starter) {
    check_starter(starter);
    const auto& a0 = party(starter);
    const auto& a1 = party(cyclic_party(starter, 1));
    const auto& a2 = party(cyclic_party(starter, 2));
    return conditional_entropy(xi, {a0}, {a1}) + conditional_entropy(xi, {a1}, {a2}) + entropy(xi, {a2});
}

double rate_v_qsr_stretched(const PureState& stretched, int starter) {
    check_starter(starter);
    const int i0 = starter;
    const int i1 = cyclic_party(starter, 1);
    const int i2 = cyclic_party(starter, 2);
    const int i3 = cyclic_party(starter, 3);
    return conditional_entropy(stretched, {ancilla(i0)}, {party(i1), ancilla(i1)}) +
           conditional_entropy(stretched, {ancilla(i1)}, {party(i2), ancilla(i2)}) +
           conditional_entropy(stretched, {ancilla(i2)}, {party(i3)});
}

double rate_v_qsr(const PureState& xi, const ThreePartyCert& cert, int starter) {
    return rate_v_qsr_stretched(stretch_three(xi, cert), starter);
}

QsrRateReport QsrRateReport::from_rates(const std::array<double, 3>& u, const std::array<double, 3>& v) {
    QsrRateReport r;
    r.u = u;
    r.v = v;
    r.u_old_min = *std::min_element(u.begin(), u.end());
    r.v_new_min = *std::min_element(v.begin(), v.end());
    return r;
}

QsrRateReport qsr_closed_forms(const ZetaParams& params) {
    const auto p = params.squares();
    const double s = p[0] + p[1];
    // -q log(q/2) = -q log q + q
    auto half = [](double q) { return -plogp(q) + q; };
    const std::array<double, 3> u{
        half(p[0]) - plogp(p[1]) + 2.0 * p[1] + half(p[2]) - plogp(p[3]),
        2.0 * half(p[0]) + (plogp(s) - s) + 2.0 * half(p[1]) + half(p[2]) - plogp(p[3]),
        -plogp(p[0]) + 2.0 * p[0] + half(p[1]) + half(p[2]) - plogp(p[3]),
    };
    const std::array<double, 3> v{
        half(p[0]) + plogp(s) - plogp(p[1]) + 2.0 * p[1],
        2.0 * half(p[0]) + 2.0 * plogp(s) - s + 2.0 * half(p[1]),
        -plogp(p[0]) + 2.0 * p[0] + plogp(s) + half(p[1]),
    };
    return QsrRateReport::from_rates(u, v);
}

QsrRateReport qsr_numeric(const PureState& xi, const ThreePartyCert& cert) {
    const PureState stretched = stretch_three(xi, cert);
    std::array<double, 3> u{};
    std::array<double, 3> v{};
    for (int i = 1; i <= 3; ++i) {
        u[static_cast<std::size_t>(i - 1)] = rate_u_qsr(xi, i);
        v[static_cast<std::size_t>(i - 1)] = rate_v_qsr_stretched(stretched, i);
    }
    return QsrRateReport::from_rates(u, v);
}

ThreePartyCert xi_common_cert() { return ThreePartyCert::from_indices(6, {3, 4, 5}); }

} // namespace qui
