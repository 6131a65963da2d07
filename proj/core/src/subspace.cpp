#include "qui/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "qui/errors.hpp"
#include "qui/qstate.hpp"

namespace qui {

namespace {

CMatrix identity_if_empty(const CMatrix& m, std::size_t d) {
    if (m.size() == 0) {
        return CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    }
    return m;
}

void check_unitary(const CMatrix& u, std::size_t d, const char* name) {
    if (u.rows() != static_cast<Eigen::Index>(d) || u.cols() != static_cast<Eigen::Index>(d)) {
        raise(ErrorCode::DimMismatch, std::string(name) + " must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    const double r = unitarity_residual(u);
    if (r > kUnitaryTolerance) {
        raise(ErrorCode::DomainError, std::string(name) + " is not unitary (residual " + std::to_string(r) + ")");
    }
}

void check_party_dims(const PureState& psi, std::size_t d) {
    const std::size_t da = psi.layout().dim(kPartyA);
    const std::size_t db = psi.layout().dim(kPartyB);
    if (da != db) {
        raise(ErrorCode::DimMismatch, "A and B must have equal dimensions");
    }
    if (da != d) {
        raise(ErrorCode::DimMismatch, "certificate acts on dimension " + std::to_string(d) +
                                          ", state has dim(A) = " + std::to_string(da));
    }
}

CMatrix projector(const CMatrix& basis) { return basis * basis.adjoint(); }

PureState rotate_parties(const PureState& psi, const CMatrix& v, const CMatrix& w) {
    return apply_local(apply_local(psi, {kPartyA}, v), {kPartyB}, w);
}

} // namespace

CommonSubspaceCert CommonSubspaceCert::from_indices(std::size_t d, std::vector<std::size_t> indices,
                                                    CMatrix V, CMatrix W) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        raise(ErrorCode::DomainError, "subspace indices must be distinct");
    }
    if (!indices.empty() && indices.back() >= d) {
        raise(ErrorCode::DomainError, "subspace index out of range");
    }
    CommonSubspaceCert cert;
    const auto dd = static_cast<Eigen::Index>(d);
    cert.basis = CMatrix::Zero(dd, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) {
        cert.basis(static_cast<Eigen::Index>(indices[k]), static_cast<Eigen::Index>(k)) = 1.0;
    }
    cert.indices = std::move(indices);
    cert.basis_subset = true;
    cert.V = identity_if_empty(V, d);
    cert.W = identity_if_empty(W, d);
    check_unitary(cert.V, d, "V");
    check_unitary(cert.W, d, "W");
    return cert;
}

CommonSubspaceCert CommonSubspaceCert::from_basis(CMatrix basis, CMatrix V, CMatrix W) {
    const auto d = static_cast<std::size_t>(basis.rows());
    const auto k = basis.cols();
    const CMatrix gram = basis.adjoint() * basis;
    const double r = k == 0 ? 0.0 : (gram - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (r > kUnitaryTolerance) {
        raise(ErrorCode::DomainError, "subspace basis is not orthonormal (residual " + std::to_string(r) + ")");
    }
    CommonSubspaceCert cert;
    cert.basis = std::move(basis);
    cert.V = identity_if_empty(V, d);
    cert.W = identity_if_empty(W, d);
    check_unitary(cert.V, d, "V");
    check_unitary(cert.W, d, "W");
    return cert;
}

CommonSubspaceCert CommonSubspaceCert::none(std::size_t d) { return from_indices(d, {}); }

Decomposition decompose(const PureState& psi, const CommonSubspaceCert& cert) {
    const std::size_t d = cert.dim();
    check_party_dims(psi, d);
    // projections are sub-normalised
    const PureState rotated = PureState::fragment(psi.layout(), rotate_parties(psi, cert.V, cert.W).amplitudes());
    const CMatrix p = projector(cert.basis);
    const CMatrix p_perp = CMatrix::Identity(p.rows(), p.cols()) - p;

    const PureState common = apply_local(apply_local(rotated, {kPartyA}, p), {kPartyB}, p);
    const PureState uncommon = apply_local(apply_local(rotated, {kPartyA}, p_perp), {kPartyB}, p_perp);
    const double cross = (rotated.amplitudes() - common.amplitudes() - uncommon.amplitudes()).norm();
    return {common, uncommon, cross};
}

CommonSubspaceCert verify_common(const PureState& psi, CommonSubspaceCert cert) {
    const Decomposition dec = decompose(psi, cert);
    const PureState swapped = exchange_final_state(dec.common, kPartyA, kPartyB);
    cert.residual_decomposition = dec.cross_norm;
    cert.residual_symmetry = (dec.common.amplitudes() - swapped.amplitudes()).norm();
    cert.verified = cert.residual_decomposition <= kCommonTolerance && cert.residual_symmetry <= kCommonTolerance;
    return cert;
}

std::vector<CommonSubspaceCert> search_basis_common(const PureState& psi) {
    const std::size_t d = psi.layout().dim(kPartyA);
    check_party_dims(psi, d);
    if (d > kMaxSearchDim) {
        raise(ErrorCode::TooLarge, "basis-subset search is limited to dimension " + std::to_string(kMaxSearchDim));
    }
    std::vector<CommonSubspaceCert> found;
    for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
        std::vector<std::size_t> indices;
        for (std::size_t i = 0; i < d; ++i) {
            if (mask & (std::size_t{1} << i)) {
                indices.push_back(i);
            }
        }
        auto cert = verify_common(psi, CommonSubspaceCert::from_indices(d, std::move(indices)));
        if (cert.verified) {
            found.push_back(std::move(cert));
        }
    }
    std::sort(found.begin(), found.end(), [](const CommonSubspaceCert& a, const CommonSubspaceCert& b) {
        if (a.indices.size() != b.indices.size()) {
            return a.indices.size() > b.indices.size();
        }
        return a.indices < b.indices;
    });
    return found;
}

CMatrix canonicalizer(const CommonSubspaceCert& cert) {
    const auto d = static_cast<Eigen::Index>(cert.basis.rows());
    const auto k = cert.basis.cols();
    CMatrix q(d, d);
    if (cert.basis_subset) {
        q.setZero();
        std::vector<bool> used(static_cast<std::size_t>(d), false);
        Eigen::Index col = 0;
        for (auto i : cert.indices) {
            q(static_cast<Eigen::Index>(i), col++) = 1.0;
            used[i] = true;
        }
        for (Eigen::Index i = 0; i < d; ++i) {
            if (!used[static_cast<std::size_t>(i)]) {
                q(i, col++) = 1.0;
            }
        }
        return q;
    }
    if (k == 0) {
        return CMatrix::Identity(d, d);
    }
    Eigen::HouseholderQR<CMatrix> qr(cert.basis);
    const CMatrix full = qr.householderQ() * CMatrix::Identity(d, d);
    q.leftCols(k) = cert.basis;
    q.rightCols(d - k) = full.rightCols(d - k);
    return q;
}

std::vector<std::size_t> stretch_permutation(std::size_t d, std::size_t d_C) {
    if (d_C >= d) {
        raise(ErrorCode::DomainError, "stretch needs d_C < d (got d_C = " + std::to_string(d_C) +
                                          ", d = " + std::to_string(d) + ")");
    }
    std::vector<std::size_t> image(d * d);
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t xp = 0; xp < d; ++xp) {
            std::size_t out_x = x;
            std::size_t out_xp = xp;
            if (xp == 0 && x >= d_C) {
                out_x = d_C;
                out_xp = x;
            } else if (x == d_C && xp >= d_C) {
                out_x = xp;
                out_xp = 0;
            }
            image[x * d + xp] = out_x * d + out_xp;
        }
    }
    return image;
}

Operator build_stretch_unitary(std::size_t d, std::size_t d_C) {
    const auto image = stretch_permutation(d, d_C);
    const auto n = static_cast<Eigen::Index>(d * d);
    CMatrix u = CMatrix::Zero(n, n);
    for (std::size_t in = 0; in < image.size(); ++in) {
        u(static_cast<Eigen::Index>(image[in]), static_cast<Eigen::Index>(in)) = 1.0;
    }
    return Operator(SubsystemLayout{{"X", d}, {"X'", d}}, std::move(u));
}

PureState stretch_registers(const PureState& psi, const std::vector<std::string>& parties,
                            const std::vector<std::string>& ancillas, const CMatrix& q, std::size_t d_C) {
    if (parties.size() != ancillas.size()) {
        raise(ErrorCode::DimMismatch, "one ancilla per party is required");
    }
    PureState state = psi;
    const CMatrix q_dag = q.adjoint();
    const bool trivial_q = q.isIdentity(0.0);
    for (const auto& p : parties) {
        if (!trivial_q) {
            state = apply_local(state, {p}, q_dag);
        }
    }
    for (std::size_t k = 0; k < parties.size(); ++k) {
        const std::size_t d = state.layout().dim(parties[k]);
        const std::size_t zero = 0;
        state = tensor(state, PureState::basis_state(SubsystemLayout{{ancillas[k], d}}, {&zero, 1}));
    }
    for (std::size_t k = 0; k < parties.size(); ++k) {
        const std::size_t d = state.layout().dim(parties[k]);
        if (d_C == d) {
            continue;
        }
        const Operator u = build_stretch_unitary(d, d_C);
        state = apply_local(state, {parties[k], ancillas[k]}, u.matrix());
    }
    return state;
}

StretchedState stretch(const PureState& psi, const CommonSubspaceCert& cert) {
    CommonSubspaceCert checked = verify_common(psi, cert);
    if (!checked.verified) {
        raise(ErrorCode::NotCommon, "subspace is not common (decomposition residual " +
                                        residual_text(checked.residual_decomposition) + ", symmetry residual " +
                                        residual_text(checked.residual_symmetry) + ")");
    }
    LabelSet order{kPartyA, kPartyB};
    for (const auto& l : psi.layout().complement({kPartyA, kPartyB})) {
        order.push_back(l);
    }
    const PureState front = permute(psi, order);
    const PureState rotated = rotate_parties(front, checked.V, checked.W);
    const std::size_t d_C = checked.subspace_dim();
    const std::size_t d = checked.dim();

    StretchedState out{stretch_registers(rotated, {kPartyA, kPartyB}, {kAncillaA, kAncillaB},
                                         canonicalizer(checked), d_C),
                       checked, 0, std::nullopt};
    if (d_C < d) {
        out.eta_index = d_C;
    }
    return out;
}

} // namespace qui
