#include "random_states.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/QR>

namespace qui::test {

CVector random_vector(std::size_t n, Rng& rng) {
    std::normal_distribution<double> g;
    CVector v(static_cast<Eigen::Index>(n));
    for (auto& z : v) {
        z = Complex(g(rng), g(rng));
    }
    return v;
}

PureState random_state(const SubsystemLayout& layout, Rng& rng) {
    const CVector v = random_vector(layout.total_dim(), rng);
    return PureState(layout, v / v.norm());
}

CMatrix random_unitary(std::size_t d, Rng& rng) {
    const auto n = static_cast<Eigen::Index>(d);
    CMatrix g(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        g.col(c) = random_vector(d, rng);
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex phase = r(k, k) / std::abs(r(k, k));
        q.col(k) *= phase;
    }
    return q;
}

CommonCase random_common_case(std::size_t d, std::size_t d_R, const std::vector<std::size_t>& subset, Rng& rng,
                              bool hide_with_unitaries) {
    const SubsystemLayout layout{{"A", d}, {"B", d}, {"R", d_R}};
    std::vector<bool> in(d, false);
    for (auto i : subset) {
        in[i] = true;
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    const CVector noise = random_vector(layout.total_dim(), rng);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (in[i] != in[j] || (in[i] && j < i)) {
                continue;
            }
            for (std::size_t k = 0; k < d_R; ++k) {
                const std::size_t ij = layout.ravel(std::vector<std::size_t>{i, j, k});
                v[static_cast<Eigen::Index>(ij)] = noise[static_cast<Eigen::Index>(ij)];
                if (in[i]) {
                    v[static_cast<Eigen::Index>(layout.ravel(std::vector<std::size_t>{j, i, k}))] =
                        noise[static_cast<Eigen::Index>(ij)];
                }
            }
        }
    }
    PureState psi(layout, v / v.norm());
    CMatrix V, W;
    if (hide_with_unitaries) {
        V = random_unitary(d, rng);
        W = random_unitary(d, rng);
        psi = apply_local(apply_local(psi, {"A"}, V.adjoint()), {"B"}, W.adjoint());
    }
    return {psi, CommonSubspaceCert::from_indices(d, subset, V, W)};
}

CommonCase random_common_case(Rng& rng, std::size_t max_d, std::size_t max_dR, bool hide_with_unitaries) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(2, max_d)(rng);
    const std::size_t d_R = std::uniform_int_distribution<std::size_t>(1, max_dR)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> subset(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(subset.begin(), subset.end());
    return random_common_case(d, d_R, subset, rng, hide_with_unitaries);
}

} // namespace qui::test
