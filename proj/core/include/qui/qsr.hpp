#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "qui/pure_state.hpp"
#include "qui/qstate.hpp"

namespace qui {

inline const std::array<std::string, 3> kQsrParties{"A1", "A2", "A3"};
inline const std::array<std::string, 3> kQsrAncillas{"A1'", "A2'", "A3'"};

/// Three-party analogue of CommonSubspaceCert: one subspace shared by all parties, one
/// common unitary per party; the symmetry residual is measured against the cyclic rotation.
struct ThreePartyCert {
    CMatrix basis;
    std::vector<std::size_t> indices;
    bool basis_subset = false;
    std::array<CMatrix, 3> V;
    double residual_decomposition = std::numeric_limits<double>::infinity();
    double residual_symmetry = std::numeric_limits<double>::infinity();
    bool verified = false;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(basis.rows()); }
    std::size_t subspace_dim() const noexcept { return static_cast<std::size_t>(basis.cols()); }

    static ThreePartyCert from_indices(std::size_t d, std::vector<std::size_t> indices,
                                       std::array<CMatrix, 3> V = {});
};

/// party index i + k with "modulo 3, offset 1" arithmetic: ((i - 1 + k) mod 3) + 1.
int cyclic_party(int i, int k) noexcept;

ThreePartyCert verify_three_common(const PureState& xi, ThreePartyCert cert);

/// Re-verifies (NotCommon on failure) and returns the stretched state on
/// [A1, A2, A3, <reference...>, A1', A2', A3'].
PureState stretch_three(const PureState& xi, const ThreePartyCert& cert);

/// S(A_i|A_{i+1}) + S(A_{i+1}|A_{i+2}) + S(A_{i+2}); starter in {1, 2, 3}.
double rate_u_qsr(const PureState& xi, int starter);

/// S(A'_i|A_{i+1}A'_{i+1}) + S(A'_{i+1}|A_{i+2}A'_{i+2}) + S(A'_{i+2}|A_{i+3}) evaluated on an
/// already stretched state.
double rate_v_qsr_stretched(const PureState& stretched, int starter);
double rate_v_qsr(const PureState& xi, const ThreePartyCert& cert, int starter);

struct QsrRateReport {
    std::array<double, 3> u{};
    std::array<double, 3> v{};
    double u_old_min = 0.0;
    double v_new_min = 0.0;

    static QsrRateReport from_rates(const std::array<double, 3>& u, const std::array<double, 3>& v);
};

/// Closed-form merge-and-send (u) and subspace-rotation (v) rates of the xi family with
/// three-party common subspace span{|3>,|4>,|5>}.
QsrRateReport qsr_closed_forms(const ZetaParams& params);

/// The same six rates from reduced entropies of xi and its three-party stretched state.
QsrRateReport qsr_numeric(const PureState& xi, const ThreePartyCert& cert);

ThreePartyCert xi_common_cert();

} // namespace qui
