#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "qui/layout.hpp"

namespace qui {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Normalisation tolerance enforced on construction of a (non-fragment) state.
inline constexpr double kNormTolerance = 1e-9;

/// Complex amplitude vector over a labelled tensor layout.
///
/// A regular state has unit norm (to kNormTolerance). Sub-normalised summands such as
/// the common and uncommon pieces of a decomposition are built through `fragment()` and
/// carry a flag so they are never mistaken for a state.
class PureState {
  public:
    PureState(SubsystemLayout layout, CVector amplitudes);

    static PureState fragment(SubsystemLayout layout, CVector amplitudes);
    static PureState basis_state(SubsystemLayout layout, std::span<const std::size_t> multi_index);

    const SubsystemLayout& layout() const noexcept { return layout_; }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    bool is_fragment() const noexcept { return fragment_; }
    std::size_t dim() const noexcept { return layout_.total_dim(); }
    double norm() const { return amplitudes_.norm(); }

    Complex amplitude(std::span<const std::size_t> multi_index) const;

    /// Same kind (state or fragment) as *this, new content.
    PureState rebuilt(SubsystemLayout layout, CVector amplitudes) const;

  private:
    PureState(SubsystemLayout layout, CVector amplitudes, bool fragment);

    SubsystemLayout layout_;
    CVector amplitudes_;
    bool fragment_ = false;
};

} // namespace qui
