#include "qui/pure_state.hpp"

#include <cmath>

#include "qui/errors.hpp"

namespace qui {

PureState::PureState(SubsystemLayout layout, CVector amplitudes, bool fragment)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)), fragment_(fragment) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
        raise(ErrorCode::DimMismatch, "amplitude vector has length " + std::to_string(amplitudes_.size()) +
                                          ", layout dimension is " + std::to_string(layout_.total_dim()));
    }
    if (!fragment_) {
        const double residual = std::abs(amplitudes_.norm() - 1.0);
        if (!(residual <= kNormTolerance)) {
            raise(ErrorCode::NormalizationError,
                  "state norm deviates from 1 by " + residual_text(residual));
        }
    }
}

PureState::PureState(SubsystemLayout layout, CVector amplitudes)
    : PureState(std::move(layout), std::move(amplitudes), false) {}

PureState PureState::fragment(SubsystemLayout layout, CVector amplitudes) {
    return PureState(std::move(layout), std::move(amplitudes), true);
}

PureState PureState::basis_state(SubsystemLayout layout, std::span<const std::size_t> multi_index) {
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    amps(static_cast<Eigen::Index>(layout.ravel(multi_index))) = 1.0;
    return PureState(std::move(layout), std::move(amps));
}

Complex PureState::amplitude(std::span<const std::size_t> multi_index) const {
    return amplitudes_(static_cast<Eigen::Index>(layout_.ravel(multi_index)));
}

PureState PureState::rebuilt(SubsystemLayout layout, CVector amplitudes) const {
    return PureState(std::move(layout), std::move(amplitudes), fragment_);
}

} // namespace qui
