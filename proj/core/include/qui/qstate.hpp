#pragma once

#include <array>
#include <string>
#include <string_view>

#include "qui/pure_state.hpp"

namespace qui {

/// Non-negative coefficients (c0, c1, c2, c3) with unit sum of squares.
class ZetaParams {
  public:
    /// Throws DomainError for negative entries and NormalizationError when
    /// |sum c_i^2 - 1| > 1e-9.
    static ZetaParams from_coefficients(const std::array<double, 4>& c);

    const std::array<double, 4>& c() const noexcept { return c_; }
    std::array<double, 4> squares() const noexcept;

  private:
    explicit ZetaParams(const std::array<double, 4>& c) : c_(c) {}
    std::array<double, 4> c_;
};

/// c0 = sqrt((5-2x)/8), c1 = sqrt((3-x)/8), c2 = sqrt(x/8), c3 = sqrt(x/4), x in [0, 1].
ZetaParams zeta_from_x(double x);

/// Tripartite family on [A:6, B:6, R:6]:
/// c0/sqrt2 (|000> + |011>) + c1/sqrt2 (|122> + |223>) + c2/sqrt2 (|334> + |444>) + c3 |555>.
PureState make_zeta(const ZetaParams& params);

/// Four-party analogue on [A1:6, A2:6, A3:6, R:6]:
/// c0/sqrt2 (|0010> + |0101>) + c1/sqrt2 (|1202> + |2213>) + c2/sqrt2 (|3334> + |4444>) + c3 |5555>.
PureState make_xi(const ZetaParams& params);

enum class NamedState { GHZ3, EPR, ProductEPR };

/// GHZ3 on [A,B,R]; EPR on [A,B]; ProductEPR = EPR_{A R1} (x) EPR_{R2 B} on [A,B,R1,R2].
PureState make_named(NamedState name);
/// Parses "GHZ3", "EPR" or "ProductEPR"; throws UnknownState.
NamedState parse_named_state(std::string_view name);
std::string_view to_string(NamedState name) noexcept;

/// Bell pair (|00> + |11>)/sqrt2 on two qubits with the given labels.
PureState make_epr(const std::string& first, const std::string& second);

/// SWAP of the two (equal-dimension) subsystems; involution.
PureState exchange_final_state(const PureState& psi, const std::string& label_a, const std::string& label_b);

/// Cyclic rotation |i>_1 |j>_2 |k>_3 -> |k>_1 |i>_2 |j>_3: party i's content moves to
/// party i+1. Order three.
PureState rotate_final_state(const PureState& xi, const std::array<std::string, 3>& labels);

} // namespace qui
