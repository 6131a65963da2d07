#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qui/linalg.hpp"
#include "qui/pure_state.hpp"

namespace qui {

inline const std::string kPartyA = "A";
inline const std::string kPartyB = "B";
inline const std::string kAncillaA = "A'";
inline const std::string kAncillaB = "B'";

/// Residual norms at or below this certify a common subspace.
inline constexpr double kCommonTolerance = 1e-9;
/// Orthonormality / unitarity tolerance for certificate ingredients.
inline constexpr double kUnitaryTolerance = 1e-10;
/// Largest local dimension accepted by the exhaustive basis-subset search.
inline constexpr std::size_t kMaxSearchDim = 12;

/// Candidate common subspace C of the A space together with the common unitaries
/// V (on A) and W (on B). Residuals are filled in by verify_common.
struct CommonSubspaceCert {
    CMatrix basis;                    // d x d_C, orthonormal columns spanning C
    std::vector<std::size_t> indices; // ascending computational-basis indices when basis_subset
    bool basis_subset = false;
    CMatrix V;
    CMatrix W;
    double residual_decomposition = std::numeric_limits<double>::infinity();
    double residual_symmetry = std::numeric_limits<double>::infinity();
    bool verified = false;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(V.rows()); }
    std::size_t subspace_dim() const noexcept { return static_cast<std::size_t>(basis.cols()); }

    /// C = span{|i> : i in indices}. Empty V/W mean identity.
    static CommonSubspaceCert from_indices(std::size_t d, std::vector<std::size_t> indices,
                                           CMatrix V = {}, CMatrix W = {});
    static CommonSubspaceCert from_basis(CMatrix basis, CMatrix V = {}, CMatrix W = {});
    /// d_C = 0: no common subspace. Not a certificate in the strict sense (C must be
    /// non-empty); it drives the merge-and-send degenerate path.
    static CommonSubspaceCert none(std::size_t d);
};

struct Decomposition {
    PureState common;   // fragment: (P_C (x) P_C (x) 1)(V (x) W (x) 1) psi
    PureState uncommon; // fragment: (P_C^perp (x) P_C^perp (x) 1)(V (x) W (x) 1) psi
    double cross_norm = 0.0;
};

Decomposition decompose(const PureState& psi, const CommonSubspaceCert& cert);

/// Fills residual_decomposition = cross_norm, residual_symmetry = ||common - SWAP common||
/// and verified = both <= kCommonTolerance.
CommonSubspaceCert verify_common(const PureState& psi, CommonSubspaceCert cert);

/// Every non-empty subset of A's computational basis that verifies with identity
/// unitaries, sorted by subspace dimension descending (ties lexicographic).
std::vector<CommonSubspaceCert> search_basis_common(const PureState& psi);

/// Unitary d x d matrix whose first d_C columns are the certificate's basis.
CMatrix canonicalizer(const CommonSubspaceCert& cert);

/// Image of |x>|x'> (flat index x*d + x') under the register-stretching unitary for the
/// front-aligned subspace span{|0>..|d_C-1>}:
///   |i>|0>   -> |i>|0>        i <  d_C
///   |i>|0>   -> |d_C>|i>      i >= d_C
///   |d_C>|i> -> |i>|0>        i >= d_C
/// and identity on every other basis pair. d_C = 0 moves all of X into X'.
std::vector<std::size_t> stretch_permutation(std::size_t d, std::size_t d_C);

/// The same map as a unitary on [X:d, X':d]. Throws DomainError unless d_C < d.
Operator build_stretch_unitary(std::size_t d, std::size_t d_C);

/// Appends one ancilla per party (initialised to |0>) and applies the stretch unitary to
/// every (party, ancilla) pair, after rotating each party by Q^dagger. `d_C == d` skips
/// the unitary (nothing to stretch).
PureState stretch_registers(const PureState& psi, const std::vector<std::string>& parties,
                            const std::vector<std::string>& ancillas, const CMatrix& q, std::size_t d_C);

struct StretchedState {
    PureState state; // layout [A, B, <reference...>, A', B']
    CommonSubspaceCert cert;
    std::size_t zeta_index = 0;             // ancilla fill level (post-canonicalisation)
    std::optional<std::size_t> eta_index;   // A/B level holding the uncommon branch; none if d_C = d
};

/// Re-verifies `cert` against psi (NotCommon if it fails) and builds the stretched state.
StretchedState stretch(const PureState& psi, const CommonSubspaceCert& cert);

} // namespace qui
