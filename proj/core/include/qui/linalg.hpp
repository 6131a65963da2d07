#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qui/layout.hpp"
#include "qui/pure_state.hpp"

namespace qui {

/// Eigenvalues at or below this contribute nothing to an entropy (0 log 0 = 0).
inline constexpr double kEigenCutoff = 1e-12;
/// Hermiticity residual repaired by symmetrisation; anything larger is an error.
inline constexpr double kHermitianTolerance = 1e-10;
/// Entropy refuses spectra with eigenvalues below this.
inline constexpr double kNegativeEigenvalueTolerance = 1e-8;

class Operator {
  public:
    Operator(SubsystemLayout layout, CMatrix matrix);

    static Operator identity(SubsystemLayout layout);

    const SubsystemLayout& layout() const noexcept { return layout_; }
    const CMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return layout_.total_dim(); }

  private:
    SubsystemLayout layout_;
    CMatrix matrix_;
};

/// Operator that is Hermitian (1e-10, then symmetrised), has unit trace (1e-9) and no
/// eigenvalue below -1e-10.
class DensityOperator {
  public:
    explicit DensityOperator(Operator op);

    static DensityOperator from_state(const PureState& psi);

    const Operator& op() const noexcept { return op_; }
    const SubsystemLayout& layout() const noexcept { return op_.layout(); }
    const CMatrix& matrix() const noexcept { return op_.matrix(); }

  private:
    struct Trusted {};
    DensityOperator(Operator op, Trusted);

    friend DensityOperator partial_trace(const DensityOperator&, const LabelSet&);
    friend DensityOperator tensor(const DensityOperator&, const DensityOperator&);
    friend DensityOperator reduced_density(const PureState&, const LabelSet&);

    Operator op_;
};

Operator tensor(const Operator& a, const Operator& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PureState tensor(const PureState& a, const PureState& b);

/// Flat index, for every flat index of a layout with `dims`, of the same multi-index
/// under the alternative `strides`.
std::vector<std::size_t> strided_indices(std::span<const std::size_t> dims,
                                         std::span<const std::size_t> strides);

/// Amplitudes reshaped into a matrix whose rows ravel `rows` (in the order given) and
/// whose columns ravel the remaining labels in layout order.
CMatrix split_matrix(const PureState& psi, const LabelSet& rows);
/// Inverse of split_matrix.
PureState merge_matrix(const PureState& like, const LabelSet& rows, const CMatrix& m);

/// Reorders the tensor factors; `order` must be a permutation of the layout's labels.
PureState permute(const PureState& psi, const LabelSet& order);

/// Applies `op` to the joint space of `targets` (ravelled in the order given).
PureState apply_local(const PureState& psi, const LabelSet& targets, const CMatrix& op);

Operator partial_trace(const Operator& op, const LabelSet& keep);
DensityOperator partial_trace(const DensityOperator& rho, const LabelSet& keep);

/// Reduced state of a pure state on `keep` (labels in layout order), computed from the
/// amplitude matrix without forming the full density operator.
DensityOperator reduced_density(const PureState& psi, const LabelSet& keep);

double hermiticity_residual(const CMatrix& m);
double unitarity_residual(const CMatrix& u);

/// Spectrum of a Hermitian matrix in ascending order; symmetrises within
/// kHermitianTolerance, throws NotHermitian beyond it.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// -sum p log2 p over p > kEigenCutoff.
double entropy_of_spectrum(std::span<const double> eigenvalues);

double von_neumann_entropy(const Operator& rho);
double von_neumann_entropy(const DensityOperator& rho);

/// S(labels) of a pure state (or fragment); uses the smaller side of the cut.
double entropy(const PureState& psi, const LabelSet& labels);

double conditional_entropy(const PureState& psi, const LabelSet& target, const LabelSet& condition);
double conditional_entropy(const DensityOperator& rho, const LabelSet& target,
                           const LabelSet& condition);

struct SchmidtDecomposition {
    std::vector<double> coefficients; // descending, sqrt of the reduced eigenvalues
    CMatrix left;                     // columns: vectors on the cut
    CMatrix right;                    // columns: vectors on the complement
    SubsystemLayout left_layout;
    SubsystemLayout right_layout;
    std::size_t rank = 0;

    /// sum_i s_i |left_i>|right_i> on left_layout ++ right_layout.
    PureState reconstruct() const;
};

inline constexpr double kSchmidtRankCutoff = 1e-10;

SchmidtDecomposition schmidt_decomposition(const PureState& psi, const LabelSet& cut);

double trace_distance(const DensityOperator& a, const DensityOperator& b);
/// Trace distance between the projectors of two pure states.
double trace_distance(const PureState& a, const PureState& b);

} // namespace qui
