#include "qui/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qui/errors.hpp"

namespace qui {

namespace {

void require_distinct(const LabelSet& labels) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            raise(ErrorCode::LabelCollision, "label '" + l + "' listed twice");
        }
    }
}

struct SplitIndex {
    std::vector<std::size_t> row;
    std::vector<std::size_t> col;
    std::size_t rows = 1;
    std::size_t cols = 1;
};

SplitIndex split_index(const SubsystemLayout& layout, const LabelSet& rows) {
    require_distinct(rows);
    const std::size_t n = layout.size();
    const auto dims = layout.dims();
    std::vector<std::size_t> row_stride(n, 0);
    std::vector<std::size_t> col_stride(n, 0);
    std::vector<bool> is_row(n, false);

    SplitIndex out;
    for (std::size_t k = rows.size(); k-- > 0;) {
        const std::size_t p = layout.position(rows[k]);
        is_row[p] = true;
        row_stride[p] = out.rows;
        out.rows *= dims[p];
    }
    for (std::size_t p = n; p-- > 0;) {
        if (!is_row[p]) {
            col_stride[p] = out.cols;
            out.cols *= dims[p];
        }
    }
    out.row = strided_indices(dims, row_stride);
    out.col = strided_indices(dims, col_stride);
    return out;
}

// Columns of m that are not identically zero; sparse family states keep most columns empty.
std::vector<Eigen::Index> nonzero_columns(const CMatrix& m) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (m.col(j).cwiseAbs2().maxCoeff() > 0.0) {
            cols.push_back(j);
        }
    }
    return cols;
}

CMatrix gram(const CMatrix& m) {
    const auto cols = nonzero_columns(m);
    if (cols.size() == static_cast<std::size_t>(m.cols())) {
        return m * m.adjoint();
    }
    CMatrix compact(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        compact.col(static_cast<Eigen::Index>(k)) = m.col(cols[k]);
    }
    return compact * compact.adjoint();
}

void require_subset(const SubsystemLayout& layout, const LabelSet& labels) {
    for (const auto& l : labels) {
        layout.position(l);
    }
}

} // namespace

// ---------------------------------------------------------------------------

Operator::Operator(SubsystemLayout layout, CMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(layout_.total_dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        raise(ErrorCode::DimMismatch, "operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                                          std::to_string(matrix_.cols()) + ", layout dimension is " +
                                          std::to_string(d));
    }
}

Operator Operator::identity(SubsystemLayout layout) {
    const auto d = static_cast<Eigen::Index>(layout.total_dim());
    return Operator(std::move(layout), CMatrix::Identity(d, d));
}

DensityOperator::DensityOperator(Operator op, Trusted) : op_(std::move(op)) {}

DensityOperator::DensityOperator(Operator op) : op_(std::move(op)) {
    const CMatrix& m = op_.matrix();
    const double herm = hermiticity_residual(m);
    if (herm > kHermitianTolerance) {
        raise(ErrorCode::NotHermitian, "hermiticity residual " + residual_text(herm));
    }
    CMatrix sym = 0.5 * (m + m.adjoint());
    const double trace = sym.trace().real();
    if (std::abs(trace - 1.0) > 1e-9) {
        raise(ErrorCode::NormalizationError, "trace is " + residual_text(trace));
    }
    const auto eig = hermitian_eigenvalues(sym);
    if (!eig.empty() && eig.front() < -1e-10) {
        raise(ErrorCode::NotPositive, "minimum eigenvalue " + residual_text(eig.front()));
    }
    op_ = Operator(op_.layout(), std::move(sym));
}

DensityOperator DensityOperator::from_state(const PureState& psi) {
    const CVector& a = psi.amplitudes();
    return DensityOperator(Operator(psi.layout(), a * a.adjoint()));
}

// ---------------------------------------------------------------------------

Operator tensor(const Operator& a, const Operator& b) {
    const SubsystemLayout layout = a.layout().concat(b.layout());
    const CMatrix& ma = a.matrix();
    const CMatrix& mb = b.matrix();
    CMatrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
        }
    }
    return Operator(layout, std::move(out));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    return DensityOperator(tensor(a.op(), b.op()), DensityOperator::Trusted{});
}

PureState tensor(const PureState& a, const PureState& b) {
    SubsystemLayout layout = a.layout().concat(b.layout());
    const CVector& va = a.amplitudes();
    const CVector& vb = b.amplitudes();
    CVector out(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); ++i) {
        out.segment(i * vb.size(), vb.size()) = va(i) * vb;
    }
    if (a.is_fragment() || b.is_fragment()) {
        return PureState::fragment(std::move(layout), std::move(out));
    }
    return PureState(std::move(layout), std::move(out));
}

std::vector<std::size_t> strided_indices(std::span<const std::size_t> dims,
                                         std::span<const std::size_t> strides) {
    std::vector<std::size_t> out{0};
    std::size_t total = 1;
    for (auto d : dims) {
        total *= d;
    }
    out.reserve(total);
    for (std::size_t p = 0; p < dims.size(); ++p) {
        const std::size_t prev = out.size();
        std::vector<std::size_t> next;
        next.reserve(prev * dims[p]);
        for (std::size_t e = 0; e < prev; ++e) {
            for (std::size_t digit = 0; digit < dims[p]; ++digit) {
                next.push_back(out[e] + digit * strides[p]);
            }
        }
        out = std::move(next);
    }
    return out;
}

CMatrix split_matrix(const PureState& psi, const LabelSet& rows) {
    const SplitIndex idx = split_index(psi.layout(), rows);
    CMatrix m(static_cast<Eigen::Index>(idx.rows), static_cast<Eigen::Index>(idx.cols));
    const CVector& a = psi.amplitudes();
    for (std::size_t flat = 0; flat < idx.row.size(); ++flat) {
        m(static_cast<Eigen::Index>(idx.row[flat]), static_cast<Eigen::Index>(idx.col[flat])) =
            a(static_cast<Eigen::Index>(flat));
    }
    return m;
}

PureState merge_matrix(const PureState& like, const LabelSet& rows, const CMatrix& m) {
    const SplitIndex idx = split_index(like.layout(), rows);
    if (m.rows() != static_cast<Eigen::Index>(idx.rows) || m.cols() != static_cast<Eigen::Index>(idx.cols)) {
        raise(ErrorCode::DimMismatch, "matrix shape does not match the split");
    }
    CVector a(static_cast<Eigen::Index>(idx.row.size()));
    for (std::size_t flat = 0; flat < idx.row.size(); ++flat) {
        a(static_cast<Eigen::Index>(flat)) =
            m(static_cast<Eigen::Index>(idx.row[flat]), static_cast<Eigen::Index>(idx.col[flat]));
    }
    return like.rebuilt(like.layout(), std::move(a));
}

PureState permute(const PureState& psi, const LabelSet& order) {
    const SubsystemLayout& layout = psi.layout();
    if (order.size() != layout.size()) {
        raise(ErrorCode::DimMismatch, "permutation must list every label exactly once");
    }
    require_distinct(order);
    SubsystemLayout target = layout.ordered(order);
    // stride of each source position inside the target layout
    std::vector<std::size_t> stride(layout.size());
    std::size_t s = 1;
    for (std::size_t k = order.size(); k-- > 0;) {
        stride[layout.position(order[k])] = s;
        s *= target.entries()[k].dim;
    }
    const auto dims = layout.dims();
    const auto map = strided_indices(dims, stride);
    CVector out(psi.amplitudes().size());
    for (std::size_t flat = 0; flat < map.size(); ++flat) {
        out(static_cast<Eigen::Index>(map[flat])) = psi.amplitudes()(static_cast<Eigen::Index>(flat));
    }
    return psi.rebuilt(std::move(target), std::move(out));
}

PureState apply_local(const PureState& psi, const LabelSet& targets, const CMatrix& op) {
    CMatrix m = split_matrix(psi, targets);
    if (op.rows() != m.rows() || op.cols() != m.rows()) {
        raise(ErrorCode::DimMismatch, "local operator is " + std::to_string(op.rows()) + "x" +
                                          std::to_string(op.cols()) + ", target space has dimension " +
                                          std::to_string(m.rows()));
    }
    const auto cols = nonzero_columns(m);
    if (cols.size() * 2 < static_cast<std::size_t>(m.cols())) {
        for (auto j : cols) {
            m.col(j) = op * m.col(j);
        }
    } else {
        m = op * m;
    }
    return merge_matrix(psi, targets, m);
}

Operator partial_trace(const Operator& op, const LabelSet& keep) {
    const SubsystemLayout& layout = op.layout();
    if (keep.empty()) {
        raise(ErrorCode::EmptyKeepSet, "partial trace needs at least one kept subsystem");
    }
    require_subset(layout, keep);
    require_distinct(keep);

    // kept labels in original order
    const LabelSet kept_ordered = layout.complement(layout.complement(keep));
    const SplitIndex idx = split_index(layout, kept_ordered);
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(idx.rows), static_cast<Eigen::Index>(idx.rows));

    // group flat indices by traced-out index
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups(idx.cols);
    for (std::size_t flat = 0; flat < idx.row.size(); ++flat) {
        groups[idx.col[flat]].emplace_back(idx.row[flat], flat);
    }
    const CMatrix& m = op.matrix();
    for (const auto& g : groups) {
        for (const auto& [ri, fi] : g) {
            for (const auto& [rj, fj] : g) {
                out(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(rj)) +=
                    m(static_cast<Eigen::Index>(fi), static_cast<Eigen::Index>(fj));
            }
        }
    }
    return Operator(layout.restricted(kept_ordered), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, const LabelSet& keep) {
    return DensityOperator(partial_trace(rho.op(), keep), DensityOperator::Trusted{});
}

DensityOperator reduced_density(const PureState& psi, const LabelSet& keep) {
    if (keep.empty()) {
        raise(ErrorCode::EmptyKeepSet, "reduced state needs at least one kept subsystem");
    }
    require_subset(psi.layout(), keep);
    const LabelSet kept_ordered = psi.layout().complement(psi.layout().complement(keep));
    CMatrix rho = gram(split_matrix(psi, kept_ordered));
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(Operator(psi.layout().restricted(kept_ordered), std::move(rho)),
                           DensityOperator::Trusted{});
}

// ---------------------------------------------------------------------------

double hermiticity_residual(const CMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const CMatrix& u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
    return std::max((u * u.adjoint() - id).cwiseAbs().maxCoeff(),
                    (u.adjoint() * u - id).cwiseAbs().maxCoeff());
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        raise(ErrorCode::DimMismatch, "eigenvalues need a square matrix");
    }
    const double herm = hermiticity_residual(m);
    if (herm > kHermitianTolerance) {
        raise(ErrorCode::NotHermitian, "hermiticity residual " + residual_text(herm));
    }
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double p : eigenvalues) {
        if (p > kEigenCutoff) {
            s -= p * std::log2(p);
        }
    }
    return std::max(s, 0.0);
}

double von_neumann_entropy(const Operator& rho) {
    const auto eig = hermitian_eigenvalues(rho.matrix());
    if (!eig.empty() && eig.front() < -kNegativeEigenvalueTolerance) {
        raise(ErrorCode::NotPositive, "eigenvalue " + residual_text(eig.front()));
    }
    return entropy_of_spectrum(eig);
}

double von_neumann_entropy(const DensityOperator& rho) { return von_neumann_entropy(rho.op()); }

double entropy(const PureState& psi, const LabelSet& labels) {
    const SubsystemLayout& layout = psi.layout();
    require_subset(layout, labels);
    require_distinct(labels);
    LabelSet side = layout.complement(layout.complement(labels));
    LabelSet other = layout.complement(side);
    if (dim_of(layout, other) < dim_of(layout, side)) {
        std::swap(side, other);
    }
    const CMatrix rho = gram(split_matrix(psi, side));
    return entropy_of_spectrum(hermitian_eigenvalues(rho));
}

namespace {

LabelSet joined(const LabelSet& target, const LabelSet& condition) {
    for (const auto& t : target) {
        if (std::find(condition.begin(), condition.end(), t) != condition.end()) {
            raise(ErrorCode::LabelCollision, "label '" + t + "' is both target and condition");
        }
    }
    LabelSet all = target;
    all.insert(all.end(), condition.begin(), condition.end());
    return all;
}

} // namespace

double conditional_entropy(const PureState& psi, const LabelSet& target, const LabelSet& condition) {
    const LabelSet all = joined(target, condition);
    return entropy(psi, all) - entropy(psi, condition);
}

double conditional_entropy(const DensityOperator& rho, const LabelSet& target, const LabelSet& condition) {
    const LabelSet all = joined(target, condition);
    const double joint = von_neumann_entropy(partial_trace(rho, all));
    const double cond = condition.empty() ? 0.0 : von_neumann_entropy(partial_trace(rho, condition));
    return joint - cond;
}

// ---------------------------------------------------------------------------

PureState SchmidtDecomposition::reconstruct() const {
    CMatrix m = CMatrix::Zero(left.rows(), right.rows());
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        m += coefficients[i] * left.col(k) * right.col(k).transpose();
    }
    SubsystemLayout layout = left_layout.concat(right_layout);
    CVector a(m.size());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        a.segment(r * m.cols(), m.cols()) = m.row(r).transpose();
    }
    return PureState::fragment(std::move(layout), std::move(a));
}

SchmidtDecomposition schmidt_decomposition(const PureState& psi, const LabelSet& cut) {
    const SubsystemLayout& layout = psi.layout();
    require_subset(layout, cut);
    require_distinct(cut);
    if (cut.empty() || cut.size() == layout.size()) {
        raise(ErrorCode::EmptyCut, "Schmidt cut must be a proper non-empty subset of the labels");
    }
    const LabelSet left = layout.complement(layout.complement(cut));
    const LabelSet right = layout.complement(left);
    const CMatrix m = split_matrix(psi, left);
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

    SchmidtDecomposition out;
    const Eigen::VectorXd& s = svd.singularValues();
    out.coefficients.assign(s.data(), s.data() + s.size());
    out.left = svd.matrixU();
    out.right = svd.matrixV().conjugate();
    out.left_layout = layout.restricted(left);
    out.right_layout = layout.restricted(right);
    out.rank = static_cast<std::size_t>(
        std::count_if(out.coefficients.begin(), out.coefficients.end(),
                      [](double c) { return c > kSchmidtRankCutoff; }));
    return out;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (!(a.layout() == b.layout())) {
        raise(ErrorCode::LayoutMismatch, "trace distance needs identical layouts");
    }
    const auto eig = hermitian_eigenvalues(a.matrix() - b.matrix());
    double sum = 0.0;
    for (double e : eig) {
        sum += std::abs(e);
    }
    return 0.5 * sum;
}

double trace_distance(const PureState& a, const PureState& b) {
    if (!(a.layout() == b.layout())) {
        raise(ErrorCode::LayoutMismatch, "trace distance needs identical layouts");
    }
    const CVector& va = a.amplitudes();
    const CVector& vb = b.amplitudes();
    const double na = va.squaredNorm();
    const double nb = vb.squaredNorm();
    // 1/2 || |a><a| - |b><b| ||_1 for arbitrary (possibly sub-normalised) vectors.
    // na nb - |<a|b>|^2 = na ||b_perp||^2; the projected form keeps nearly equal
    // states accurate instead of losing half the digits in 1 - |<a|b>|^2.
    const CVector b_perp = na > 0.0 ? CVector(vb - (va.dot(vb) / na) * va) : vb;
    const double disc = (na - nb) * (na - nb) + 4.0 * na * b_perp.squaredNorm();
    return 0.5 * std::sqrt(std::max(disc, 0.0));
}

} // namespace qui
