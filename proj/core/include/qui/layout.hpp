#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qui {

using LabelSet = std::vector<std::string>;

struct Subsystem {
    std::string label;
    std::size_t dim = 1;

    bool operator==(const Subsystem&) const = default;
};

/// Ordered list of labelled tensor factors.
///
/// Index convention (state files depend on it): the multi-index (i_1, ..., i_k)
/// maps to the flat index i_1*d_2*...*d_k + ... + i_{k-1}*d_k + i_k, i.e. row-major
/// over the layout order with the last subsystem varying fastest.
class SubsystemLayout {
  public:
    SubsystemLayout() = default;
    explicit SubsystemLayout(std::vector<Subsystem> entries);
    SubsystemLayout(std::initializer_list<Subsystem> entries);

    const std::vector<Subsystem>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t total_dim() const noexcept { return total_dim_; }

    bool contains(const std::string& label) const noexcept;
    /// Position of `label` in the layout; throws UnknownLabel.
    std::size_t position(const std::string& label) const;
    std::size_t dim(const std::string& label) const;

    LabelSet labels() const;
    std::vector<std::size_t> dims() const;

    /// Labels not in `labels`, in layout order. Throws UnknownLabel for foreign labels.
    LabelSet complement(const LabelSet& labels) const;
    /// Sub-layout with the given labels in their original layout order.
    SubsystemLayout restricted(const LabelSet& labels) const;
    /// Sub-layout with the labels in the order given.
    SubsystemLayout ordered(const LabelSet& labels) const;
    /// Concatenation; throws LabelCollision on shared labels.
    SubsystemLayout concat(const SubsystemLayout& other) const;
    SubsystemLayout renamed(const std::string& from, const std::string& to) const;

    std::size_t ravel(std::span<const std::size_t> multi_index) const;
    std::vector<std::size_t> unravel(std::size_t flat) const;

    bool operator==(const SubsystemLayout& other) const { return entries_ == other.entries_; }

  private:
    std::vector<Subsystem> entries_;
    std::size_t total_dim_ = 1;
};

/// Product of the dims of `labels` within `layout`.
std::size_t dim_of(const SubsystemLayout& layout, const LabelSet& labels);

} // namespace qui
