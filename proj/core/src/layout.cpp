#include "qui/layout.hpp"

#include <algorithm>
#include <set>

#include "qui/errors.hpp"

namespace qui {

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> entries) : entries_(std::move(entries)) {
    std::set<std::string> seen;
    for (const auto& e : entries_) {
        if (e.dim < 1) {
            raise(ErrorCode::DomainError, "subsystem '" + e.label + "' has dimension 0");
        }
        if (!seen.insert(e.label).second) {
            raise(ErrorCode::LabelCollision, "duplicate label '" + e.label + "'");
        }
        total_dim_ *= e.dim;
    }
}

SubsystemLayout::SubsystemLayout(std::initializer_list<Subsystem> entries)
    : SubsystemLayout(std::vector<Subsystem>(entries)) {}

bool SubsystemLayout::contains(const std::string& label) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const Subsystem& e) { return e.label == label; });
}

std::size_t SubsystemLayout::position(const std::string& label) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].label == label) {
            return i;
        }
    }
    raise(ErrorCode::UnknownLabel, "no subsystem labelled '" + label + "'");
}

std::size_t SubsystemLayout::dim(const std::string& label) const {
    return entries_[position(label)].dim;
}

LabelSet SubsystemLayout::labels() const {
    LabelSet out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
        out.push_back(e.label);
    }
    return out;
}

std::vector<std::size_t> SubsystemLayout::dims() const {
    std::vector<std::size_t> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
        out.push_back(e.dim);
    }
    return out;
}

LabelSet SubsystemLayout::complement(const LabelSet& labels) const {
    for (const auto& l : labels) {
        position(l);
    }
    LabelSet out;
    for (const auto& e : entries_) {
        if (std::find(labels.begin(), labels.end(), e.label) == labels.end()) {
            out.push_back(e.label);
        }
    }
    return out;
}

SubsystemLayout SubsystemLayout::restricted(const LabelSet& labels) const {
    for (const auto& l : labels) {
        position(l);
    }
    std::vector<Subsystem> out;
    for (const auto& e : entries_) {
        if (std::find(labels.begin(), labels.end(), e.label) != labels.end()) {
            out.push_back(e);
        }
    }
    return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::ordered(const LabelSet& labels) const {
    std::vector<Subsystem> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        out.push_back(entries_[position(l)]);
    }
    return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
    std::vector<Subsystem> out = entries_;
    out.insert(out.end(), other.entries_.begin(), other.entries_.end());
    return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::renamed(const std::string& from, const std::string& to) const {
    std::vector<Subsystem> out = entries_;
    out[position(from)].label = to;
    return SubsystemLayout(std::move(out));
}

std::size_t SubsystemLayout::ravel(std::span<const std::size_t> multi_index) const {
    if (multi_index.size() != entries_.size()) {
        raise(ErrorCode::DimMismatch, "multi-index has " + std::to_string(multi_index.size()) +
                                          " entries, layout has " + std::to_string(entries_.size()));
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (multi_index[i] >= entries_[i].dim) {
            raise(ErrorCode::DomainError, "index " + std::to_string(multi_index[i]) +
                                              " out of range for '" + entries_[i].label + "'");
        }
        flat = flat * entries_[i].dim + multi_index[i];
    }
    return flat;
}

std::vector<std::size_t> SubsystemLayout::unravel(std::size_t flat) const {
    std::vector<std::size_t> out(entries_.size());
    for (std::size_t i = entries_.size(); i-- > 0;) {
        out[i] = flat % entries_[i].dim;
        flat /= entries_[i].dim;
    }
    return out;
}

std::size_t dim_of(const SubsystemLayout& layout, const LabelSet& labels) {
    std::size_t d = 1;
    for (const auto& l : labels) {
        d *= layout.dim(l);
    }
    return d;
}

} // namespace qui
