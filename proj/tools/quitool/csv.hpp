#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qui::cli {

/// 12 significant digits, locale independent, no negative zero.
std::string format_number(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Comma separated, header first, LF line endings.
    void write(std::ostream& out) const;
};

} // namespace qui::cli
