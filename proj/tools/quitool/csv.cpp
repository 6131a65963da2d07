#include "csv.hpp"

#include <charconv>
#include <cmath>

namespace qui::cli {

std::string format_number(double v) {
    if (v == 0.0) {
        v = 0.0; // drop the sign of -0
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return {buf, res.ptr};
}

void Table::write(std::ostream& out) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        out << (k ? "," : "") << header[k];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out << (k ? "," : "") << format_number(row[k]);
        }
        out << '\n';
    }
}

} // namespace qui::cli
