#ifndef SQZQFI_CSV_HPP
#define SQZQFI_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace sqzqfi {

// %.17g round-trips doubles bit-exactly; the "C" locale is never changed so
// output is '.'-separated and grouping-free regardless of environment.
inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_brief(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline void write_csv_row(std::ostream& os, const std::vector<double>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << format_full(row[i]);
    }
    os << '\n';
}

inline void write_csv_header(std::ostream& os, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) os << ',';
        os << names[i];
    }
    os << '\n';
}

} // namespace sqzqfi

#endif
