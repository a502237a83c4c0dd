#pragma once

// CSV signal files. One row per division node, increasing t starting at 0;
// the last row is the value at T. Scalar signals use the header "t,value",
// parameter signals "t,u1,...,uL". Numbers are written in shortest
// round-trip form, so write-then-read is lossless.

#include "preisach/error.hpp"
#include "preisach/signals.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace preisach::csv {

inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view field, std::size_t line) {
    double x = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, x);
    if (field.empty() || res.ec != std::errc{} || res.ptr != last) {
        throw ParseError("line " + std::to_string(line) + ": malformed number '" + std::string(field) + "'");
    }
    if (!std::isfinite(x)) throw ParseError("line " + std::to_string(line) + ": non-finite value");
    return x;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Strict numeric table: one header line, then rows of equal width.
inline Table read_table(std::istream& in) {
    Table table;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    bool saw_blank = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            saw_blank = true;
            continue;
        }
        if (saw_blank) throw ParseError("line " + std::to_string(lineno) + ": data after blank line");
        auto fields = split(line);
        if (!have_header) {
            if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
                fields = split(std::string_view(line).substr(3));
            }
            for (auto f : fields) table.header.emplace_back(f);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(table.header.size()) +
                             " fields, found " + std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) row.push_back(parse_double(f, lineno));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("empty CSV input");
    return table;
}

namespace detail {

inline std::vector<double> time_column(const Table& t) {
    std::vector<double> d;
    d.reserve(t.rows.size());
    for (const auto& r : t.rows) d.push_back(r[0]);
    return d;
}

template <typename F>
auto wrap(F&& f) {
    try {
        return f();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

} // namespace detail

inline StepSignal read_step_signal(std::istream& in) {
    const auto t = read_table(in);
    if (t.header.size() != 2 || t.header[0] != "t" || t.header[1] != "value") {
        throw ParseError("scalar signal header must be 't,value'");
    }
    std::vector<double> v;
    for (const auto& r : t.rows) v.push_back(r[1]);
    return detail::wrap([&] { return StepSignal(detail::time_column(t), std::move(v)); });
}

inline ParamSignal read_param_signal(std::istream& in) {
    const auto t = read_table(in);
    if (t.header.size() < 2 || t.header[0] != "t") throw ParseError("parameter signal header must be 't,u1,...,uL'");
    for (std::size_t l = 1; l < t.header.size(); ++l) {
        if (t.header[l] != "u" + std::to_string(l)) {
            throw ParseError("parameter column " + std::to_string(l) + " must be named 'u" + std::to_string(l) + "'");
        }
    }
    const std::size_t L = t.header.size() - 1;
    std::vector<double> flat;
    for (const auto& r : t.rows) flat.insert(flat.end(), r.begin() + 1, r.end());
    return detail::wrap([&] { return ParamSignal(detail::time_column(t), L, std::move(flat)); });
}

inline void write_step_signal(std::ostream& out, const StepSignal& s) {
    out << "t,value\n";
    for (std::size_t n = 0; n < s.nodes(); ++n) {
        out << format_double(s.division()[n]) << ',' << format_double(s[n]) << '\n';
    }
}

inline void write_param_signal(std::ostream& out, const ParamSignal& s) {
    out << 't';
    for (std::size_t l = 1; l <= s.dim(); ++l) out << ",u" << l;
    out << '\n';
    for (std::size_t n = 0; n < s.nodes(); ++n) {
        out << format_double(s.division()[n]);
        for (double x : s.node(n)) out << ',' << format_double(x);
        out << '\n';
    }
}

inline void write_table(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return in;
}

inline StepSignal load_step_signal(const std::string& path) {
    auto in = open_input(path);
    return read_step_signal(in);
}

inline ParamSignal load_param_signal(const std::string& path) {
    auto in = open_input(path);
    return read_param_signal(in);
}

/// Write through a callback into a file; throws ParseError on an empty path
/// and std::runtime_error on I/O failure.
template <typename Writer>
void save(const std::string& path, Writer&& writer) {
    if (path.empty()) throw ParseError("output path is empty");
    std::ostringstream buf;
    writer(buf);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << buf.str();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace preisach::csv
