#include "spinbeam/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinbeam {

std::string format_double(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

namespace {

void write_json(std::ostringstream& os, const nlohmann::ordered_json& j, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{" << nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << "," << nl;
                first = false;
                os << pad << nlohmann::json(it.key()).dump() << (indent > 0 ? ": " : ":");
                write_json(os, it.value(), indent, depth + 1);
            }
            os << nl << close_pad << "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[" << nl;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << "," << nl;
                os << pad;
                write_json(os, j[i], indent, depth + 1);
            }
            os << nl << close_pad << "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            // JSON has no infinities; they are written as strings
            if (std::isfinite(v))
                os << format_double(v, 17);
            else
                os << '"' << format_double(v, 17) << '"';
            return;
        }
        default: os << j.dump(); return;
    }
}

}  // namespace

std::string to_json_text(const nlohmann::ordered_json& j, int indent) {
    std::ostringstream os;
    write_json(os, j, indent, 0);
    os << "\n";
    return os.str();
}

std::string CsvTable::number(double v) { return format_double(v, 10); }

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size()) throw std::invalid_argument("CSV row width differs from header");
    rows.push_back(std::move(cells));
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

std::string to_csv(const CsvTable& t) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += quote(cells[i]);
        }
        out += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace spinbeam
