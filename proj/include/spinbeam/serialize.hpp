#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace spinbeam {

/// printf("%.*g"); non-finite values become "inf", "-inf", "nan".
std::string format_double(double v, int significant_digits);

/// JSON text with every floating-point number written with 17 significant digits.
std::string to_json_text(const nlohmann::ordered_json& j, int indent = 2);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Numbers use 10 significant digits.
    static std::string number(double v);
    void add_row(std::vector<std::string> cells);
};

/// Comma separated, '\n' line ends, cells containing ',' or '"' are quoted.
std::string to_csv(const CsvTable& table);

/// Writes the file in binary mode; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace spinbeam
