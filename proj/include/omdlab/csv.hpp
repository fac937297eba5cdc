#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "omdlab/geometry.hpp"

namespace omdlab::csv {

/// Shortest "%.17g" rendering; round-trips every finite double exactly.
std::string format_double(double value);
double parse_double(const std::string& text, const std::string& context);
long long parse_int(const std::string& text, const std::string& context);

std::vector<std::string> split(const std::string& line, char sep = ',');
std::string join(const std::vector<std::string>& fields, char sep = ',');
std::string trim(const std::string& text);

/// Lines without trailing '\r'. Throws IoError if the file cannot be read.
std::vector<std::string> read_lines(const std::filesystem::path& path);
/// Throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Points file: header "t,x1,...,xd", one row per point, t = 1..n.
void write_points(const std::filesystem::path& path, const std::vector<Vector>& points);
std::vector<Vector> read_points(const std::filesystem::path& path);

}  // namespace omdlab::csv
