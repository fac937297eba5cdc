#include "omdlab/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "omdlab/errors.hpp"

namespace omdlab::csv {

std::string format_double(double value) {
  char buf[64];
  // Try increasing precision until the text parses back to the same bits.
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

double parse_double(const std::string& text, const std::string& context) {
  const std::string t = trim(text);
  if (t.empty()) throw InputError(context + ": empty numeric field");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw InputError(context + ": cannot parse '" + t + "' as a number");
  }
  return v;
}

long long parse_int(const std::string& text, const std::string& context) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw InputError(context + ": cannot parse '" + t + "' as an integer");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& fields, char sep) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += sep;
    out += fields[i];
  }
  return out;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (in.bad()) throw IoError("read error on '" + path.string() + "'");
  return lines;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write error on '" + path.string() + "'");
}

void write_points(const std::filesystem::path& path, const std::vector<Vector>& points) {
  std::ostringstream os;
  const Eigen::Index d = points.empty() ? 0 : points.front().size();
  os << "t";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << (i + 1);
  os << '\n';
  for (std::size_t t = 0; t < points.size(); ++t) {
    if (points[t].size() != d) throw InputError("points file rows must share one dimension");
    os << (t + 1);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << format_double(points[t][i]);
    os << '\n';
  }
  write_text(path, os.str());
}

std::vector<Vector> read_points(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw InputError("'" + path.string() + "' is empty");
  const auto header = split(lines.front());
  if (header.empty() || trim(header.front()) != "t") {
    throw InputError("'" + path.string() + "': expected header starting with 't'");
  }
  const std::size_t d = header.size() - 1;
  std::vector<Vector> points;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const auto fields = split(lines[ln]);
    const std::string ctx = path.string() + ":" + std::to_string(ln + 1);
    if (fields.size() != d + 1) throw InputError(ctx + ": expected " + std::to_string(d + 1) + " fields");
    Vector x(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) x[static_cast<Eigen::Index>(i)] = parse_double(fields[i + 1], ctx);
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace omdlab::csv
