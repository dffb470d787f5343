#include "topsel/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "topsel/error.hpp"

namespace topsel {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto comma = line.find(',');
    std::string_view f = line.substr(0, comma);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
    out.push_back(f);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size() && numeric; ++i) numeric = parse_number(fields[i], row[i]);
    if (!numeric) {
      if (rows.empty() && table.header.empty()) {
        for (auto f : fields) table.header.emplace_back(f);
        width = fields.size();
        continue;
      }
      for (std::size_t i = 0; i < fields.size(); ++i) {
        double dummy;
        if (!parse_number(fields[i], dummy))
          fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ", column " + std::to_string(i + 1) +
                                     (fields[i].empty() ? ": missing value" : ": not a number '" + std::string(fields[i]) + "'"));
      }
    }
    for (double x : row)
      if (!std::isfinite(x)) fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": non-finite value");
    if (width == 0) width = row.size();
    if (row.size() != width)
      fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected " + std::to_string(width) + " fields, got " +
                                 std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::Parse, "no data rows");
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c)
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  try {
    return read_csv(in);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorCode::Io, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m, const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  if (!header.empty()) os << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << format_double(m(r, c));
    os << '\n';
  }
}

void write_diagram_csv(std::ostream& os, const GradedDiagram& d) {
  os << "degree,birth,death\n";
  for (const auto& p : d.points) os << p.degree << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
}

void write_path_csv(std::ostream& os, const GradientPath& path) {
  os << "step,f_value";
  const Eigen::Index p = path.points.empty() ? 0 : path.points.front().size();
  for (Eigen::Index j = 0; j < p; ++j) os << ",v_" << j + 1;
  os << '\n';
  for (std::size_t s = 0; s < path.points.size(); ++s) {
    os << s << ',' << format_double(path.values[s]);
    for (Eigen::Index j = 0; j < p; ++j) os << ',' << format_double(path.points[s](j));
    os << '\n';
  }
}

void write_events_json(std::ostream& os, const GradientPath& path) {
  nlohmann::ordered_json j;
  j["steps_taken"] = path.points.size() - 1;
  j["stalled"] = path.stalled();
  j["stopped_early"] = path.stopped_early;
  auto& events = j["events"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < path.events.size(); ++s) {
    const StepEvent& e = path.events[s];
    events.push_back({{"step", s + 1}, {"projected", e.projected}, {"region_crossed", e.region_crossed}, {"stalled", e.stalled}});
  }
  os << j.dump(1) << '\n';
}

}  // namespace topsel
