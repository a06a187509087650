#include "stiefel/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stiefel {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, ',')) fields.push_back(item);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw IoError("malformed number '" + s + "'");
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_report_csv(const std::vector<ErrorReport>& rows) {
  std::string out(kReportHeader);
  out += '\n';
  for (const ErrorReport& r : rows) {
    out += r.method + ',' + r.manifold + ',' + format_number(r.h) + ',' + std::to_string(r.steps) +
           ',' + format_number(r.mean_error) + ',' + format_number(r.relative_error) + ',' +
           format_number(r.runtime_ms) + '\n';
  }
  return out;
}

std::vector<ErrorReport> parse_report_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw IoError("report CSV must start with the header '" + std::string(kReportHeader) + "'");
  }
  std::vector<ErrorReport> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 7) throw IoError("report row has " + std::to_string(f.size()) + " fields");
    ErrorReport r;
    r.method = f[0];
    r.manifold = f[1];
    r.h = to_double(f[2]);
    r.steps = static_cast<std::size_t>(std::stoull(f[3]));
    r.mean_error = to_double(f[4]);
    r.relative_error = to_double(f[5]);
    r.runtime_ms = to_double(f[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string format_plot_data(const ErrorReport& report) {
  std::string out = "t,error\n";
  for (std::size_t i = 0; i < report.per_sample.size(); ++i) {
    out += format_number(report.times[i]) + ',' + format_number(report.per_sample[i]) + '\n';
  }
  return out;
}

std::string format_trajectory_csv(const TrajectoryRecord& rec) {
  std::string out = "t";
  if (!rec.points.empty()) {
    const Matrix& first = rec.points.front();
    for (Eigen::Index i = 0; i < first.rows(); ++i)
      for (Eigen::Index j = 0; j < first.cols(); ++j)
        out += ",s_" + std::to_string(i) + "_" + std::to_string(j);
  }
  out += '\n';
  for (std::size_t k = 0; k < rec.points.size(); ++k) {
    out += format_number(rec.times[k]);
    const Matrix& s = rec.points[k];
    for (Eigen::Index i = 0; i < s.rows(); ++i)
      for (Eigen::Index j = 0; j < s.cols(); ++j) out += ',' + format_number(s(i, j));
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace stiefel
