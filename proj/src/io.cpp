#include "qfract/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qfract::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_to_string(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
  write_file(path, csv_to_string(table));
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV '" + path + "'");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != table.header.size())
      throw std::runtime_error("ragged CSV row in '" + path + "'");
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_pgm16(const std::string& path, std::size_t rows, std::size_t cols,
                 const std::vector<std::uint16_t>& pixels) {
  if (pixels.size() != rows * cols)
    throw std::invalid_argument("write_pgm16: pixel count mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "P5\n" << cols << " " << rows << "\n65535\n";
  for (std::uint16_t p : pixels) {
    char hi = static_cast<char>(p >> 8);
    char lo = static_cast<char>(p & 0xFF);
    out.put(hi);
    out.put(lo);
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<std::uint16_t> normalize_log_image(const std::vector<double>& f,
                                               double& norm_min, double& norm_max) {
  std::vector<double> logf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) logf[i] = std::log10(f[i] + 1.0);
  norm_min = norm_max = logf.empty() ? 0.0 : logf[0];
  for (double v : logf) {
    norm_min = std::min(norm_min, v);
    norm_max = std::max(norm_max, v);
  }
  std::vector<std::uint16_t> px(f.size(), 0);
  double span = norm_max - norm_min;
  if (span > 0.0)
    for (std::size_t i = 0; i < f.size(); ++i)
      px[i] = static_cast<std::uint16_t>(
          std::lround((logf[i] - norm_min) / span * 65535.0));
  return px;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qfract::io
