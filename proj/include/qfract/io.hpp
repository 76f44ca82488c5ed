#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfract::io {

// CSV with '.' decimals, '\n' line endings, one header row. Doubles are
// written with 17 significant digits so a write/read round trip is exact.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_double(double v);
std::string csv_to_string(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// Binary 16-bit PGM (magic P5, maxval 65535, big-endian samples).
void write_pgm16(const std::string& path, std::size_t rows, std::size_t cols,
                 const std::vector<std::uint16_t>& pixels);

// log10(f+1) of the field, min-max normalized to the full 16-bit range.
// Returns the normalization constants through the out parameters; a constant
// field maps to all-zero pixels.
std::vector<std::uint16_t> normalize_log_image(const std::vector<double>& f,
                                               double& norm_min, double& norm_max);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string utc_timestamp();

}  // namespace qfract::io
