#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace lrd::io {

enum class SeriesFormat { csv, binary };

// Picks the format from the extension: ".bin" / ".f64" are binary, anything else CSV.
SeriesFormat format_for(const std::filesystem::path& path);

// CSV: header line `value`, then one number per line.
// Binary: uint64 little-endian count, then that many little-endian float64.
void write_series(const std::filesystem::path& path, std::span<const double> values, SeriesFormat format);
std::vector<double> read_series(const std::filesystem::path& path, SeriesFormat format);

inline void write_series(const std::filesystem::path& path, std::span<const double> values) {
  write_series(path, values, format_for(path));
}
inline std::vector<double> read_series(const std::filesystem::path& path) {
  return read_series(path, format_for(path));
}

}  // namespace lrd::io
