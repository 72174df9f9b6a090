#include "lrd/series_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "lrd/errors.hpp"

namespace lrd::io {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SeriesFormat format_for(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".bin" || ext == ".f64") ? SeriesFormat::binary : SeriesFormat::csv;
}

void write_series(const std::filesystem::path& path, std::span<const double> values, SeriesFormat format) {
  if (format == SeriesFormat::csv) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "value\n";
    char buf[32];
    for (double v : values) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out.write(buf, end - buf);
      out.put('\n');
    }
    if (!out) throw IoError("write failed: " + path.string());
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const std::uint64_t count = to_little<std::uint64_t>(values.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (double v : values) {
    const double le = to_little(v);
    out.write(reinterpret_cast<const char*>(&le), sizeof le);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<double> read_series(const std::filesystem::path& path, SeriesFormat format) {
  std::vector<double> values;
  if (format == SeriesFormat::csv) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto field = trim(line);
      if (field.empty()) continue;
      if (lineno == 1 && field == "value") continue;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": not a finite number: " + field);
      }
      values.push_back(v);
    }
    return values;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::uint64_t count = 0;
  if (!in.read(reinterpret_cast<char*>(&count), sizeof count)) throw IoError("truncated header: " + path.string());
  count = to_little(count);
  const auto size = std::filesystem::file_size(path);
  if (size != sizeof count + count * sizeof(double)) {
    throw IoError("length prefix does not match file size: " + path.string());
  }
  values.resize(count);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw IoError("truncated payload: " + path.string());
  for (double& v : values) v = to_little(v);
  return values;
}

}  // namespace lrd::io
