#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace pccu {

class IoError : public Error {
 public:
  using Error::Error;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_for_write(const std::filesystem::path& path, bool binary = false) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

inline std::string csv_header(int dimension, int components) {
  std::string h = dimension == 2 ? "x,y" : "x";
  for (int c = 0; c < components; ++c) h += ",comp_" + std::to_string(c);
  return h;
}

/// One row per interior cell (k outer, j inner) with cell-center
/// coordinates, %.17g numerics.
template <int D>
void write_field_csv(const std::filesystem::path& path, const Field<D>& f) {
  const Grid& g = f.grid();
  std::ofstream out = open_for_write(path);
  out << csv_header(g.dimension, D) << '\n';
  f.for_each_interior([&](int j, int k, const State<D>& u) {
    out << format_number(g.xc(j));
    if (g.dimension == 2) out << ',' << format_number(g.yc(k));
    for (double v : u) out << ',' << format_number(v);
    out << '\n';
  });
  finish_write(out, path);
}

enum class SliceKind { diagonal, y0 };

inline const char* slice_file_name(SliceKind s) {
  return s == SliceKind::diagonal ? "slice_diag.csv" : "slice_y0.csv";
}

/// Row index of the cell containing y = 0 (the upper one if y = 0 is a face).
inline int y0_row(const Grid& g) {
  const int k = static_cast<int>(std::floor((0.0 - g.y_min) / g.dy));
  return std::clamp(k, 0, g.ny - 1);
}

/// Nearest-cell samples along y = x (requires a square cell layout) or
/// along y = 0. Header x,y,comp_0..
template <int D>
void write_slice_csv(const std::filesystem::path& path, const Field<D>& f, SliceKind kind) {
  const Grid& g = f.grid();
  if (g.dimension != 2) throw ConfigError("slices need a 2-D field");
  std::ofstream out = open_for_write(path);
  out << csv_header(2, D) << '\n';
  auto row = [&](int j, int k) {
    out << format_number(g.xc(j)) << ',' << format_number(g.yc(k));
    for (double v : f.at(j, k)) out << ',' << format_number(v);
    out << '\n';
  };
  if (kind == SliceKind::diagonal) {
    if (g.nx != g.ny) throw ConfigError("diagonal slice needs nx == ny");
    for (int j = 0; j < g.nx; ++j) row(j, j);
  } else {
    const int k = y0_row(g);
    for (int j = 0; j < g.nx; ++j) row(j, k);
  }
  finish_write(out, path);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV file " + path.string());
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("bad number '" + cell + "' in " + path.string());
      }
    }
    if (row.size() != t.header.size())
      throw IoError("row width does not match header in " + path.string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Reads a field written by write_field_csv back onto `grid`.
template <int D>
Field<D> read_field_csv(const std::filesystem::path& path, const Grid& grid) {
  const CsvTable t = read_csv(path);
  const int offset = grid.dimension == 2 ? 2 : 1;
  if (static_cast<int>(t.header.size()) != offset + D)
    throw IoError("column count does not match component count in " + path.string());
  if (t.rows.size() != grid.interior_cells())
    throw IoError("row count does not match grid in " + path.string());
  Field<D> f(grid);
  std::size_t r = 0;
  f.for_each_interior([&](int, int, State<D>& u) {
    for (int c = 0; c < D; ++c) u[c] = t.rows[r][offset + c];
    ++r;
  });
  return f;
}

/// Binary 16-bit PGM (big-endian), top image row = largest y.
inline void write_pgm16(const std::filesystem::path& path, const std::vector<double>& shade, int nx,
                        int ny) {
  if (shade.size() != static_cast<std::size_t>(nx) * ny)
    throw ConfigError("image size does not match nx * ny");
  std::ofstream out = open_for_write(path, true);
  out << "P5\n" << nx << ' ' << ny << "\n65535\n";
  for (int k = ny - 1; k >= 0; --k) {
    for (int j = 0; j < nx; ++j) {
      const double s = std::clamp(shade[static_cast<std::size_t>(k) * nx + j], 0.0, 1.0);
      const auto v = static_cast<unsigned>(std::lround(65535.0 * s));
      const char bytes[2] = {static_cast<char>((v >> 8) & 0xff), static_cast<char>(v & 0xff)};
      out.write(bytes, 2);
    }
  }
  finish_write(out, path);
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_for_write(path);
  out << text;
  finish_write(out, path);
}

}  // namespace pccu
