#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "defeig/complex_matrix.hpp"
#include "defeig/errors.hpp"

namespace defeig {

enum class MatrixFormat { matrix_market, csv };

namespace io_detail {

inline std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Exact decimal-to-double conversion; leading '+' is allowed.
inline double parse_double(std::string_view tok, int line_no) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  require(ec == std::errc() && ptr == tok.data() + tok.size(),
          Errc::parse_error,
          "line " + std::to_string(line_no) + ": bad number '" +
              std::string(tok) + "'");
  return out;
}

// Shortest decimal representation that reparses to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

// Complex scalar in the CSV notation: `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i`.
inline Complex parse_complex_token(std::string_view raw, int line_no) {
  std::string tok = trim(raw);
  require(!tok.empty(), Errc::parse_error,
          "line " + std::to_string(line_no) + ": empty entry");
  if (tok.back() != 'i' && tok.back() != 'I')
    return {parse_double(tok, line_no), 0.0};

  std::string_view body(tok.data(), tok.size() - 1);
  // Split before the sign of the imaginary part, skipping exponent signs.
  size_t split = std::string_view::npos;
  for (size_t p = body.size(); p-- > 1;) {
    char c = body[p];
    if ((c == '+' || c == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string_view::npos) {
    // Purely imaginary: `bi`, `i`, `-i`, `+i`.
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, parse_double(body, line_no)};
  }
  double re = parse_double(body.substr(0, split), line_no);
  std::string_view im = body.substr(split);
  double imv;
  if (im == "+")
    imv = 1.0;
  else if (im == "-")
    imv = -1.0;
  else
    imv = parse_double(im, line_no);
  return {re, imv};
}

inline std::string format_complex_token(Complex v) {
  std::string s = format_double(v.real());
  if (v.imag() != 0.0) {
    if (v.imag() >= 0.0 || std::isnan(v.imag())) s += '+';
    s += format_double(v.imag());
    s += 'i';
  }
  return s;
}

}  // namespace io_detail

/// Reads a dense matrix in Matrix Market "array" format, real or complex
/// field, general symmetry; entries are stored column-major in the file.
inline ComplexMatrix read_matrix_market(std::istream& in) {
  std::string line;
  int line_no = 0;

  require(static_cast<bool>(std::getline(in, line)), Errc::parse_error,
          "empty Matrix Market stream");
  ++line_no;
  {
    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    require(banner == "%%MatrixMarket", Errc::parse_error,
            "line 1: missing %%MatrixMarket banner");
    require(object == "matrix" && format == "array", Errc::parse_error,
            "line 1: only 'matrix array' files are supported");
    require(field == "real" || field == "complex", Errc::parse_error,
            "line 1: field must be real or complex");
    require(symmetry == "general", Errc::parse_error,
            "line 1: only general symmetry is supported");
  }
  const bool complex_field = line.find("complex") != std::string::npos;

  // Skip comments, read the size line.
  int rows = 0, cols = 0;
  for (;;) {
    require(static_cast<bool>(std::getline(in, line)), Errc::parse_error,
            "unexpected end of file before the size line");
    ++line_no;
    std::string t = io_detail::trim(line);
    if (t.empty() || t.front() == '%') continue;
    std::istringstream sz(t);
    if (!(sz >> rows >> cols)) {
      raise(Errc::parse_error,
            "line " + std::to_string(line_no) + ": malformed size line");
    }
    std::string extra;
    require(!(sz >> extra), Errc::parse_error,
            "line " + std::to_string(line_no) +
                ": array size line must hold exactly two integers");
    break;
  }
  require(rows >= 1 && cols >= 1, Errc::parse_error,
          "line " + std::to_string(line_no) + ": non-positive dimensions");

  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      std::string t;
      do {
        require(static_cast<bool>(std::getline(in, line)), Errc::parse_error,
                "unexpected end of file: expected " +
                    std::to_string(rows * cols) + " entries");
        ++line_no;
        t = io_detail::trim(line);
      } while (t.empty() || t.front() == '%');
      std::istringstream ls(t);
      std::string a, b, extra;
      if (complex_field) {
        require(static_cast<bool>(ls >> a >> b), Errc::parse_error,
                "line " + std::to_string(line_no) +
                    ": complex entry needs two values");
        m(i, j) = {io_detail::parse_double(a, line_no),
                   io_detail::parse_double(b, line_no)};
      } else {
        require(static_cast<bool>(ls >> a), Errc::parse_error,
                "line " + std::to_string(line_no) + ": missing value");
        m(i, j) = {io_detail::parse_double(a, line_no), 0.0};
      }
      require(!(ls >> extra), Errc::parse_error,
              "line " + std::to_string(line_no) + ": trailing tokens");
    }
  }
  m.ensure_finite();
  return m;
}

/// Writes Matrix Market array format; picks the real field when every entry
/// has zero imaginary part. Values use the shortest decimal form that
/// reparses to the identical double.
inline void write_matrix_market(std::ostream& out, const ComplexMatrix& m) {
  bool complex_field = false;
  for (int j = 0; j < m.cols() && !complex_field; ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) {
        complex_field = true;
        break;
      }
  out << "%%MatrixMarket matrix array "
      << (complex_field ? "complex" : "real") << " general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i) {
      out << io_detail::format_double(m(i, j).real());
      if (complex_field) out << ' ' << io_detail::format_double(m(i, j).imag());
      out << '\n';
    }
  }
}

/// Reads comma-separated rows; entries are `a`, `a+bi` or `a-bi`.
inline ComplexMatrix read_csv(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  int line_no = 0;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = io_detail::trim(line);
    if (t.empty()) continue;
    std::vector<Complex> row;
    size_t start = 0;
    for (;;) {
      size_t comma = t.find(',', start);
      std::string_view cell(t.data() + start,
                            (comma == std::string::npos ? t.size() : comma) -
                                start);
      row.push_back(io_detail::parse_complex_token(cell, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (width == 0) width = row.size();
    require(row.size() == width, Errc::parse_error,
            "line " + std::to_string(line_no) + ": expected " +
                std::to_string(width) + " entries, found " +
                std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), Errc::parse_error, "CSV stream holds no rows");
  ComplexMatrix m(static_cast<int>(rows.size()), static_cast<int>(width));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  m.ensure_finite();
  return m;
}

inline void write_csv(std::ostream& out, const ComplexMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << io_detail::format_complex_token(m(i, j));
    }
    out << '\n';
  }
}

inline ComplexMatrix read_matrix(const std::string& path, MatrixFormat fmt) {
  std::ifstream in(path);
  require(in.good(), Errc::io_error, "cannot open '" + path + "'");
  return fmt == MatrixFormat::matrix_market ? read_matrix_market(in)
                                            : read_csv(in);
}

/// FNV-1a 64-bit digest of a file's bytes; identifies the input in reports.
inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::io_error, "cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

}  // namespace defeig
