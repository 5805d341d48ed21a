#include "lhss/numkit/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <cmath>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, fmt::format("line {}: {}", line, what));
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

struct Header {
  std::string format;    // coordinate | array
  std::string field;     // real | integer | complex | pattern
  std::string symmetry;  // general | symmetric | ...
};

// Reads whitespace-separated numbers from one line; fails unless exactly
// `count` tokens parse.
std::vector<double> numbers(const std::string& text, std::size_t count, std::size_t line, const char* what) {
  std::istringstream in(text);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      parse_error(line, fmt::format("malformed {}: '{}'", what, tok));
    }
    if (used != tok.size()) parse_error(line, fmt::format("malformed {}: '{}'", what, tok));
    out.push_back(v);
  }
  if (out.size() != count) {
    parse_error(line, fmt::format("malformed {}: expected {} values, found {}", what, count, out.size()));
  }
  return out;
}

Index as_index(double v, std::size_t line, const char* what) {
  if (!(v >= 0) || v != static_cast<double>(static_cast<long long>(v))) {
    parse_error(line, fmt::format("{} must be a non-negative integer", what));
  }
  return static_cast<Index>(v);
}

}  // namespace

MatrixMarketObject read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());

  std::string text;
  std::size_t line = 0;
  if (!std::getline(in, text)) parse_error(1, "empty file");
  ++line;
  Header h;
  {
    std::istringstream hs(text);
    std::string banner, object;
    hs >> banner >> object >> h.format >> h.field >> h.symmetry;
    if (banner != "%%MatrixMarket") parse_error(line, "missing %%MatrixMarket banner");
    object = lowercase(object);
    h.format = lowercase(h.format);
    h.field = lowercase(h.field);
    h.symmetry = lowercase(h.symmetry);
    if (object != "matrix") throw Error(ErrorCode::KindMismatch, "unsupported object '" + object + "'");
    if (h.format != "coordinate" && h.format != "array") parse_error(line, "unknown format '" + h.format + "'");
  }
  const bool is_complex = h.field == "complex";
  if (h.field != "real" && h.field != "integer" && h.field != "complex") {
    throw Error(ErrorCode::KindMismatch, "unsupported field '" + h.field + "'");
  }
  if (h.symmetry != "symmetric" && h.symmetry != "general") {
    throw Error(ErrorCode::KindMismatch, "unsupported symmetry '" + h.symmetry + "'");
  }

  // Skip comments to the size line.
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text[0] == '%') continue;
    if (is_blank(text)) continue;
    break;
  }
  if (!in && text.empty()) parse_error(line, "missing dimension line");
  const bool coordinate = h.format == "coordinate";
  const auto dims = numbers(text, coordinate ? 3 : 2, line, "dimension line");
  const Index rows = as_index(dims[0], line, "row count");
  const Index cols = as_index(dims[1], line, "column count");
  const Index nnz = coordinate ? as_index(dims[2], line, "entry count") : rows * cols;
  if (rows < 1 || cols < 1) parse_error(line, "dimensions must be positive");

  const std::size_t per_entry = (coordinate ? 2 : 0) + (is_complex ? 2 : 1);

  if (h.symmetry == "symmetric") {
    if (is_complex) throw Error(ErrorCode::KindMismatch, "complex symmetric matrices are not supported");
    if (rows != cols) parse_error(line, "symmetric matrix must be square");
    std::vector<Triplet> trip;
    Index read = 0;
    Index array_i = 0, array_j = 0;
    const Index expected = coordinate ? nnz : rows * (rows + 1) / 2;
    while (read < expected && std::getline(in, text)) {
      ++line;
      if (is_blank(text) || text[0] == '%') continue;
      const auto v = numbers(text, per_entry, line, "entry");
      Index i = 0, j = 0;
      double value = 0.0;
      if (coordinate) {
        i = as_index(v[0], line, "row index") - 1;
        j = as_index(v[1], line, "column index") - 1;
        value = v[2];
        if (i < 0 || j < 0 || i >= rows || j >= cols) parse_error(line, "entry index out of range");
        if (i < j) std::swap(i, j);
      } else {
        i = array_i;
        j = array_j;
        value = v[0];
        if (++array_i == rows) {
          ++array_j;
          array_i = array_j;
        }
      }
      if (!std::isfinite(value)) parse_error(line, "entry is not finite");
      trip.emplace_back(i, j, value);
      ++read;
    }
    if (read < expected) parse_error(line, fmt::format("expected {} entries, found {}", expected, read));
    return RealSymMatrix::from_lower_triplets(rows, trip, coordinate ? Layout::Sparse : Layout::Dense);
  }

  if (cols != 1) throw Error(ErrorCode::KindMismatch, "general matrices are only accepted as single-column vectors");
  ComplexVector out = ComplexVector::Zero(rows);
  Index read = 0;
  while (read < nnz && std::getline(in, text)) {
    ++line;
    if (is_blank(text) || text[0] == '%') continue;
    const auto v = numbers(text, per_entry, line, "entry");
    Index i = read;
    std::size_t off = 0;
    if (coordinate) {
      i = as_index(v[0], line, "row index") - 1;
      if (as_index(v[1], line, "column index") != 1 || i < 0 || i >= rows) parse_error(line, "entry index out of range");
      off = 2;
    }
    const Complex value(v[off], is_complex ? v[off + 1] : 0.0);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) parse_error(line, "entry is not finite");
    out(i) += value;
    ++read;
  }
  if (read < nnz) parse_error(line, fmt::format("expected {} entries, found {}", nnz, read));
  return out;
}

RealSymMatrix read_sym_matrix(const std::filesystem::path& path) {
  auto obj = read_matrix_market(path);
  if (auto* m = std::get_if<RealSymMatrix>(&obj)) return std::move(*m);
  throw Error(ErrorCode::KindMismatch, path.string() + " holds a vector, a real symmetric matrix was required");
}

ComplexVector read_complex_vector(const std::filesystem::path& path) {
  auto obj = read_matrix_market(path);
  if (auto* v = std::get_if<ComplexVector>(&obj)) return std::move(*v);
  throw Error(ErrorCode::KindMismatch, path.string() + " holds a symmetric matrix, a vector was required");
}

void write_matrix_market(const RealSymMatrix& m, const std::filesystem::path& path) {
  const auto trip = m.lower_triplets();
  std::string body = "%%MatrixMarket matrix coordinate real symmetric\n";
  body += fmt::format("{} {} {}\n", m.n(), m.n(), trip.size());
  for (const auto& t : trip) body += fmt::format("{} {} {:.17g}\n", t.row() + 1, t.col() + 1, t.value());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << body;
}

void write_matrix_market(const ComplexVector& v, const std::filesystem::path& path) {
  std::string body = "%%MatrixMarket matrix array complex general\n";
  body += fmt::format("{} 1\n", v.size());
  for (Index i = 0; i < v.size(); ++i) body += fmt::format("{:.17g} {:.17g}\n", v(i).real(), v(i).imag());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << body;
}

}  // namespace lhss
