#pragma once

#include <filesystem>
#include <variant>

#include "lhss/numkit/matrix.hpp"

namespace lhss {

using MatrixMarketObject = std::variant<RealSymMatrix, ComplexVector>;

/// Reads a Matrix Market file. Supported kinds:
///   matrix coordinate|array real|integer symmetric  -> RealSymMatrix
///   matrix coordinate|array complex|real|integer general with one column
///                                                   -> ComplexVector
/// Coordinate matrices are returned sparse, array matrices dense.
/// Throws ParseError (message names the line), KindMismatch or IoError.
MatrixMarketObject read_matrix_market(const std::filesystem::path& path);
RealSymMatrix read_sym_matrix(const std::filesystem::path& path);
ComplexVector read_complex_vector(const std::filesystem::path& path);

/// Symmetric matrices are written as coordinate real symmetric (lower
/// triangle); vectors as array complex general. Values use 17 significant
/// digits, so a round trip is bit-exact.
void write_matrix_market(const RealSymMatrix& m, const std::filesystem::path& path);
void write_matrix_market(const ComplexVector& v, const std::filesystem::path& path);

}  // namespace lhss
