#pragma once

#include "sepnmf/dense.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace sepnmf::io {

enum class Format { csv, matrix_market, binary };

/// Picks a format from the extension: .csv, .mtx/.mm, .bin.
Format format_from_path(const std::filesystem::path& p);
Format parse_format(std::string_view s);  // "csv" | "mm" | "mtx" | "bin"

/// Headerless comma-separated values, one matrix row per line.
DenseMatrix read_csv(std::istream& in);
/// Matrix Market, real general, array or coordinate.
DenseMatrix read_matrix_market(std::istream& in);
/// Raw little-endian: "SEPNMF01", int64 rows, int64 cols, column-major doubles.
DenseMatrix read_binary(std::istream& in);

/// 17 significant digits, enough for an exact double round trip.
void write_csv(std::ostream& out, const DenseMatrix& m);
/// Array format.
void write_matrix_market(std::ostream& out, const DenseMatrix& m);
void write_binary(std::ostream& out, const DenseMatrix& m);

/// Throws IoError if the file cannot be opened, ParseError on bad content.
DenseMatrix read_matrix(const std::filesystem::path& p, Format f);
DenseMatrix read_matrix(const std::filesystem::path& p);
void write_matrix(const std::filesystem::path& p, const DenseMatrix& m, Format f);

/// FNV-1a 64 over the shape and the raw column-major bytes.
std::uint64_t checksum(const DenseMatrix& m);

}  // namespace sepnmf::io
