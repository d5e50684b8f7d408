#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gave/matrix.hpp"

namespace gave::io {

// Text format: optional '#' comment lines, then a "rows cols" line, then
// rows*cols whitespace-separated row-major entries. Writers emit 17
// significant digits in scientific notation, which round-trips every double.
// Vectors are n x 1 matrices; readers also accept 1 x n.

void write_matrix(std::ostream& out, const Matrix& a, const std::vector<std::string>& comments = {});
void write_vector(std::ostream& out, const Vector& v, const std::vector<std::string>& comments = {});

/// Returns a dense matrix; call Matrix::compacted() to recover band structure.
Matrix read_matrix(std::istream& in);
Vector read_vector(std::istream& in);

/// Comma-separated rows of numbers; blank and '#' lines are skipped.
Matrix read_matrix_csv(std::istream& in);

void save_matrix(const std::filesystem::path& path, const Matrix& a,
                 const std::vector<std::string>& comments = {});
void save_vector(const std::filesystem::path& path, const Vector& v,
                 const std::vector<std::string>& comments = {});

/// Dispatches on extension: ".csv" uses the CSV reader, anything else the text format.
Matrix load_matrix(const std::filesystem::path& path);
Vector load_vector(const std::filesystem::path& path);

}  // namespace gave::io
