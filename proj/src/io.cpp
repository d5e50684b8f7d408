#include "gave/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gave/errors.hpp"

namespace gave::io {

namespace {

std::string format_entry(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
}

double parse_double(const std::string& token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError("not a number: '" + token + "'");
  return v;
}

// Next non-comment, non-blank line; false at end of input.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

void write_matrix(std::ostream& out, const Matrix& a, const std::vector<std::string>& comments) {
  write_comments(out, comments);
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_entry(a(i, j));
    }
    out << '\n';
  }
}

void write_vector(std::ostream& out, const Vector& v, const std::vector<std::string>& comments) {
  write_comments(out, comments);
  out << v.size() << " 1\n";
  for (double x : v) out << format_entry(x) << '\n';
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("missing 'rows cols' header");
  std::istringstream header(line);
  long long rows = 0;
  long long cols = 0;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows <= 0 || cols <= 0) {
    throw ParseError("bad 'rows cols' header: '" + line + "'");
  }
  const auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  std::vector<double> data;
  data.reserve(count);
  std::string token;
  while (data.size() < count && in >> token) {
    if (token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    data.push_back(parse_double(token));
  }
  if (data.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " entries, got " +
                     std::to_string(data.size()));
  }
  if (in >> token) throw ParseError("trailing data after matrix entries: '" + token + "'");
  try {
    return Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Vector read_vector(std::istream& in) {
  const Matrix m = read_matrix(in);
  if (m.cols() != 1 && m.rows() != 1) {
    throw ParseError("vector file must be n x 1 or 1 x n, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  }
  return v;
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  while (next_content_line(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw ParseError("empty CSV cell in row " + std::to_string(rows));
      data.push_back(parse_double(cell.substr(b, e - b + 1)));
      ++count;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (rows == 0) cols = count;
    else if (count != cols) throw ParseError("ragged CSV row " + std::to_string(rows));
    ++rows;
  }
  if (rows == 0) throw ParseError("empty CSV input");
  try {
    return Matrix(rows, cols, std::move(data));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void save_matrix(const std::filesystem::path& path, const Matrix& a,
                 const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_matrix(out, a, comments);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

void save_vector(const std::filesystem::path& path, const Vector& v,
                 const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_vector(out, v, comments);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return path.extension() == ".csv" ? read_matrix_csv(in) : read_matrix(in);
}

Vector load_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  if (path.extension() == ".csv") {
    const Matrix m = read_matrix_csv(in);
    if (m.cols() != 1 && m.rows() != 1) throw ParseError("CSV vector must be a single row or column");
    Vector v;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    }
    return v;
  }
  return read_vector(in);
}

}  // namespace gave::io
