#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <initializer_list>
#include <vector>

#include "chebotarev/error.hpp"

namespace chebotarev {

using BigInt = boost::multiprecision::cpp_int;

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Rows must all have the same length; an empty list gives a 0 x cols matrix.
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<BigInt>> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return from_rows(r, r.empty() ? 0 : r.front().size());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // Rows of space-separated integers, one row per line.
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Parses the matrix file format: rows of space-separated integers. Blank
// lines and lines starting with '#' are ignored.
inline IntMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<BigInt>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t cols = 0;
  bool first = true;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::vector<BigInt> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t digits = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
        if (digits == tok.size() || tok.find_first_not_of("0123456789", digits) != std::string::npos)
          throw std::runtime_error("");
        row.emplace_back(tok);
      } catch (const std::exception&) {
        throw InputError("not an integer: '" + tok + "'");
      }
    }
    if (first) {
      cols = row.size();
      first = false;
    } else if (row.size() != cols) {
      throw InputError("ragged matrix rows");
    }
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, cols);
}

}  // namespace chebotarev
