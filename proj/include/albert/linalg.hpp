#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "albert/rational.hpp"

namespace albert::linalg {

using Vec = std::vector<Rational>;

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rational& c, const Vec& a);
Vec neg(const Vec& a);
Rational dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& a);
std::string to_string(const Vec& a);

// Dense matrix of exact rationals, row-major.
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat from_columns(const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec apply(const Vec& x) const;
  Mat mul(const Mat& other) const;
  Mat transpose() const;
  Mat plus(const Mat& other) const;
  Mat minus(const Mat& other) const;
  Mat scaled(const Rational& c) const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);
  bool operator==(const Mat& other) const;
  bool operator!=(const Mat& other) const { return !(*this == other); }
  bool is_identity() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Exact linear algebra. The elimination core clears denominators row-wise and
// runs fraction-free (Bareiss) pivoting, so intermediate entries stay integral.
std::size_t rank(Mat m);
Rational det(Mat m);
std::optional<Vec> solve(const Mat& a, const Vec& b); // one solution of Ax=b, nullopt if inconsistent
std::optional<Mat> inverse(const Mat& a);             // nullopt if singular
std::vector<Vec> nullspace(const Mat& a);             // basis of kernel

// Incremental span of row vectors, kept in reduced echelon form.
class Span {
public:
  explicit Span(std::size_t n) : n_(n) {}
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  bool insert(Vec v);              // returns true if the span grew
  bool contains(const Vec& v) const;
  std::optional<Vec> coordinates_in(const std::vector<Vec>& basis, const Vec& v) const; // static helper-ish
  const std::vector<Vec>& echelon_rows() const { return rows_; }

private:
  Vec reduce(Vec v) const;
  std::size_t n_;
  std::vector<Vec> rows_;          // reduced echelon, pivot = 1
  std::vector<std::size_t> pivots_;
};

// Coordinates of v in the given (independent) column family, nullopt if v is outside the span.
std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v);

} // namespace albert::linalg
