#include "albert/linalg.hpp"

#include <sstream>

#include "albert/error.hpp"

namespace albert::linalg {

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = Rational(1);
  return v;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector add");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector sub");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(const Rational& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Vec neg(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector dot");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

std::string to_string(const Vec& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ", ";
    os << a[i];
  }
  os << ")";
  return os.str();
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols) {
  if (cols.empty()) return Mat();
  Mat m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows()) fail(Errc::DimensionMismatch, "from_columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Vec Mat::apply(const Vec& x) const {
  if (x.size() != cols_) fail(Errc::DimensionMismatch, "matrix apply");
  Vec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s;
    const Rational* row = &a_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j)
      if (!row[j].is_zero() && !x[j].is_zero()) s += row[j] * x[j];
    r[i] = std::move(s);
  }
  return r;
}

Mat Mat::mul(const Mat& other) const {
  if (cols_ != other.rows_) fail(Errc::DimensionMismatch, "matrix mul");
  Mat r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Rational& bkj = other.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::plus(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(Errc::DimensionMismatch, "matrix add");
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + other.a_[i];
  return r;
}

Mat Mat::minus(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(Errc::DimensionMismatch, "matrix sub");
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - other.a_[i];
  return r;
}

Mat Mat::scaled(const Rational& c) const {
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = c * a_[i];
  return r;
}

Vec Mat::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Mat::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) fail(Errc::DimensionMismatch, "set_column");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

bool Mat::operator==(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != other.a_[i]) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

namespace {

// Scales every row to integer entries, then runs fraction-free (Bareiss)
// forward elimination in place. Returns the pivot column of each pivot row.
std::vector<std::size_t> bareiss_forward(Mat& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t i = 0; i < rows; ++i) {
    Rational l(1);
    for (std::size_t j = 0; j < cols; ++j) l = Rational::int_lcm(l, m.at(i, j).denominator());
    if (!l.is_one())
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) *= l;
  }
  std::vector<std::size_t> pivot_cols;
  Rational prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m.at(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(r, c) - m.at(i, c) * m.at(r, j)) / prev;
      m.at(i, c) = Rational(0);
    }
    prev = m.at(r, c);
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

} // namespace

std::size_t rank(Mat m) { return bareiss_forward(m).size(); }

Rational det(Mat m) {
  if (m.rows() != m.cols()) fail(Errc::DimensionMismatch, "det of non-square matrix");
  const std::size_t n = m.rows();
  Rational result(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m.at(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(m.at(c, j), m.at(p, j));
      result = -result;
    }
    result *= m.at(c, c);
    const Rational inv = m.at(c, c).inv();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      const Rational f = m.at(i, c) * inv;
      for (std::size_t j = c + 1; j < n; ++j)
        if (!m.at(c, j).is_zero()) m.at(i, j) -= f * m.at(c, j);
      m.at(i, c) = Rational(0);
    }
  }
  return result;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) fail(Errc::DimensionMismatch, "solve");
  Mat aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto pivots = bareiss_forward(aug);
  // Inconsistent iff some pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t k = pivots.size(); k-- > 0;) {
    std::size_t c = pivots[k];
    Rational s = aug.at(k, a.cols());
    for (std::size_t j = c + 1; j < a.cols(); ++j)
      if (!aug.at(k, j).is_zero()) s -= aug.at(k, j) * x[j];
    x[c] = s / aug.at(k, c);
  }
  // Verify (free variables are zero; the residual must vanish for consistency).
  Vec r = a.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != b[i]) return std::nullopt;
  return x;
}

std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols()) fail(Errc::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Rational(1);
  }
  auto pivots = bareiss_forward(aug);
  std::size_t r = 0;
  for (auto c : pivots)
    if (c < n) ++r;
  if (r < n) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    Vec x(n);
    for (std::size_t k = n; k-- > 0;) {
      Rational s = aug.at(k, n + col);
      for (std::size_t j = k + 1; j < n; ++j)
        if (!aug.at(k, j).is_zero()) s -= aug.at(k, j) * x[j];
      x[k] = s / aug.at(k, k);
    }
    inv.set_column(col, x);
  }
  return inv;
}

std::vector<Vec> nullspace(const Mat& a) {
  Mat m = a;
  auto pivots = bareiss_forward(m);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec x(n);
    x[f] = Rational(1);
    for (std::size_t k = pivots.size(); k-- > 0;) {
      std::size_t c = pivots[k];
      Rational s;
      for (std::size_t j = c + 1; j < n; ++j)
        if (!m.at(k, j).is_zero()) s -= m.at(k, j) * x[j];
      x[c] = s / m.at(k, c);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

Vec Span::reduce(Vec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational c = v[pivots_[k]]; // copy: the loop body overwrites the pivot slot
    if (!c.is_zero()) {
      for (std::size_t j = 0; j < n_; ++j)
        if (!rows_[k][j].is_zero()) v[j] -= c * rows_[k][j];
    }
  }
  return v;
}

bool Span::insert(Vec v) {
  if (v.size() != n_) fail(Errc::DimensionMismatch, "span insert");
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < n_ && v[p].is_zero()) ++p;
  if (p == n_) return false;
  Rational inv = v[p].inv();
  for (std::size_t j = 0; j < n_; ++j) v[j] *= inv;
  // Back-substitute into existing rows to keep reduced form.
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational c = rows_[k][p];
    if (!c.is_zero())
      for (std::size_t j = 0; j < n_; ++j)
        if (!v[j].is_zero()) rows_[k][j] -= c * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool Span::contains(const Vec& v) const {
  if (v.size() != n_) fail(Errc::DimensionMismatch, "span contains");
  return is_zero(reduce(v));
}

std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) return is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
  return solve(Mat::from_columns(basis), v);
}

std::optional<Vec> Span::coordinates_in(const std::vector<Vec>& basis, const Vec& v) const {
  return coordinates(basis, v);
}

} // namespace albert::linalg
