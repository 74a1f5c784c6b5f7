#include "albert/cubicnorm.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <sstream>

#include "albert/error.hpp"
#include "albert/parallel.hpp"
#include "albert/rng.hpp"

namespace albert::cubic {

StructurePtr Structure::make(std::size_t dim, NormFn norm, AdjFn adjoint, Vec base_point,
                             std::string provenance, std::vector<std::string> labels) {
  if (base_point.size() != dim) fail(Errc::DimensionMismatch, "base point length");
  auto s = std::shared_ptr<Structure>(new Structure());
  s->dim_ = dim;
  s->norm_ = std::move(norm);
  s->adj_ = std::move(adjoint);
  s->c_ = std::move(base_point);
  s->provenance_ = std::move(provenance);
  if (labels.empty()) {
    labels.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i));
  }
  s->labels_ = std::move(labels);
  return s;
}

const Mat& Structure::trace_form() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (trace_) return *trace_;
  const std::size_t n = dim_;
  // Directional derivatives of the cubic form at c, via exact interpolation:
  // f(t) = N(c + t x) = f0 + a t + b t^2 + d t^3.
  const Rational f0 = norm_(c_);
  Vec d1(n);       // a_i = (D_{e_i} N)(c)
  Vec d2_diag(n);  // (D_i D_i N)(c) = 2 b_i
  auto line = [&](const Vec& x, Rational& a, Rational& b) {
    Vec p1 = linalg::add(c_, x);
    Vec m1 = linalg::sub(c_, x);
    Vec p2 = linalg::add(c_, linalg::scale(Rational(2), x));
    Vec m2 = linalg::sub(c_, linalg::scale(Rational(2), x));
    const Rational f1 = norm_(p1), fm1 = norm_(m1), f2 = norm_(p2), fm2 = norm_(m2);
    a = (Rational(8) * (f1 - fm1) - (f2 - fm2)) / Rational(12);
    b = (f1 + fm1) / Rational(2) - f0;
  };
  std::vector<Rational> bdiag(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational a, b;
    line(linalg::unit_vec(n, i), a, b);
    d1[i] = a;
    d2_diag[i] = Rational(2) * b;
    bdiag[i] = b;
  }
  Mat t(n, n);
  for (std::size_t i = 0; i < n; ++i) t.at(i, i) = d1[i] * d1[i] - d2_diag[i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // mixed coefficient of s t in N(c + s e_i + t e_j)
      Vec ei = linalg::unit_vec(n, i), ej = linalg::unit_vec(n, j);
      const Rational gpp = norm_(linalg::add(linalg::add(c_, ei), ej));
      const Rational gpm = norm_(linalg::sub(linalg::add(c_, ei), ej));
      const Rational gmp = norm_(linalg::add(linalg::sub(c_, ei), ej));
      const Rational gmm = norm_(linalg::sub(linalg::sub(c_, ei), ej));
      const Rational mixed = (gpp - gpm - gmp + gmm) / Rational(4);
      const Rational val = d1[i] * d1[j] - mixed;
      t.at(i, j) = val;
      t.at(j, i) = val;
    }
  trace_ = std::move(t);
  return *trace_;
}

Rational Structure::trace_pair(const Vec& x, const Vec& y) const {
  const Mat& t = trace_form();
  Rational s;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    Rational row;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!y[j].is_zero() && !t.at(i, j).is_zero()) row += t.at(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

Rational Structure::trace_linear(const Vec& x) const { return trace_pair(x, c_); }

Vec Structure::sharp_bilinear(const Vec& x, const Vec& y) const {
  return linalg::sub(linalg::sub(adj_(linalg::add(x, y)), adj_(x)), adj_(y));
}

Vec Structure::u_apply(const Vec& x, const Vec& y) const {
  Vec xs = adj_(x);
  Vec cross = linalg::sub(linalg::sub(adj_(linalg::add(xs, y)), adj_(xs)), adj_(y));
  return linalg::sub(linalg::scale(trace_pair(x, y), x), cross);
}

Mat Structure::u_matrix(const Vec& x) const {
  const std::size_t n = dim_;
  Vec xs = adj_(x);
  Vec xss = adj_(xs);
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec ej = linalg::unit_vec(n, j);
    Vec cross = linalg::sub(linalg::sub(adj_(linalg::add(xs, ej)), xss), basis_adjoint(j));
    m.set_column(j, linalg::sub(linalg::scale(trace_pair(x, ej), x), cross));
  }
  return m;
}

Vec Structure::inverse(const Vec& x) const {
  const Rational n = norm_(x);
  if (n.is_zero()) fail(Errc::NotInvertible, "norm vanishes at " + linalg::to_string(x));
  return linalg::scale(n.inv(), adj_(x));
}

Vec Structure::jordan_square(const Vec& x) const {
  Vec xs = adj_(x);
  Vec cross = linalg::sub(linalg::sub(adj_(linalg::add(xs, c_)), adj_(xs)), adj_(c_));
  return linalg::sub(linalg::scale(trace_linear(x), x), cross);
}

Vec Structure::jordan_mul(const Vec& x, const Vec& y) const {
  Vec sq_sum = jordan_square(linalg::add(x, y));
  Vec r = linalg::sub(linalg::sub(sq_sum, jordan_square(x)), jordan_square(y));
  return linalg::scale(Rational(1, 2), r);
}

std::size_t polarization_size(std::size_t n) {
  return n + n * (n - 1) + n * (n - 1) * (n - 2) / 6;
}

const std::vector<Vec>& Structure::polarization_points() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!polar_points_.empty()) return polar_points_;
  const std::size_t n = dim_;
  std::vector<Vec> pts;
  pts.reserve(polarization_size(n));
  for (std::size_t i = 0; i < n; ++i) pts.push_back(linalg::unit_vec(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec v(n);
      v[i] = Rational(1);
      v[j] = Rational(1);
      pts.push_back(v);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec v(n);
      v[i] = Rational(1);
      v[j] = Rational(-1);
      pts.push_back(v);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec v(n);
        v[i] = Rational(1);
        v[j] = Rational(1);
        v[k] = Rational(1);
        pts.push_back(v);
      }
  polar_points_ = std::move(pts);
  return polar_points_;
}

const std::vector<Rational>& Structure::polarization_norms() const {
  const auto& pts = polarization_points();
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!polar_norms_.empty()) return polar_norms_;
  std::vector<Rational> vals(pts.size());
  parallel_chunks(pts.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) vals[i] = norm_(pts[i]);
  });
  polar_norms_ = std::move(vals);
  return polar_norms_;
}

const Vec& Structure::basis_adjoint(std::size_t i) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (basis_adj_.empty()) {
    basis_adj_.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j) basis_adj_[j] = adj_(linalg::unit_vec(dim_, j));
  }
  return basis_adj_[i];
}

Certificate cubic_form_equal(const Mat& f, const Structure& s1, const Structure& s2,
                             const Rational& nu) {
  if (s1.dim() != s2.dim()) fail(Errc::DimensionMismatch, "cubic_form_equal dimensions differ");
  if (f.rows() != s2.dim() || f.cols() != s1.dim())
    fail(Errc::DimensionMismatch, "operator shape does not match the structures");
  const auto& pts = s1.polarization_points();
  const auto& base = s1.polarization_norms();
  std::atomic<std::size_t> first_fail{pts.size()};
  parallel_chunks(pts.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      if (first_fail.load(std::memory_order_relaxed) < b) return; // someone earlier failed
      const Rational lhs = s2.norm(f.apply(pts[i]));
      if (lhs != nu * base[i]) {
        std::size_t cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  });
  Certificate cert;
  const std::size_t ff = first_fail.load();
  if (ff == pts.size()) {
    cert.equal = true;
    cert.evaluations = pts.size();
  } else {
    cert.equal = false;
    cert.evaluations = ff + 1;
    cert.witness = pts[ff];
    cert.lhs_at_witness = s2.norm(f.apply(pts[ff]));
    cert.rhs_at_witness = nu * base[ff];
  }
  return cert;
}

const Rational& MonomialTable::at(std::size_t i, std::size_t j, std::size_t k) const {
  std::array<std::size_t, 3> key{i, j, k};
  std::sort(key.begin(), key.end());
  static const Rational zero(0);
  auto it = coeff.find(key);
  return it == coeff.end() ? zero : it->second;
}

Rational MonomialTable::evaluate(const Vec& x) const {
  Rational s;
  for (const auto& [key, c] : coeff) {
    if (c.is_zero()) continue;
    s += c * x[key[0]] * x[key[1]] * x[key[2]];
  }
  return s;
}

MonomialTable symbolic_expand(const Structure& s) {
  const std::size_t n = s.dim();
  if (n > 9)
    fail(Errc::DimensionTooLarge,
         "symbolic expansion guarded to dimension <= 9, got " + std::to_string(n));
  MonomialTable t;
  t.dim = n;
  auto set = [&t](std::size_t i, std::size_t j, std::size_t k, Rational v) {
    if (v.is_zero()) return;
    std::array<std::size_t, 3> key{i, j, k};
    std::sort(key.begin(), key.end());
    t.coeff[key] = std::move(v);
  };
  std::vector<Rational> cube(n);
  for (std::size_t i = 0; i < n; ++i) {
    cube[i] = s.norm(linalg::unit_vec(n, i));
    set(i, i, i, cube[i]);
  }
  std::vector<std::vector<Rational>> mixed(n, std::vector<Rational>(n)); // c_iij
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec p(n), m(n);
      p[i] = Rational(1);
      p[j] = Rational(1);
      m[i] = Rational(1);
      m[j] = Rational(-1);
      const Rational sum = s.norm(p) - cube[i] - cube[j];       // c_iij + c_ijj
      const Rational diff = s.norm(m) - cube[i] + cube[j];      // c_ijj - c_iij
      mixed[i][j] = (sum - diff) / Rational(2);                 // c_iij
      mixed[j][i] = (sum + diff) / Rational(2);                 // c_ijj
      set(i, i, j, mixed[i][j]);
      set(i, j, j, mixed[j][i]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec p(n);
        p[i] = Rational(1);
        p[j] = Rational(1);
        p[k] = Rational(1);
        Rational v = s.norm(p) - cube[i] - cube[j] - cube[k];
        v -= mixed[i][j] + mixed[j][i];
        v -= mixed[i][k] + mixed[k][i];
        v -= mixed[j][k] + mixed[k][j];
        set(i, j, k, v);
      }
  return t;
}

namespace {

void report_fail(AxiomReport& rep, const std::string& identity, const Vec& x,
                 const std::optional<Vec>& y, const std::string& detail) {
  rep.pass = false;
  rep.failed_identity = identity;
  rep.witness_x = x;
  rep.witness_y = y;
  rep.detail = detail;
}

} // namespace

AxiomReport axiom_suite(const Structure& s, std::size_t trials, std::uint64_t seed) {
  AxiomReport rep;
  rep.trials = trials;
  const std::size_t n = s.dim();
  const Vec& c = s.base_point();
  {
    const Rational nc = s.norm(c);
    ++rep.checks;
    if (!nc.is_one()) {
      report_fail(rep, "N(c)=1", c, std::nullopt, "N(c) = " + nc.str());
      return rep;
    }
  }
  {
    ++rep.checks;
    const Mat& t = s.trace_form();
    if (linalg::det(t).is_zero()) {
      report_fail(rep, "T nondegenerate", c, std::nullopt, "trace form is singular");
      return rep;
    }
  }
  Rng rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Vec x = rng.vec(n);
    Vec y = rng.vec(n);
    const Rational nx = s.norm(x);
    Vec xs = s.adjoint(x);
    Vec xss = s.adjoint(xs);
    ++rep.checks;
    if (xss != linalg::scale(nx, x)) {
      report_fail(rep, "x##=N(x)x", x, std::nullopt,
                  "x## = " + linalg::to_string(xss) + ", N(x) x = " +
                      linalg::to_string(linalg::scale(nx, x)));
      return rep;
    }
    ++rep.checks;
    const Rational nxs = s.norm(xs);
    if (nxs != nx * nx) {
      report_fail(rep, "N(x#)=N(x)^2", x, std::nullopt,
                  "N(x#) = " + nxs.str() + ", N(x)^2 = " + (nx * nx).str());
      return rep;
    }
    ++rep.checks;
    const Rational nuxy = s.norm(s.u_apply(x, y));
    const Rational ny = s.norm(y);
    if (nuxy != nx * nx * ny) {
      report_fail(rep, "N(U_x y)=N(x)^2 N(y)", x, y,
                  "N(U_x y) = " + nuxy.str() + ", N(x)^2 N(y) = " + (nx * nx * ny).str());
      return rep;
    }
    ++rep.checks;
    if (s.u_apply(c, y) != y) {
      report_fail(rep, "U_c=id", c, y, "U_c moved the point");
      return rep;
    }
    Rational lambda(rng.range(1, 9), rng.range(1, 3));
    if (rng.below(2)) lambda = -lambda;
    ++rep.checks;
    if (s.norm(linalg::scale(lambda, x)) != lambda.pow(3) * nx) {
      report_fail(rep, "N(lx)=l^3 N(x)", x, std::nullopt, "lambda = " + lambda.str());
      return rep;
    }
    ++rep.checks;
    if (s.adjoint(linalg::scale(lambda, x)) != linalg::scale(lambda * lambda, xs)) {
      report_fail(rep, "(lx)#=l^2 x#", x, std::nullopt, "lambda = " + lambda.str());
      return rep;
    }
  }
  return rep;
}

void require_axioms(const Structure& s, std::size_t trials, std::uint64_t seed) {
  AxiomReport rep = axiom_suite(s, trials, seed);
  if (!rep.pass)
    fail(Errc::AxiomFailure, rep.failed_identity + " failed at " +
                                 (rep.witness_x ? linalg::to_string(*rep.witness_x) : "?") +
                                 "; " + rep.detail);
}

DivisionSample division_sample(const Structure& s, std::size_t trials, std::uint64_t seed) {
  DivisionSample ds;
  ds.trials = trials;
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    Vec x = rng.nonzero_vec(s.dim());
    if (s.norm(x).is_zero()) {
      if (!ds.zero_witness) ds.zero_witness = x;
    } else {
      ++ds.nonzero;
    }
  }
  return ds;
}

Mat derive_trace(const Structure& s) { return s.trace_form(); }

} // namespace albert::cubic
