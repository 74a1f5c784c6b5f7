#include "albert/etale.hpp"

#include <sstream>

#include "albert/error.hpp"

namespace albert::etale {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Rationals: return "rationals";
    case Kind::SplitQuadratic: return "splitQuadratic";
    case Kind::QuadraticField: return "quadraticField";
    case Kind::SplitCubic: return "splitCubic";
    case Kind::CyclicCubicField: return "cyclicCubicField";
    case Kind::Composite: return "composite";
  }
  return "?";
}

Spec Spec::rationals() { return Spec{}; }

Spec Spec::split_quadratic() {
  Spec s;
  s.kind = Kind::SplitQuadratic;
  return s;
}

Spec Spec::quadratic_field(Rational d) {
  Spec s;
  s.kind = Kind::QuadraticField;
  s.d = std::move(d);
  return s;
}

Spec Spec::split_cubic() {
  Spec s;
  s.kind = Kind::SplitCubic;
  return s;
}

Spec Spec::cyclic_cubic_field(std::vector<Rational> min_poly, std::vector<Rational> rho_image) {
  Spec s;
  s.kind = Kind::CyclicCubicField;
  s.min_poly = std::move(min_poly);
  s.rho_image = std::move(rho_image);
  return s;
}

Spec Spec::composite(Spec cubic, Spec quadratic) {
  Spec s;
  s.kind = Kind::Composite;
  s.cubic = std::make_shared<Spec>(std::move(cubic));
  s.quadratic = std::make_shared<Spec>(std::move(quadratic));
  return s;
}

std::size_t Spec::dimension() const {
  switch (kind) {
    case Kind::Rationals: return 1;
    case Kind::SplitQuadratic:
    case Kind::QuadraticField: return 2;
    case Kind::SplitCubic:
    case Kind::CyclicCubicField: return 3;
    case Kind::Composite: return (cubic ? cubic->dimension() : 0) * (quadratic ? quadratic->dimension() : 0);
  }
  return 0;
}

std::string Spec::describe() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (kind == Kind::QuadraticField) os << "(" << d << ")";
  if (kind == Kind::CyclicCubicField && min_poly.size() == 3)
    os << "(x^3 + (" << min_poly[2] << ")x^2 + (" << min_poly[1] << ")x + (" << min_poly[0] << "))";
  if (kind == Kind::Composite && cubic && quadratic)
    os << "[" << cubic->describe() << " x " << quadratic->describe() << "]";
  return os.str();
}

namespace {

using Poly = std::vector<Rational>; // coefficients, low degree first

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Reduces modulo the monic cubic x^3 + c2 x^2 + c1 x + c0 given as {c0,c1,c2}.
Poly poly_mod_cubic(Poly a, const std::vector<Rational>& m) {
  while (a.size() > 3) {
    const std::size_t top = a.size() - 1;
    const Rational lead = a[top];
    if (!lead.is_zero()) {
      // x^top = x^(top-3) * (-c2 x^2 - c1 x - c0)
      a[top - 1] -= lead * m[2];
      a[top - 2] -= lead * m[1];
      a[top - 3] -= lead * m[0];
    }
    a.pop_back();
  }
  a.resize(3);
  return a;
}

// Substitutes the degree-<=2 polynomial g into f (a cubic given by {c0,c1,c2},
// meaning x^3 + c2 x^2 + c1 x + c0) and reduces mod the same cubic.
Poly eval_min_poly_at(const Poly& g, const std::vector<Rational>& m) {
  Poly g2 = poly_mod_cubic(poly_mul(g, g), m);
  Poly g3 = poly_mod_cubic(poly_mul(g2, g), m);
  Poly r(3);
  for (std::size_t i = 0; i < 3; ++i)
    r[i] = g3[i] + m[2] * g2[i] + m[1] * (i < g.size() ? g[i] : Rational(0));
  r[0] += m[0];
  return r;
}

// Substitutes g for the variable of the degree-<=2 polynomial f, mod the cubic.
Poly compose_mod(const Poly& f, const Poly& g, const std::vector<Rational>& m) {
  Poly g2 = poly_mod_cubic(poly_mul(g, g), m);
  Poly r(3);
  r[0] = f.size() > 0 ? f[0] : Rational(0);
  const Rational f1 = f.size() > 1 ? f[1] : Rational(0);
  const Rational f2 = f.size() > 2 ? f[2] : Rational(0);
  for (std::size_t i = 0; i < 3; ++i) {
    r[i] += f1 * (i < g.size() ? g[i] : Rational(0));
    r[i] += f2 * g2[i];
  }
  return r;
}

bool poly_is_zero(const Poly& p) {
  for (const auto& c : p)
    if (!c.is_zero()) return false;
  return true;
}

// Enumerates positive divisors by trial division; desk-scale inputs only.
bool small_divisors(const Rational& n_in, std::vector<long>& out) {
  Rational n = n_in.abs();
  if (!n.is_integer()) return false;
  // Bail out on huge constants; the caller reports an InvalidSpec instead.
  Rational limit(1000000);
  if (n > limit) return false;
  long v = 0;
  {
    // n fits well below 10^6 here, extract via string to avoid float paths.
    v = std::stol(n.str());
  }
  for (long d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d != v / d) out.push_back(v / d);
    }
  }
  return true;
}

// Exact rational-root emptiness test for a monic cubic over the rationals.
// Returns true when irreducible, false when a rational root exists; nullopt
// when coefficients exceed the desk-scale search bound.
std::optional<bool> cubic_irreducible(const std::vector<Rational>& m) {
  // Clear denominators: p(x) = x^3 + c2 x^2 + c1 x + c0 -> a3 x^3 + ... + a0.
  Rational l(1);
  for (const auto& c : m) l = Rational::int_lcm(l, c.denominator());
  const Rational a3 = l, a2 = m[2] * l, a1 = m[1] * l, a0 = m[0] * l;
  if (a0.is_zero()) return false; // root at 0
  std::vector<long> ps, qs;
  if (!small_divisors(a0, ps) || !small_divisors(a3, qs)) return std::nullopt;
  for (long p : ps)
    for (long q : qs)
      for (int s : {1, -1}) {
        const Rational x(s * p, q);
        const Rational val = ((a3 * x + a2) * x + a1) * x + a0;
        if (val.is_zero()) return false;
      }
  return true;
}

} // namespace

ValidationReport check_spec(const Spec& spec) {
  ValidationReport rep;
  auto flag = [&rep](const std::string& msg) {
    rep.valid = false;
    rep.failures.push_back(msg);
  };
  switch (spec.kind) {
    case Kind::Rationals:
    case Kind::SplitQuadratic:
    case Kind::SplitCubic: break;
    case Kind::QuadraticField: {
      if (spec.d.is_zero()) flag("quadratic discriminant is zero");
      else if (spec.d.is_square()) flag("quadratic discriminant " + spec.d.str() + " is a square");
      break;
    }
    case Kind::CyclicCubicField: {
      if (spec.min_poly.size() != 3) {
        flag("minimal polynomial must supply 3 coefficients {c0,c1,c2}");
        break;
      }
      if (spec.rho_image.empty() || spec.rho_image.size() > 3) {
        flag("rho image must be a polynomial of degree <= 2");
        break;
      }
      auto irr = cubic_irreducible(spec.min_poly);
      if (!irr.has_value()) {
        flag("minimal polynomial coefficients exceed the rational-root search bound");
        break;
      }
      if (!*irr) {
        flag("minimal polynomial is reducible over the rationals");
        break;
      }
      Poly g = spec.rho_image;
      g.resize(3);
      if (!poly_is_zero(eval_min_poly_at(g, spec.min_poly)))
        flag("rho image is not a root of the minimal polynomial");
      Poly theta = {Rational(0), Rational(1)};
      theta.resize(3);
      if (g == theta) flag("rho must have order 3, got the identity");
      Poly g2 = compose_mod(g, g, spec.min_poly);
      Poly g3 = compose_mod(g2, g, spec.min_poly);
      if (g3 != theta) flag("rho^3 is not the identity");
      break;
    }
    case Kind::Composite: {
      if (!spec.cubic || !spec.cubic->is_cubic_kind()) flag("composite cubic part missing or not cubic");
      if (!spec.quadratic || !spec.quadratic->is_quadratic_kind())
        flag("composite quadratic part missing or not quadratic");
      if (spec.cubic) {
        auto sub = check_spec(*spec.cubic);
        for (auto& f : sub.failures) flag("cubic part: " + f);
      }
      if (spec.quadratic) {
        auto sub = check_spec(*spec.quadratic);
        for (auto& f : sub.failures) flag("quadratic part: " + f);
      }
      if (rep.valid && spec.dimension() != spec.cubic->dimension() * spec.quadratic->dimension())
        flag("composite dimension mismatch");
      break;
    }
  }
  return rep;
}

AlgebraPtr Algebra::make(Spec spec) {
  auto rep = check_spec(spec);
  if (!rep.valid) {
    std::string msg = "etale spec invalid:";
    for (auto& f : rep.failures) msg += " " + f + ";";
    fail(Errc::InvalidSpec, msg);
  }
  return AlgebraPtr(new Algebra(std::move(spec)));
}

Algebra::Algebra(Spec spec) : spec_(std::move(spec)) { build_tables(); }

void Algebra::build_tables() {
  dim_ = spec_.dimension();
  auto set_mult = [this](std::size_t i, std::size_t j, Vec v) { mult_[i * dim_ + j] = std::move(v); };
  mult_.assign(dim_ * dim_, Vec());
  switch (spec_.kind) {
    case Kind::Rationals: {
      set_mult(0, 0, Vec{Rational(1)});
      one_ = Vec{Rational(1)};
      labels_ = {"1"};
      break;
    }
    case Kind::SplitQuadratic: {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          Vec v(2);
          if (i == j) v[i] = Rational(1);
          set_mult(i, j, std::move(v));
        }
      one_ = Vec{Rational(1), Rational(1)};
      labels_ = {"e1", "e2"};
      Mat b(2, 2);
      b.at(0, 1) = Rational(1);
      b.at(1, 0) = Rational(1);
      bar_ = b;
      break;
    }
    case Kind::QuadraticField: {
      // basis {1, s}, s^2 = d
      set_mult(0, 0, Vec{Rational(1), Rational(0)});
      set_mult(0, 1, Vec{Rational(0), Rational(1)});
      set_mult(1, 0, Vec{Rational(0), Rational(1)});
      set_mult(1, 1, Vec{spec_.d, Rational(0)});
      one_ = Vec{Rational(1), Rational(0)};
      labels_ = {"1", "s"};
      Mat b = Mat::identity(2);
      b.at(1, 1) = Rational(-1);
      bar_ = b;
      break;
    }
    case Kind::SplitCubic: {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          Vec v(3);
          if (i == j) v[i] = Rational(1);
          set_mult(i, j, std::move(v));
        }
      one_ = Vec{Rational(1), Rational(1), Rational(1)};
      labels_ = {"e1", "e2", "e3"};
      // rho((x0,x1,x2)) = (x1,x2,x0)
      Mat r(3, 3);
      r.at(0, 1) = Rational(1);
      r.at(1, 2) = Rational(1);
      r.at(2, 0) = Rational(1);
      rho_ = r;
      break;
    }
    case Kind::CyclicCubicField: {
      const auto& m = spec_.min_poly;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          Poly p(i + j + 1);
          p[i + j] = Rational(1);
          set_mult(i, j, poly_mod_cubic(std::move(p), m));
        }
      one_ = Vec{Rational(1), Rational(0), Rational(0)};
      labels_ = {"1", "th", "th^2"};
      Poly g = spec_.rho_image;
      g.resize(3);
      Mat r(3, 3);
      r.set_column(0, Vec{Rational(1), Rational(0), Rational(0)});
      r.set_column(1, g);
      r.set_column(2, poly_mod_cubic(poly_mul(g, g), m));
      rho_ = r;
      break;
    }
    case Kind::Composite: {
      cubic_part_ = Algebra::make(*spec_.cubic);
      quad_part_ = Algebra::make(*spec_.quadratic);
      const std::size_t cd = cubic_part_->dim(), qd = quad_part_->dim();
      auto idx = [qd](std::size_t a, std::size_t b) { return a * qd + b; };
      for (std::size_t a = 0; a < cd; ++a)
        for (std::size_t b = 0; b < qd; ++b)
          for (std::size_t c = 0; c < cd; ++c)
            for (std::size_t e = 0; e < qd; ++e) {
              const Vec& lc = cubic_part_->mult_[a * cd + c];
              const Vec& ke = quad_part_->mult_[b * qd + e];
              Vec v(dim_);
              for (std::size_t a2 = 0; a2 < cd; ++a2)
                for (std::size_t b2 = 0; b2 < qd; ++b2)
                  if (!lc[a2].is_zero() && !ke[b2].is_zero()) v[idx(a2, b2)] = lc[a2] * ke[b2];
              set_mult(idx(a, b), idx(c, e), std::move(v));
            }
      one_.assign(dim_, Rational(0));
      for (std::size_t a = 0; a < cd; ++a)
        for (std::size_t b = 0; b < qd; ++b) {
          const Rational prod = cubic_part_->one()[a] * quad_part_->one()[b];
          if (!prod.is_zero()) one_[idx(a, b)] = prod;
        }
      labels_.resize(dim_);
      for (std::size_t a = 0; a < cd; ++a)
        for (std::size_t b = 0; b < qd; ++b)
          labels_[idx(a, b)] =
              cubic_part_->basis_labels()[a] + "*" + quad_part_->basis_labels()[b];
      if (cubic_part_->has_map(GaloisMap::Rho)) {
        const Mat& rl = cubic_part_->galois_matrix(GaloisMap::Rho);
        Mat r(dim_, dim_);
        for (std::size_t a = 0; a < cd; ++a)
          for (std::size_t a2 = 0; a2 < cd; ++a2)
            for (std::size_t b = 0; b < qd; ++b) r.at(idx(a2, b), idx(a, b)) = rl.at(a2, a);
        rho_ = r;
      }
      const Mat& bk = quad_part_->galois_matrix(GaloisMap::Bar);
      Mat s(dim_, dim_);
      for (std::size_t a = 0; a < cd; ++a)
        for (std::size_t b = 0; b < qd; ++b)
          for (std::size_t b2 = 0; b2 < qd; ++b2) s.at(idx(a, b2), idx(a, b)) = bk.at(b2, b);
      star_ = s;
      break;
    }
  }
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) fail(Errc::DimensionMismatch, "etale mul");
  Vec r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const Rational c = x[i] * y[j];
      const Vec& basis = mult_[i * dim_ + j];
      for (std::size_t m = 0; m < dim_; ++m)
        if (!basis[m].is_zero()) r[m] += c * basis[m];
    }
  }
  return r;
}

Mat Algebra::regular_matrix(const Vec& x) const {
  Mat m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec col = mul(x, linalg::unit_vec(dim_, j));
    m.set_column(j, col);
  }
  return m;
}

Vec Algebra::inv(const Vec& x) const {
  auto sol = linalg::solve(regular_matrix(x), one_);
  if (!sol) fail(Errc::NotInvertible, "etale element with zero norm: " + linalg::to_string(x));
  return *sol;
}

Rational Algebra::norm(const Vec& x) const { return linalg::det(regular_matrix(x)); }

Rational Algebra::trace(const Vec& x) const {
  Mat m = regular_matrix(x);
  Rational t;
  for (std::size_t i = 0; i < dim_; ++i) t += m.at(i, i);
  return t;
}

Vec Algebra::k_block(const Vec& x, std::size_t a) const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "k_block on non-composite");
  const std::size_t qd = quad_part_->dim();
  Vec b(qd);
  for (std::size_t i = 0; i < qd; ++i) b[i] = x[a * qd + i];
  return b;
}

Vec Algebra::from_k_blocks(const std::vector<Vec>& blocks) const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "from_k_blocks on non-composite");
  const std::size_t qd = quad_part_->dim();
  Vec x(dim_);
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t i = 0; i < qd; ++i) x[a * qd + i] = blocks[a][i];
  return x;
}

Vec Algebra::relative_norm(const Vec& x) const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "relative norm on non-composite");
  const std::size_t cd = cubic_part_->dim();
  // 3x3 matrix over K of left multiplication on the K-module basis {l_a}.
  std::vector<std::vector<Vec>> m(cd, std::vector<Vec>(cd));
  for (std::size_t c = 0; c < cd; ++c) {
    Vec col = mul(x, embed_cubic(linalg::unit_vec(cd, c)));
    for (std::size_t a = 0; a < cd; ++a) m[a][c] = k_block(col, a);
  }
  const auto& K = *quad_part_;
  auto kmul = [&K](const Vec& a, const Vec& b) { return K.mul(a, b); };
  // det by cofactor expansion over the commutative algebra K.
  Vec t1 = kmul(m[0][0], linalg::sub(kmul(m[1][1], m[2][2]), kmul(m[1][2], m[2][1])));
  Vec t2 = kmul(m[0][1], linalg::sub(kmul(m[1][0], m[2][2]), kmul(m[1][2], m[2][0])));
  Vec t3 = kmul(m[0][2], linalg::sub(kmul(m[1][0], m[2][1]), kmul(m[1][1], m[2][0])));
  return linalg::add(linalg::sub(t1, t2), t3);
}

Vec Algebra::relative_trace(const Vec& x) const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "relative trace on non-composite");
  const std::size_t cd = cubic_part_->dim();
  Vec t(quad_part_->dim());
  for (std::size_t c = 0; c < cd; ++c) {
    Vec col = mul(x, embed_cubic(linalg::unit_vec(cd, c)));
    t = linalg::add(t, k_block(col, c));
  }
  return t;
}

bool Algebra::has_map(GaloisMap m) const {
  switch (m) {
    case GaloisMap::Rho: return rho_.has_value();
    case GaloisMap::Bar: return bar_.has_value();
    case GaloisMap::Star: return star_.has_value();
  }
  return false;
}

const Mat& Algebra::galois_matrix(GaloisMap m) const {
  const std::optional<Mat>* p = nullptr;
  switch (m) {
    case GaloisMap::Rho: p = &rho_; break;
    case GaloisMap::Bar: p = &bar_; break;
    case GaloisMap::Star: p = &star_; break;
  }
  if (!p || !p->has_value())
    fail(Errc::MapUndefinedForSpec,
         std::string("galois map not defined on ") + kind_name(spec_.kind));
  return **p;
}

const AlgebraPtr& Algebra::cubic_part() const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "cubic_part on non-composite");
  return cubic_part_;
}

const AlgebraPtr& Algebra::quadratic_part() const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "quadratic_part on non-composite");
  return quad_part_;
}

Vec Algebra::embed_cubic(const Vec& l) const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "embed_cubic on non-composite");
  const std::size_t qd = quad_part_->dim();
  Vec x(dim_);
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < qd; ++b) x[a * qd + b] = l[a] * quad_part_->one()[b];
  return x;
}

Vec Algebra::embed_quadratic(const Vec& k) const {
  if (spec_.kind != Kind::Composite) fail(Errc::MapUndefinedForSpec, "embed_quadratic on non-composite");
  const std::size_t cd = cubic_part_->dim(), qd = quad_part_->dim();
  Vec x(dim_);
  for (std::size_t a = 0; a < cd; ++a)
    for (std::size_t b = 0; b < qd; ++b) x[a * qd + b] = cubic_part_->one()[a] * k[b];
  return x;
}

Element::Element(AlgebraPtr a, Vec coords) : alg(std::move(a)), v(std::move(coords)) {
  if (!alg) fail(Errc::InvalidSpec, "element without algebra");
  if (v.size() != alg->dim())
    fail(Errc::DimensionMismatch, "coordinate length does not match spec dimension");
}

namespace {
void require_same(const Element& a, const Element& b) {
  if (a.alg.get() != b.alg.get()) fail(Errc::SpecMismatch, "elements of different etale specs");
}
} // namespace

Element Element::operator+(const Element& o) const {
  require_same(*this, o);
  return Element(alg, linalg::add(v, o.v));
}

Element Element::operator-(const Element& o) const {
  require_same(*this, o);
  return Element(alg, linalg::sub(v, o.v));
}

Element Element::operator*(const Element& o) const {
  require_same(*this, o);
  return Element(alg, alg->mul(v, o.v));
}

Element Element::inverse() const { return Element(alg, alg->inv(v)); }

Element Element::apply(GaloisMap m) const { return Element(alg, alg->galois(v, m)); }

bool Element::operator==(const Element& o) const { return alg.get() == o.alg.get() && v == o.v; }

} // namespace albert::etale
