#include "albert/assoc3.hpp"

#include <sstream>

#include "albert/error.hpp"

namespace albert::assoc {

const char* model_name(Model m) {
  switch (m) {
    case Model::Etale3: return "etale3";
    case Model::Mat3: return "mat3";
    case Model::CrossedProduct: return "crossedProduct";
    case Model::DoubleOpposite: return "doubleOpposite";
  }
  return "?";
}

const char* involution_name(Involution s) {
  switch (s) {
    case Involution::None: return "none";
    case Involution::UnitaryTranspose: return "unitaryTranspose";
    case Involution::Switch: return "switch";
    case Involution::StandardCrossed: return "standardCrossed";
    case Involution::EtaleStar: return "etaleStar";
  }
  return "?";
}

namespace {

Vec block_of(const Vec& x, std::size_t i, std::size_t cdim) {
  Vec c(cdim);
  for (std::size_t a = 0; a < cdim; ++a) c[a] = x[i * cdim + a];
  return c;
}

void add_block(Vec& x, std::size_t i, const Vec& c, std::size_t cdim) {
  for (std::size_t a = 0; a < cdim; ++a) x[i * cdim + a] += c[a];
}

} // namespace

std::string Algebra::describe() const {
  std::ostringstream os;
  os << model_name(model_) << "/" << center_->spec().describe();
  if (has_involution()) os << " with " << involution_name(inv_kind_);
  return os.str();
}

Vec Algebra::center_scale(const Vec& c, const Vec& x) const {
  Vec r(kdim());
  for (std::size_t i = 0; i < rank_; ++i)
    add_block(r, i, center_->mul(c, block_of(x, i, cdim_)), cdim_);
  return r;
}

Vec Algebra::embed_center(const Vec& c) const { return center_scale(c, one_); }

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  if (x.size() != kdim() || y.size() != kdim()) fail(Errc::DimensionMismatch, "assoc mul");
  Vec r(kdim());
  std::vector<Vec> xb(rank_), yb(rank_);
  std::vector<bool> xz(rank_), yz(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    xb[i] = block_of(x, i, cdim_);
    xz[i] = linalg::is_zero(xb[i]);
    yb[i] = block_of(y, i, cdim_);
    yz[i] = linalg::is_zero(yb[i]);
  }
  for (std::size_t i = 0; i < rank_; ++i) {
    if (xz[i]) continue;
    for (std::size_t j = 0; j < rank_; ++j) {
      if (yz[j]) continue;
      const auto& entries = compact_[i * rank_ + j];
      if (entries.empty()) continue;
      Vec c = center_->mul(xb[i], yb[j]);
      for (const auto& [m, coeff] : entries) add_block(r, m, center_->mul(c, coeff), cdim_);
    }
  }
  return r;
}

Vec Algebra::inv(const Vec& x) const {
  const std::size_t n = kdim();
  Mat reg(n, n);
  for (std::size_t j = 0; j < n; ++j) reg.set_column(j, mul(x, linalg::unit_vec(n, j)));
  auto sol = linalg::solve(reg, one_);
  if (!sol) fail(Errc::NotInvertible, "assoc element not invertible");
  return *sol;
}

Vec Algebra::reduced_trace(const Vec& x) const {
  Vec t(cdim_);
  for (std::size_t a = 0; a < cdim_; ++a) {
    Rational s;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!x[j].is_zero() && !trace_mat_.at(a, j).is_zero()) s += trace_mat_.at(a, j) * x[j];
    t[a] = std::move(s);
  }
  return t;
}

Vec Algebra::sharp(const Vec& x) const {
  Vec x2 = mul(x, x);
  Vec t = reduced_trace(x);
  Vec t2 = reduced_trace(x2);
  Vec s = linalg::scale(Rational(1, 2), linalg::sub(center_->mul(t, t), t2));
  Vec r = linalg::sub(x2, center_scale(t, x));
  return linalg::add(r, embed_center(s));
}

namespace {

template <typename MulFn>
Vec det3(const std::vector<std::vector<Vec>>& m, MulFn mul) {
  Vec t1 = mul(m[0][0], linalg::sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])));
  Vec t2 = mul(m[0][1], linalg::sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])));
  Vec t3 = mul(m[0][2], linalg::sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])));
  return linalg::add(linalg::sub(t1, t2), t3);
}

} // namespace

Vec Algebra::reduced_norm(const Vec& x) const {
  switch (model_) {
    case Model::Mat3: {
      std::vector<std::vector<Vec>> m(3, std::vector<Vec>(3));
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m[r][c] = block_of(x, r * 3 + c, cdim_);
      return det3(m, [this](const Vec& a, const Vec& b) { return center_->mul(a, b); });
    }
    case Model::Etale3: {
      if (module_->spec().kind == etale::Kind::Composite) return module_->relative_norm(x);
      return Vec{module_->norm(x)};
    }
    case Model::CrossedProduct: {
      const std::size_t md = module_->dim();
      std::vector<Vec> mcomp(3); // x = sum m_a z^a with left coefficients
      for (std::size_t a = 0; a < 3; ++a) {
        Vec ma(md);
        for (std::size_t t = 0; t < 3; ++t)
          for (std::size_t e = 0; e < cdim_; ++e) ma[t * cdim_ + e] = x[((a * 3 + t) * cdim_) + e];
        mcomp[a] = std::move(ma);
      }
      const Mat& rho = module_->galois_matrix(etale::GaloisMap::Rho);
      Mat rho2 = rho.mul(rho);
      Vec gamma_m = module_etale_embed_center(gamma_);
      // Left regular representation on the right module basis {1,z,z^2}:
      // entry (c,j) is gamma^[c<j] rho^{-c}(m_{(c-j) mod 3}).
      std::vector<std::vector<Vec>> A(3, std::vector<Vec>(3));
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t j = 0; j < 3; ++j) {
          const std::size_t a = (c + 3 - j) % 3;
          Vec entry = mcomp[a];
          if (c == 1) entry = rho2.apply(entry);
          else if (c == 2) entry = rho.apply(entry);
          if (c < j) entry = module_->mul(gamma_m, entry);
          A[c][j] = std::move(entry);
        }
      Vec d = det3(A, [this](const Vec& a, const Vec& b) { return module_->mul(a, b); });
      auto c = module_value_as_center(d);
      if (!c) fail(Errc::AlgebraMismatch, "crossed-product norm did not land in the center");
      return *c;
    }
    case Model::DoubleOpposite: {
      auto [p, q] = split_pair(x);
      return Vec{inner_->reduced_norm(p)[0], inner_->reduced_norm(q)[0]};
    }
  }
  fail(Errc::AlgebraMismatch, "unknown model");
}

Vec Algebra::module_etale_embed_center(const Vec& c) const {
  if (module_->spec().kind == etale::Kind::Composite) return module_->embed_quadratic(c);
  return module_->scalar_embed(c[0]);
}

std::optional<Vec> Algebra::module_value_as_center(const Vec& v) const {
  std::vector<Vec> cols;
  for (std::size_t a = 0; a < cdim_; ++a)
    cols.push_back(module_etale_embed_center(linalg::unit_vec(cdim_, a)));
  return linalg::coordinates(cols, v);
}

const AlgebraPtr& Algebra::inner() const {
  if (model_ != Model::DoubleOpposite) fail(Errc::AlgebraMismatch, "inner on non-doubleOpposite");
  return inner_;
}

const etale::AlgebraPtr& Algebra::module_etale() const {
  if (model_ != Model::CrossedProduct && model_ != Model::Etale3)
    fail(Errc::AlgebraMismatch, "module_etale undefined for this model");
  return module_;
}

Vec Algebra::embed_etale(const Vec& m) const {
  if (model_ == Model::Etale3) return m; // same coordinates by construction
  if (model_ != Model::CrossedProduct) fail(Errc::AlgebraMismatch, "embed_etale undefined");
  Vec x(kdim());
  for (std::size_t i = 0; i < module_->dim(); ++i) x[i] = m[i];
  return x;
}

Vec Algebra::z_element() const {
  if (model_ != Model::CrossedProduct) fail(Errc::AlgebraMismatch, "z_element undefined");
  Vec x(kdim());
  const Vec& one_m = module_->one();
  for (std::size_t i = 0; i < module_->dim(); ++i) x[3 * cdim_ + i] = one_m[i];
  return x;
}

Vec Algebra::pair_element(const Vec& p, const Vec& q) const {
  if (model_ != Model::DoubleOpposite) fail(Errc::AlgebraMismatch, "pair_element undefined");
  Vec x(kdim());
  for (std::size_t i = 0; i < rank_; ++i) {
    x[i * 2 + 0] = p[i];
    x[i * 2 + 1] = q[i];
  }
  return x;
}

std::pair<Vec, Vec> Algebra::split_pair(const Vec& x) const {
  if (model_ != Model::DoubleOpposite) fail(Errc::AlgebraMismatch, "split_pair undefined");
  Vec p(rank_), q(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    p[i] = x[i * 2 + 0];
    q[i] = x[i * 2 + 1];
  }
  return {p, q};
}

Vec Algebra::involve(const Vec& x) const { return involution_matrix().apply(x); }

const Mat& Algebra::involution_matrix() const {
  if (!sigma_) fail(Errc::AlgebraMismatch, "algebra carries no involution");
  return *sigma_;
}

bool Algebra::is_hermitian(const Vec& x) const { return involve(x) == x; }

const std::vector<Vec>& Algebra::hermitian_basis() const {
  if (!sigma_) fail(Errc::AlgebraMismatch, "algebra carries no involution");
  return herm_basis_;
}

Vec Algebra::hermitian_coords(const Vec& x) const {
  if (!sigma_) fail(Errc::AlgebraMismatch, "algebra carries no involution");
  Vec rhs(rank_);
  for (std::size_t i = 0; i < rank_; ++i) rhs[i] = x[herm_pivot_rows_[i]];
  Vec h = herm_solver_.apply(rhs);
  // Residual check: h is only valid when x really lies in the fixed space.
  Vec back(kdim());
  for (std::size_t i = 0; i < rank_; ++i)
    if (!h[i].is_zero()) back = linalg::add(back, linalg::scale(h[i], herm_basis_[i]));
  if (back != x) fail(Errc::NotHermitian, "element outside the hermitian subspace");
  return h;
}

Vec Algebra::from_hermitian(const Vec& h) const {
  if (h.size() != herm_basis_.size()) fail(Errc::DimensionMismatch, "from_hermitian");
  Vec x(kdim());
  for (std::size_t i = 0; i < herm_basis_.size(); ++i)
    if (!h[i].is_zero()) x = linalg::add(x, linalg::scale(h[i], herm_basis_[i]));
  return x;
}

AlgebraPtr Algebra::twist(const Vec& v) const {
  if (!sigma_) fail(Errc::AlgebraMismatch, "twist requires an involution");
  if (!is_hermitian(v)) fail(Errc::NotHermitian, "twist element is not hermitian");
  Vec vi = inv(v);
  auto copy = std::shared_ptr<Algebra>(new Algebra(*this));
  const std::size_t n = kdim();
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    m.set_column(j, mul(mul(v, involve(linalg::unit_vec(n, j))), vi));
  copy->sigma_ = std::move(m);
  copy->finish_involution();
  return copy;
}

Vec Algebra::center_conj(const Vec& c) const {
  if (cdim_ == 1) return c;
  return center_->galois(c, etale::GaloisMap::Bar);
}

Rational Algebra::center_trace_rational(const Vec& c) const { return center_->trace(c); }

bool Algebra::center_is_rational(const Vec& c) const { return center_conj(c) == c; }

Rational Algebra::center_as_rational(const Vec& c) const {
  auto coords = linalg::coordinates({center_->one()}, c);
  if (!coords) fail(Errc::AlgebraMismatch, "center element not rational: " + linalg::to_string(c));
  return (*coords)[0];
}

void Algebra::finish_tables() {
  compact_.assign(rank_ * rank_, {});
  for (std::size_t i = 0; i < rank_ * rank_; ++i) {
    for (std::size_t m = 0; m < rank_; ++m) {
      Vec b = block_of(table_[i], m, cdim_);
      if (!linalg::is_zero(b)) compact_[i].push_back({m, std::move(b)});
    }
  }
  // Reduced trace as a linear form over the rationals.
  trace_mat_ = Mat(cdim_, kdim());
  const Rational scale(3, static_cast<long>(rank_));
  for (std::size_t col = 0; col < kdim(); ++col) {
    Vec t(cdim_);
    const std::size_t i = col / cdim_, a = col % cdim_;
    for (std::size_t j = 0; j < rank_; ++j) {
      // block j of (k_a b_i) * b_j
      const auto& entries = compact_[i * rank_ + j];
      for (const auto& [m, coeff] : entries)
        if (m == j) t = linalg::add(t, center_->mul(linalg::unit_vec(cdim_, a), coeff));
    }
    for (std::size_t a2 = 0; a2 < cdim_; ++a2) trace_mat_.at(a2, col) = scale * t[a2];
  }
}

void Algebra::finish_involution() {
  if (!sigma_) return;
  const std::size_t n = kdim();
  const Mat& s = *sigma_;
  if (s.rows() != n || s.cols() != n) fail(Errc::DimensionMismatch, "involution matrix size");
  if (!s.mul(s).is_identity())
    fail(Errc::InvalidSpec, "involution is not of order 2 on " + describe());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec lhs = s.apply(mul(linalg::unit_vec(n, i), linalg::unit_vec(n, j)));
      Vec rhs = mul(s.column(j), s.column(i));
      if (lhs != rhs)
        fail(Errc::InvalidSpec, "involution not anti-multiplicative at basis pair (" +
                                    std::to_string(i) + "," + std::to_string(j) +
                                    "); witness sigma(b_i b_j) = " + linalg::to_string(lhs) +
                                    " vs sigma(b_j) sigma(b_i) = " + linalg::to_string(rhs));
    }
  for (std::size_t a = 0; a < cdim_; ++a) {
    Vec ka = linalg::unit_vec(cdim_, a);
    if (s.apply(embed_center(ka)) != embed_center(center_conj(ka)))
      fail(Errc::InvalidSpec, "involution does not restrict to the center conjugation");
  }
  Mat diff = s.minus(Mat::identity(n));
  herm_basis_ = linalg::nullspace(diff);
  if (herm_basis_.size() != rank_)
    fail(Errc::InvalidSpec, "hermitian subspace has dimension " +
                                std::to_string(herm_basis_.size()) + ", expected " +
                                std::to_string(rank_));
  // Pivot-row solver for fast exact coordinates in the hermitian basis.
  Mat hmat = Mat::from_columns(herm_basis_);
  herm_pivot_rows_.clear();
  linalg::Span span(rank_);
  for (std::size_t row = 0; row < n && herm_pivot_rows_.size() < rank_; ++row) {
    Vec r(rank_);
    for (std::size_t j = 0; j < rank_; ++j) r[j] = hmat.at(row, j);
    if (span.insert(r)) herm_pivot_rows_.push_back(row);
  }
  Mat square(rank_, rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) square.at(i, j) = hmat.at(herm_pivot_rows_[i], j);
  auto invsq = linalg::inverse(square);
  if (!invsq) fail(Errc::InvalidSpec, "hermitian basis is degenerate");
  herm_solver_ = std::move(*invsq);
}

AlgebraPtr Algebra::mat3(etale::AlgebraPtr center) {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->model_ = Model::Mat3;
  a->center_ = std::move(center);
  a->cdim_ = a->center_->dim();
  a->rank_ = 9;
  const std::size_t cd = a->cdim_;
  a->table_.assign(81, Vec());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
          Vec prod(9 * cd);
          if (j == k) add_block(prod, i * 3 + l, a->center_->one(), cd);
          a->table_[(i * 3 + j) * 9 + (k * 3 + l)] = std::move(prod);
        }
  a->one_.assign(9 * cd, Rational(0));
  for (std::size_t i = 0; i < 3; ++i) add_block(a->one_, i * 3 + i, a->center_->one(), cd);
  a->finish_tables();
  return a;
}

AlgebraPtr Algebra::mat3_unitary(etale::AlgebraPtr center, std::optional<Vec> w_opt) {
  if (center->dim() != 2) fail(Errc::InvalidSpec, "unitary involution needs a quadratic center");
  auto base = mat3(std::move(center));
  auto a = std::shared_ptr<Algebra>(new Algebra(*base));
  a->inv_kind_ = Involution::UnitaryTranspose;
  const std::size_t n = a->kdim();
  const std::size_t cd = a->cdim_;
  Mat ct(n, n); // conjugate transpose as a rational-linear map
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t e = 0; e < cd; ++e) {
        Vec img(n);
        add_block(img, j * 3 + i, a->center_conj(linalg::unit_vec(cd, e)), cd);
        ct.set_column((i * 3 + j) * cd + e, img);
      }
  Vec w = w_opt ? std::move(*w_opt) : a->one_;
  if (w.size() != n) fail(Errc::DimensionMismatch, "hermitian twist has wrong length");
  if (ct.apply(w) != w) fail(Errc::NotHermitian, "hermitian twist is not conj-transpose symmetric");
  Vec wi = a->inv(w);
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    m.set_column(j, a->mul(a->mul(w, ct.column(j)), wi));
  a->sigma_ = std::move(m);
  a->finish_involution();
  return a;
}

AlgebraPtr Algebra::etale3(etale::AlgebraPtr e) {
  const auto& spec = e->spec();
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->model_ = Model::Etale3;
  a->module_ = e;
  if (spec.kind == etale::Kind::Composite) {
    a->center_ = e->quadratic_part();
    a->cdim_ = a->center_->dim();
    a->rank_ = 3;
    a->one_ = e->one();
    a->table_.assign(9, Vec());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        a->table_[i * 3 + j] = e->mul(e->embed_cubic(linalg::unit_vec(3, i)),
                                      e->embed_cubic(linalg::unit_vec(3, j)));
    a->finish_tables();
    a->inv_kind_ = Involution::EtaleStar;
    a->sigma_ = e->galois_matrix(etale::GaloisMap::Star);
    a->finish_involution();
  } else if (spec.is_cubic_kind()) {
    a->center_ = etale::Algebra::make(etale::Spec::rationals());
    a->cdim_ = 1;
    a->rank_ = 3;
    a->one_ = e->one();
    a->table_.assign(9, Vec());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        a->table_[i * 3 + j] = e->mul(linalg::unit_vec(3, i), linalg::unit_vec(3, j));
    a->finish_tables();
  } else {
    fail(Errc::InvalidSpec, "etale3 requires a cubic or composite etale algebra");
  }
  return a;
}

AlgebraPtr Algebra::crossed_product(etale::AlgebraPtr m, Vec gamma, bool with_involution) {
  const auto& spec = m->spec();
  const bool composite = spec.kind == etale::Kind::Composite;
  if (!composite && !spec.is_cubic_kind())
    fail(Errc::InvalidSpec, "crossed product needs a cubic etale part");
  if (!m->has_map(etale::GaloisMap::Rho))
    fail(Errc::InvalidSpec, "crossed product needs a Galois generator rho on the etale part");
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->model_ = Model::CrossedProduct;
  a->module_ = m;
  a->center_ = composite ? m->quadratic_part() : etale::Algebra::make(etale::Spec::rationals());
  a->cdim_ = a->center_->dim();
  a->rank_ = 9;
  a->gamma_ = std::move(gamma);
  if (a->gamma_.size() != a->cdim_) fail(Errc::DimensionMismatch, "gamma must be a center element");
  if (!linalg::solve(a->center_->regular_matrix(a->gamma_), a->center_->one()))
    fail(Errc::NotInvertible, "gamma must be a unit in the center");

  const std::size_t md = m->dim();
  const std::size_t cd = a->cdim_;
  const Mat& rho = m->galois_matrix(etale::GaloisMap::Rho);
  Mat rho_pow[3] = {Mat::identity(md), rho, rho.mul(rho)};
  Vec gamma_m = a->module_etale_embed_center(a->gamma_);

  // basis index = zpow * 3 + t; the rational layout inside each z block is
  // the etale algebra's own (module, center) layout.
  auto embed_at = [&](std::size_t zpow, const Vec& mm) {
    Vec x(a->rank_ * cd);
    for (std::size_t i = 0; i < md; ++i) x[zpow * 3 * cd + i] = mm[i];
    return x;
  };
  auto module_basis_vec = [&](std::size_t t) {
    if (composite) return m->embed_cubic(linalg::unit_vec(3, t));
    return linalg::unit_vec(3, t);
  };

  a->table_.assign(81, Vec());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t t1 = 0; t1 < 3; ++t1)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t t2 = 0; t2 < 3; ++t2) {
          // (m1 z^i)(m2 z^j) = m1 rho^i(m2) z^(i+j), z^3 = gamma
          Vec prod = m->mul(module_basis_vec(t1), rho_pow[i].apply(module_basis_vec(t2)));
          std::size_t zp = i + j;
          if (zp >= 3) {
            zp -= 3;
            prod = m->mul(gamma_m, prod);
          }
          a->table_[(i * 3 + t1) * 9 + (j * 3 + t2)] = embed_at(zp, prod);
        }
  a->one_ = embed_at(0, m->one());
  a->finish_tables();

  if (with_involution) {
    a->inv_kind_ = Involution::StandardCrossed;
    // sigma(m z^p) = z^{-p} conj(m); z^{-1} = gamma^{-1} z^2, z^{-2} = gamma^{-1} z.
    const Mat* conj = composite ? &m->galois_matrix(etale::GaloisMap::Star) : nullptr;
    Vec gamma_inv_m = m->inv(gamma_m);
    const std::size_t n = a->kdim();
    Mat s(n, n);
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t i = 0; i < md; ++i) {
        Vec mm(md);
        mm[i] = Rational(1);
        Vec cm = conj ? conj->apply(mm) : mm;
        Vec img;
        if (p == 0) img = embed_at(0, cm);
        else if (p == 1) img = embed_at(2, m->mul(gamma_inv_m, rho_pow[2].apply(cm)));
        else img = embed_at(1, m->mul(gamma_inv_m, rho_pow[1].apply(cm)));
        s.set_column(p * 3 * cd + i, img);
      }
    a->sigma_ = std::move(s);
    a->finish_involution();
  }
  return a;
}

AlgebraPtr Algebra::double_opposite(AlgebraPtr inner) {
  if (inner->center_dim() != 1)
    fail(Errc::InvalidSpec, "double opposite expects an algebra over the rationals");
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->model_ = Model::DoubleOpposite;
  a->inner_ = std::move(inner);
  a->center_ = etale::Algebra::make(etale::Spec::split_quadratic());
  a->cdim_ = 2;
  a->rank_ = a->inner_->rank();
  const std::size_t r = a->rank_;
  a->table_.assign(r * r, Vec());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Vec pij = a->inner_->mul(linalg::unit_vec(r, i), linalg::unit_vec(r, j));
      Vec pji = a->inner_->mul(linalg::unit_vec(r, j), linalg::unit_vec(r, i));
      Vec prod(r * 2);
      for (std::size_t t = 0; t < r; ++t) {
        prod[t * 2 + 0] = pij[t];
        prod[t * 2 + 1] = pji[t]; // the opposite factor multiplies reversed
      }
      a->table_[i * r + j] = std::move(prod);
    }
  a->one_ = a->pair_element(a->inner_->one(), a->inner_->one());
  a->finish_tables();
  a->inv_kind_ = Involution::Switch;
  const std::size_t n = a->kdim();
  Mat s(n, n);
  for (std::size_t t = 0; t < r; ++t) {
    s.at(t * 2 + 0, t * 2 + 1) = Rational(1);
    s.at(t * 2 + 1, t * 2 + 0) = Rational(1);
  }
  a->sigma_ = std::move(s);
  a->finish_involution();
  return a;
}

AlgebraPtr Algebra::with_involution_matrix(const AlgebraPtr& base, Mat sigma, Involution kind) {
  auto a = std::shared_ptr<Algebra>(new Algebra(*base));
  a->inv_kind_ = kind;
  a->sigma_ = std::move(sigma);
  a->finish_involution();
  return a;
}

Element::Element(AlgebraPtr a, Vec coords) : alg(std::move(a)), v(std::move(coords)) {
  if (!alg) fail(Errc::InvalidSpec, "element without algebra");
  if (v.size() != alg->kdim()) fail(Errc::DimensionMismatch, "coordinate length mismatch");
}

namespace {
void require_same(const Element& a, const Element& b) {
  if (a.alg.get() != b.alg.get()) fail(Errc::AlgebraMismatch, "elements of different algebras");
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

Element Element::involve() const { return Element(alg, alg->involve(v)); }
Element Element::sharp() const { return Element(alg, alg->sharp(v)); }
Element Element::inverse() const { return Element(alg, alg->inv(v)); }

bool Element::operator==(const Element& o) const { return alg.get() == o.alg.get() && v == o.v; }

} // namespace albert::assoc
