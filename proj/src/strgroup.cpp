#include "albert/strgroup.hpp"

#include <sstream>

#include "albert/error.hpp"

namespace albert::strg {

Letter scalar_letter(Rational lambda) {
  Letter l;
  l.kind = Letter::Kind::Scalar;
  l.lambda = std::move(lambda);
  l.name = "scalar";
  return l;
}

Letter u_letter(Vec x) {
  Letter l;
  l.kind = Letter::Kind::UOp;
  l.x = std::move(x);
  l.name = "uop";
  return l;
}

Letter aut_letter(Mat m, std::string name) {
  Letter l;
  l.kind = Letter::Kind::Aut;
  l.m = std::move(m);
  l.name = std::move(name);
  return l;
}

Letter linear_letter(Mat m, std::string name) {
  Letter l;
  l.kind = Letter::Kind::Linear;
  l.m = std::move(m);
  l.name = std::move(name);
  return l;
}

namespace {

// Operator matrix and multiplier of a single letter.
std::pair<Mat, Rational> letter_data(const cubic::Structure& s, const Letter& l) {
  const std::size_t n = s.dim();
  switch (l.kind) {
    case Letter::Kind::Scalar: {
      if (l.lambda.is_zero()) fail(Errc::NotInvertible, "scalar homothety by zero");
      return {Mat::identity(n).scaled(l.lambda), l.lambda.pow(3)};
    }
    case Letter::Kind::UOp: {
      const Rational nx = s.norm(l.x);
      if (nx.is_zero())
        fail(Errc::NotInvertible, "U-operator of a singular element " + linalg::to_string(l.x));
      return {s.u_matrix(l.x), nx * nx};
    }
    case Letter::Kind::Aut: {
      if (l.m.rows() != n || l.m.cols() != n) fail(Errc::DimensionMismatch, "automorphism letter");
      return {l.m, Rational(1)};
    }
    case Letter::Kind::Linear: {
      if (l.m.rows() != n || l.m.cols() != n) fail(Errc::DimensionMismatch, "linear letter");
      const Rational nu = s.norm(l.m.apply(s.base_point()));
      if (nu.is_zero())
        fail(Errc::CertificationFailure, "linear letter sends the identity to a singular point");
      return {l.m, nu};
    }
  }
  fail(Errc::CertificationFailure, "unknown letter kind");
}

} // namespace

Word Word::make(StructurePtr s, std::vector<Letter> letters) {
  Word w;
  w.s_ = std::move(s);
  w.letters_ = std::move(letters);
  const std::size_t n = w.s_->dim();
  Mat op = Mat::identity(n);
  Rational nu(1);
  for (const auto& l : w.letters_) {
    auto [m, lnu] = letter_data(*w.s_, l);
    op = op.mul(m); // rightmost letter applied first
    nu *= lnu;
  }
  w.op_ = std::move(op);
  w.nu_ = std::move(nu);
  if (linalg::det(w.op_).is_zero())
    fail(Errc::NotInvertible, "composite word operator is singular");
  w.cert_ = cubic::cubic_form_equal(w.op_, *w.s_, *w.s_, w.nu_);
  if (!w.cert_.equal)
    fail(Errc::CertificationFailure,
         "word is not a norm similarity with the bookkept multiplier " + w.nu_.str() +
             "; witness " + linalg::to_string(*w.cert_.witness));
  return w;
}

Word Word::identity(StructurePtr s) { return make(std::move(s), {}); }

Word Word::composed_with(const Word& rhs) const {
  if (s_.get() != rhs.s_.get()) fail(Errc::SpecMismatch, "words over different structures");
  std::vector<Letter> letters = letters_;
  letters.insert(letters.end(), rhs.letters_.begin(), rhs.letters_.end());
  return make(s_, std::move(letters));
}

Word Word::inverse() const {
  std::vector<Letter> inv;
  inv.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    const Letter& l = *it;
    switch (l.kind) {
      case Letter::Kind::Scalar:
        inv.push_back(scalar_letter(l.lambda.inv()));
        break;
      case Letter::Kind::UOp:
        // U_x^{-1} = U_{x^{-1}}
        inv.push_back(u_letter(s_->inverse(l.x)));
        break;
      case Letter::Kind::Aut:
      case Letter::Kind::Linear: {
        auto m = linalg::inverse(l.m);
        if (!m) fail(Errc::NotInvertible, "letter operator is singular");
        Letter li = l;
        li.m = std::move(*m);
        li.name = l.name + "^-1";
        inv.push_back(std::move(li));
        break;
      }
    }
  }
  return make(s_, std::move(inv));
}

bool is_automorphism(const Word& w) {
  const bool fixes = w.apply(w.structure()->base_point()) == w.structure()->base_point();
  if (fixes && !w.multiplier().is_one())
    fail(Errc::CertificationFailure, "fixed identity but nu != 1; certification inconsistent");
  return fixes;
}

Word normalize_to_isometry(const Word& w) {
  const auto& s = w.structure();
  Vec a = w.apply(s->base_point());
  const Rational na = s->norm(a);
  if (na.is_zero()) fail(Errc::NotInvertible, "w(c) is singular"); // impossible for certified words
  std::vector<Letter> letters;
  letters.push_back(scalar_letter(na.inv()));
  letters.push_back(u_letter(a));
  for (const auto& l : w.letters()) letters.push_back(l);
  Word result = Word::make(s, std::move(letters));
  if (!result.multiplier().is_one())
    fail(Errc::CertificationFailure, "normalization did not reach nu = 1");
  return result;
}

Subalgebra Subalgebra::from_basis(StructurePtr s, std::vector<Vec> basis) {
  Subalgebra sub;
  sub.s_ = std::move(s);
  // reduce to an independent family
  linalg::Span span(sub.s_->dim());
  std::vector<Vec> kept;
  for (auto& v : basis)
    if (span.insert(v)) kept.push_back(std::move(v));
  sub.basis_ = std::move(kept);
  // must contain the base point and be #-closed
  if (!span.contains(sub.s_->base_point()))
    fail(Errc::InvalidSpec, "subalgebra does not contain the identity");
  for (std::size_t i = 0; i < sub.basis_.size(); ++i) {
    if (!span.contains(sub.s_->adjoint(sub.basis_[i])))
      fail(Errc::InvalidSpec, "subalgebra is not closed under the adjoint");
    for (std::size_t j = i + 1; j < sub.basis_.size(); ++j)
      if (!span.contains(sub.s_->sharp_bilinear(sub.basis_[i], sub.basis_[j])))
        fail(Errc::InvalidSpec, "subalgebra is not closed under the bilinearization");
  }
  return sub;
}

bool Subalgebra::contains(const Vec& v) const {
  linalg::Span span(s_->dim());
  for (const auto& b : basis_) span.insert(b);
  return span.contains(v);
}

std::optional<Vec> Subalgebra::coordinates(const Vec& v) const {
  return linalg::coordinates(basis_, v);
}

Subalgebra fixed_subalgebra(const Word& w) {
  if (!is_automorphism(w)) fail(Errc::NotAutomorphism, "fixed subalgebra needs an automorphism");
  const std::size_t n = w.structure()->dim();
  Mat diff = w.op().minus(Mat::identity(n));
  auto kernel = linalg::nullspace(diff);
  return Subalgebra::from_basis(w.structure(), std::move(kernel));
}

Subalgebra generated_subalgebra(const StructurePtr& s, const std::vector<Vec>& elements) {
  linalg::Span span(s->dim());
  std::vector<Vec> basis;
  auto grow = [&](const Vec& v) {
    if (span.insert(v)) {
      basis.push_back(v);
      return true;
    }
    return false;
  };
  grow(s->base_point());
  for (const auto& e : elements) grow(e);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t m = basis.size();
    for (std::size_t i = 0; i < m && !changed; ++i)
      if (grow(s->adjoint(basis[i]))) changed = true;
    for (std::size_t i = 0; i < m && !changed; ++i)
      for (std::size_t j = i + 1; j < m && !changed; ++j)
        if (grow(s->sharp_bilinear(basis[i], basis[j]))) changed = true;
  }
  return Subalgebra::from_basis(s, std::move(basis));
}

const char* stratum_name(Stratum s) {
  switch (s) {
    case Stratum::Base: return "k";
    case Stratum::Cubic: return "cubic";
    case Stratum::Nine: return "nine";
    case Stratum::Full: return "full";
  }
  return "?";
}

const char* invariance_name(Invariance s) {
  switch (s) {
    case Invariance::PointwiseFixed: return "pointwise-fixed";
    case Invariance::Invariant: return "invariant";
    case Invariance::Neither: return "neither";
  }
  return "?";
}

namespace {

// Diagnostic for a 3-dimensional subalgebra: minimal polynomial of a
// generating element and an exact linear-factor count over the rationals.
std::string cubic_diagnostic(const Subalgebra& sub) {
  const auto& s = sub.structure();
  // find an element generating the subalgebra together with c
  std::vector<Vec> candidates = sub.basis();
  {
    Vec mix = linalg::zero_vec(s->dim());
    long w = 1;
    for (const auto& b : sub.basis()) mix = linalg::add(mix, linalg::scale(Rational(w++), b));
    candidates.push_back(mix);
    Vec mix2 = linalg::zero_vec(s->dim());
    w = 1;
    for (const auto& b : sub.basis()) {
      mix2 = linalg::add(mix2, linalg::scale(Rational(w * w + 1), b));
      ++w;
    }
    candidates.push_back(mix2);
  }
  for (const auto& cand : candidates) {
    Vec x = cand;
    Vec x2 = s->jordan_square(x);
    linalg::Span span(s->dim());
    span.insert(s->base_point());
    span.insert(x);
    if (!span.insert(x2)) continue; // not a generator
    // x^3 via Jordan multiplication (power-associative on sharp-closed spans)
    Vec x3 = s->jordan_mul(x2, x);
    // minimal polynomial t^3 - a2 t^2 - a1 t - a0 from coordinates
    auto coords = linalg::coordinates({s->base_point(), x, x2}, x3);
    if (!coords) continue;
    const Rational a0 = (*coords)[0], a1 = (*coords)[1], a2 = (*coords)[2];
    // count rational roots of t^3 - a2 t^2 - a1 t - a0 by rational root test
    // over a small search (coefficients here come from desk-scale data).
    std::size_t roots = 0;
    for (long num = -60; num <= 60; ++num)
      for (long den = 1; den <= 12; ++den) {
        const Rational t(num, den);
        if (t.denominator() != Rational(den)) continue; // skip duplicates
        const Rational val = t.pow(3) - a2 * t * t - a1 * t - a0;
        if (val.is_zero()) ++roots;
      }
    std::ostringstream os;
    os << "minpoly t^3 - (" << a2 << ")t^2 - (" << a1 << ")t - (" << a0 << "), rational roots "
       << roots << (roots == 0 ? " (cubic field candidate)" : " (etale with split factor)");
    return os.str();
  }
  return "no single generator found";
}

} // namespace

Classification classify_subalgebra(const Subalgebra& s) {
  Classification c;
  c.dim = s.dim();
  switch (c.dim) {
    case 1: c.stratum = Stratum::Base; c.diagnostic = "the base field"; break;
    case 3: c.stratum = Stratum::Cubic; c.diagnostic = cubic_diagnostic(s); break;
    case 9: c.stratum = Stratum::Nine; c.diagnostic = "(B,sigma)_+ stratum"; break;
    case 27: c.stratum = Stratum::Full; c.diagnostic = "the full algebra"; break;
    default:
      fail(Errc::UnexpectedDimension,
           "subalgebra dimension " + std::to_string(c.dim) + " outside {1,3,9,27}");
  }
  return c;
}

Invariance invariant_check(const Word& w, const Subalgebra& s) {
  bool pointwise = true;
  bool invariant = true;
  for (const auto& b : s.basis()) {
    Vec image = w.apply(b);
    if (image != b) pointwise = false;
    if (!s.contains(image)) invariant = false;
  }
  if (pointwise) return Invariance::PointwiseFixed;
  return invariant ? Invariance::Invariant : Invariance::Neither;
}

namespace {

std::vector<Vec> embed_columns(const EmbeddedEtale& l) {
  std::vector<Vec> cols;
  for (std::size_t a = 0; a < l.embed.cols(); ++a) cols.push_back(l.embed.column(a));
  return cols;
}

} // namespace

Decomposition restriction_decompose(const Word& w, const EmbeddedEtale& l) {
  const auto cols = embed_columns(l);
  linalg::Span span(w.structure()->dim());
  for (const auto& cvec : cols) span.insert(cvec);
  for (const auto& cvec : cols)
    if (!span.contains(w.apply(cvec)))
      fail(Errc::NotInvariant, "word does not stabilize the etale subalgebra");
  Vec a_ambient = w.apply(w.structure()->base_point());
  auto a_l = linalg::coordinates(cols, a_ambient);
  if (!a_l) fail(Errc::NoDecomposition, "w(c) is outside the etale subalgebra");

  const auto& alg = l.alg;
  std::vector<Mat> galois;
  galois.push_back(Mat::identity(alg->dim()));
  if (alg->has_map(etale::GaloisMap::Rho)) {
    const Mat& rho = alg->galois_matrix(etale::GaloisMap::Rho);
    galois.push_back(rho);
    galois.push_back(rho.mul(rho));
  }
  for (std::size_t p = 0; p < galois.size(); ++p) {
    bool match = true;
    for (std::size_t basis = 0; basis < alg->dim() && match; ++basis) {
      Vec expected_l = alg->mul(galois[p].apply(linalg::unit_vec(alg->dim(), basis)), *a_l);
      Vec expected = l.embed.apply(expected_l);
      if (w.apply(cols[basis]) != expected) match = false;
    }
    if (match) return Decomposition{*a_l, p};
  }
  fail(Errc::NoDecomposition, "restriction is not R_a composed with a declared Galois power");
}

Word aut_square_witness(const Word& w, const EmbeddedEtale& m) {
  const auto cols = embed_columns(m);
  linalg::Span span(w.structure()->dim());
  for (const auto& cvec : cols) span.insert(cvec);
  for (const auto& cvec : cols)
    if (!span.contains(w.apply(cvec)))
      fail(Errc::RestrictionNotHomothety, "word does not stabilize the etale subalgebra");
  Vec a_ambient = w.apply(w.structure()->base_point());
  auto a_l = linalg::coordinates(cols, a_ambient);
  if (!a_l) fail(Errc::RestrictionNotHomothety, "w(c) lies outside the etale subalgebra");
  for (std::size_t basis = 0; basis < m.alg->dim(); ++basis) {
    Vec expected = m.embed.apply(m.alg->mul(linalg::unit_vec(m.alg->dim(), basis), *a_l));
    if (w.apply(cols[basis]) != expected)
      fail(Errc::RestrictionNotHomothety,
           "restriction is not the right homothety by w(c) at basis " + std::to_string(basis));
  }
  // a^{-1} inside the etale algebra, embedded
  Vec a_inv = m.embed.apply(m.alg->inv(*a_l));
  std::vector<Letter> letters;
  for (const auto& l : w.letters()) letters.push_back(l);
  for (const auto& l : w.letters()) letters.push_back(l);
  letters.push_back(u_letter(a_inv));
  Word witness = Word::make(w.structure(), std::move(letters));
  if (!is_automorphism(witness))
    fail(Errc::CertificationFailure, "square witness is not an automorphism");
  return witness;
}

bool conjugate_aut_group_check(const Word& psi, const Word& phi) {
  if (!is_automorphism(phi)) fail(Errc::NotAutomorphism, "phi must be an automorphism");
  Word conj = psi.composed_with(phi).composed_with(psi.inverse());
  if (!conj.multiplier().is_one())
    fail(Errc::CertificationFailure, "conjugated word has nu != 1");
  Vec v = psi.apply(psi.structure()->base_point());
  return conj.apply(v) == v;
}

} // namespace albert::strg
