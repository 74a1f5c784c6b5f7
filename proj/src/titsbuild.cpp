#include "albert/titsbuild.hpp"

#include "albert/error.hpp"

namespace albert::tits {

Vec Jordan::embed_first(const Vec& herm_coords) const {
  if (herm_coords.size() != herm_dim()) fail(Errc::DimensionMismatch, "embed_first");
  Vec j(dim());
  for (std::size_t i = 0; i < herm_coords.size(); ++i) j[i] = herm_coords[i];
  return j;
}

Vec Jordan::embed_second(const Vec& b_coords) const {
  if (b_coords.size() != b_->kdim()) fail(Errc::DimensionMismatch, "embed_second");
  Vec j(dim());
  for (std::size_t i = 0; i < b_coords.size(); ++i) j[herm_dim() + i] = b_coords[i];
  return j;
}

std::pair<Vec, Vec> Jordan::split(const Vec& j) const {
  if (j.size() != dim()) fail(Errc::DimensionMismatch, "split");
  Vec h(herm_dim()), x(b_->kdim());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = j[i];
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = j[herm_dim() + i];
  return {h, x};
}

Vec Jordan::embed_hermitian_element(const Vec& b_elt) const {
  return embed_first(b_->hermitian_coords(b_elt));
}

Mat Jordan::embedded_cubic_etale() const {
  if (b_->model() != assoc::Model::Etale3 ||
      b_->module_etale()->spec().kind != etale::Kind::Composite)
    fail(Errc::AlgebraMismatch, "embedded cubic etale requires the LK model");
  const auto& lk = b_->module_etale();
  Mat m(dim(), 3);
  for (std::size_t a = 0; a < 3; ++a) {
    Vec l = lk->embed_cubic(linalg::unit_vec(3, a));
    m.set_column(a, embed_first(b_->hermitian_coords(l)));
  }
  return m;
}

Jordan build_tits(assoc::AlgebraPtr b, Vec u, Vec mu, std::size_t axiom_trials,
                  std::uint64_t seed) {
  if (!b->has_involution()) fail(Errc::NotAdmissible, "Tits process requires an involution");
  if (u.size() != b->kdim()) fail(Errc::DimensionMismatch, "u has wrong coordinate length");
  if (mu.size() != b->center_dim()) fail(Errc::DimensionMismatch, "mu has wrong coordinate length");
  if (!b->is_hermitian(u)) fail(Errc::NotAdmissible, "sigma(u) != u");
  const auto& center = b->center();
  if (!linalg::solve(center.regular_matrix(mu), center.one()))
    fail(Errc::NotAdmissible, "mu is not a unit");
  Vec nb_u = b->reduced_norm(u);
  if (!linalg::solve(center.regular_matrix(nb_u), center.one()))
    fail(Errc::NotAdmissible, "u is not a unit (N_B(u) = " + linalg::to_string(nb_u) + ")");
  Vec mu_mubar = center.mul(mu, b->center_conj(mu));
  if (nb_u != mu_mubar)
    fail(Errc::NotAdmissible, "N_B(u) != mu conj(mu): N_B(u) = " + linalg::to_string(nb_u) +
                                  ", mu conj(mu) = " + linalg::to_string(mu_mubar));

  Jordan j;
  j.b_ = b;
  j.pair_ = AdmissiblePair{u, mu};
  const std::size_t hd = b->rank();
  const std::size_t n = hd + b->kdim();

  Vec u_inv = b->inv(u);
  Vec mu_bar = b->center_conj(mu);
  const bool u_is_one = b->is_one(u);

  auto split_raw = [hd, b](const Vec& jv) {
    Vec h(hd), x(b->kdim());
    for (std::size_t i = 0; i < hd; ++i) h[i] = jv[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = jv[hd + i];
    return std::pair<Vec, Vec>{std::move(h), std::move(x)};
  };

  auto norm = [b, u, mu, u_is_one, split_raw](const Vec& jv) -> Rational {
    auto [h, x] = split_raw(jv);
    Vec belt = b->from_hermitian(h);
    // N_B(b) is conjugation-fixed for hermitian b; assert rationality.
    Rational nb = b->center_as_rational(b->reduced_norm(belt));
    Vec nx = b->reduced_norm(x);
    Rational tk = b->center_trace_rational(b->center().mul(mu, nx));
    Vec prod = b->mul(belt, x);
    if (!u_is_one) prod = b->mul(prod, u);
    prod = b->mul(prod, b->involve(x));
    Vec tb = b->reduced_trace(prod);
    // The trace term lands in k for admissible data; asserted at runtime.
    Rational tbr = b->center_as_rational(tb);
    return nb + tk - tbr;
  };

  auto adj = [b, u, mu_bar, u_inv, u_is_one, hd, split_raw](const Vec& jv) -> Vec {
    auto [h, x] = split_raw(jv);
    Vec belt = b->from_hermitian(h);
    Vec sx = b->involve(x);
    // first: b# - x u sigma(x)
    Vec xus = u_is_one ? b->mul(x, sx) : b->mul(b->mul(x, u), sx);
    Vec first = linalg::sub(b->sharp(belt), xus);
    // second: conj(mu) sigma(x)# u^{-1} - b x
    Vec second = b->center_scale(mu_bar, b->sharp(sx));
    if (!u_is_one) second = b->mul(second, u_inv);
    second = linalg::sub(second, b->mul(belt, x));
    Vec out(hd + x.size());
    Vec hc = b->hermitian_coords(first);
    for (std::size_t i = 0; i < hd; ++i) out[i] = hc[i];
    for (std::size_t i = 0; i < second.size(); ++i) out[hd + i] = second[i];
    return out;
  };

  Vec base(n);
  {
    Vec one_h = b->hermitian_coords(b->one());
    for (std::size_t i = 0; i < hd; ++i) base[i] = one_h[i];
  }

  j.s_ = cubic::Structure::make(n, norm, adj, base, "titsProcess");
  if (!j.s_->norm(base).is_one())
    fail(Errc::NotAdmissible, "identity norm is not 1"); // unreachable for valid data
  if (axiom_trials > 0) cubic::require_axioms(*j.s_, axiom_trials, seed);
  return j;
}

Jordan build_first_construction(const assoc::AlgebraPtr& d, const Rational& mu,
                                std::size_t axiom_trials, std::uint64_t seed) {
  if (mu.is_zero()) fail(Errc::NotAdmissible, "mu must be nonzero");
  auto b = assoc::Algebra::double_opposite(d);
  Vec u = b->one();
  // admissibility over k x k: mu = (m, N_D(u)/m) with u = 1
  Vec mu_pair{mu, mu.inv()};
  return build_tits(b, u, mu_pair, axiom_trials, seed);
}

cubic::StructurePtr hermitian_structure(const assoc::AlgebraPtr& b) {
  if (b->has_involution()) {
    const std::size_t r = b->rank();
    auto norm = [b](const Vec& h) {
      return b->center_as_rational(b->reduced_norm(b->from_hermitian(h)));
    };
    auto adj = [b](const Vec& h) { return b->hermitian_coords(b->sharp(b->from_hermitian(h))); };
    return cubic::Structure::make(r, norm, adj, b->hermitian_coords(b->one()), "hermitian");
  }
  if (b->center_dim() != 1)
    fail(Errc::AlgebraMismatch, "hermitian structure needs an involution or a rational center");
  auto norm = [b](const Vec& x) { return b->reduced_norm(x)[0]; };
  auto adj = [b](const Vec& x) { return b->sharp(x); };
  return cubic::Structure::make(b->kdim(), norm, adj, b->one(), "hermitian");
}

cubic::StructurePtr etale_structure(const etale::AlgebraPtr& e) {
  if (!e->spec().is_cubic_kind()) fail(Errc::InvalidSpec, "etale structure needs a cubic algebra");
  auto norm = [e](const Vec& x) { return e->norm(x); };
  auto adj = [e](const Vec& x) {
    const Rational t = e->trace(x);
    Vec x2 = e->mul(x, x);
    const Rational t2 = e->trace(x2);
    const Rational s = (t * t - t2) / Rational(2);
    return linalg::add(linalg::sub(x2, linalg::scale(t, x)), linalg::scale(s, e->one()));
  };
  return cubic::Structure::make(e->dim(), norm, adj, e->one(), "etale");
}

cubic::StructurePtr isotope(const cubic::StructurePtr& s, const Vec& v) {
  const Rational nv = s->norm(v);
  if (nv.is_zero()) fail(Errc::NotInvertible, "isotope by a singular element");
  auto u_inv = linalg::inverse(s->u_matrix(v));
  if (!u_inv) fail(Errc::NotInvertible, "U_v is singular"); // impossible when N(v) != 0
  Mat u_inv_m = std::move(*u_inv);
  auto parent = s;
  auto norm = [parent, nv](const Vec& x) { return nv * parent->norm(x); };
  auto adj = [parent, nv, u_inv_m](const Vec& x) {
    return linalg::scale(nv, u_inv_m.apply(parent->adjoint(x)));
  };
  Vec base = parent->inverse(v);
  return cubic::Structure::make(s->dim(), norm, adj, base, "isotope", s->labels());
}

EtaleIsotopeReplay isotope_params(const Jordan& j, const Vec& v_l) {
  const auto& b = j.algebra();
  if (b->model() != assoc::Model::Etale3 ||
      b->module_etale()->spec().kind != etale::Kind::Composite)
    fail(Errc::AlgebraMismatch, "isotope_params requires the J(LK,*,u,mu) model");
  const auto& lk = b->module_etale();
  const auto& l_alg = lk->cubic_part();
  if (v_l.size() != 3) fail(Errc::DimensionMismatch, "v must be an L element");
  const Rational nv = l_alg->norm(v_l);
  if (nv.is_zero()) fail(Errc::NotInvertible, "v is singular in L");

  Vec v_lk = lk->embed_cubic(v_l);
  // u v# in B coordinates (u is hermitian = lies in embedded L)
  Vec v_sharp_lk = [&]() {
    // adjoint inside L, embedded: v# = v^2 - T v + s 1 over L
    const Rational t = l_alg->trace(v_l);
    Vec v2 = l_alg->mul(v_l, v_l);
    const Rational t2 = l_alg->trace(v2);
    const Rational sc = (t * t - t2) / Rational(2);
    Vec vs = linalg::add(linalg::sub(v2, linalg::scale(t, v_l)), linalg::scale(sc, l_alg->one()));
    return lk->embed_cubic(vs);
  }();
  Vec u_target_b = b->mul(j.pair().u, v_sharp_lk);
  Vec mu_target = linalg::scale(nv, j.pair().mu);

  EtaleIsotopeReplay rep;
  // L coordinates of u v#
  auto u_l = linalg::coordinates(
      [&] {
        std::vector<Vec> cols;
        for (std::size_t a = 0; a < 3; ++a) cols.push_back(lk->embed_cubic(linalg::unit_vec(3, a)));
        return cols;
      }(),
      u_target_b);
  if (!u_l) fail(Errc::NotHermitian, "u v# left the etale part");
  rep.u_target = *u_l;
  rep.mu_target = mu_target;
  rep.target = build_tits(b, u_target_b, mu_target);

  // map (l, x) -> (l v, x); first block acts on hermitian coordinates.
  const std::size_t hd = j.herm_dim();
  const std::size_t n = j.dim();
  Mat map(n, n);
  for (std::size_t a = 0; a < hd; ++a) {
    // hermitian basis vector a as a B element, multiplied by v inside LK
    Vec ha = b->from_hermitian(linalg::unit_vec(hd, a));
    Vec image = lk->mul(ha, v_lk);
    Vec hc = b->hermitian_coords(image);
    for (std::size_t i = 0; i < hd; ++i) map.at(i, a) = hc[i];
  }
  for (std::size_t i = hd; i < n; ++i) map.at(i, i) = Rational(1);
  rep.map = map;

  rep.isotope_structure = isotope(j.structure(), j.embed_first(b->hermitian_coords(v_lk)));
  // identity must map to identity
  if (map.apply(rep.isotope_structure->base_point()) != rep.target.structure()->base_point())
    fail(Errc::CertificationFailure, "isotope identity does not map to the target identity");
  rep.certificate = cubic::cubic_form_equal(map, *rep.isotope_structure, *rep.target.structure(),
                                            Rational(1));
  if (!rep.certificate.equal)
    fail(Errc::CertificationFailure,
         "norm comparison failed at " + linalg::to_string(*rep.certificate.witness));
  return rep;
}

AlbertIsotopeReplay isotope_params_albert(const Jordan& j, const Vec& v_herm) {
  const auto& b = j.algebra();
  Vec v = b->from_hermitian(v_herm);
  Vec nb_v = b->reduced_norm(v);
  const Rational nv = b->center_as_rational(nb_v); // rational since v hermitian
  if (nv.is_zero()) fail(Errc::NotInvertible, "v is singular");

  AlbertIsotopeReplay rep;
  rep.twisted = b->twist(v);
  Vec v_sharp = b->sharp(v);
  rep.u_target = b->mul(j.pair().u, v_sharp);
  rep.mu_target = linalg::scale(nv, j.pair().mu);
  rep.target = build_tits(rep.twisted, rep.u_target, rep.mu_target);

  const std::size_t hd = j.herm_dim();
  const std::size_t n = j.dim();
  Mat map(n, n);
  for (std::size_t a = 0; a < hd; ++a) {
    Vec ha = b->from_hermitian(linalg::unit_vec(hd, a));
    Vec image = b->mul(v, ha); // (b, x) -> (v b, x)
    Vec hc = rep.twisted->hermitian_coords(image);
    for (std::size_t i = 0; i < hd; ++i) map.at(i, a) = hc[i];
  }
  for (std::size_t i = hd; i < n; ++i) map.at(i, i) = Rational(1);
  rep.map = map;

  rep.isotope_structure = isotope(j.structure(), j.embed_first(v_herm));
  if (map.apply(rep.isotope_structure->base_point()) != rep.target.structure()->base_point())
    fail(Errc::CertificationFailure, "isotope identity does not map to the target identity");
  rep.certificate = cubic::cubic_form_equal(map, *rep.isotope_structure, *rep.target.structure(),
                                            Rational(1));
  if (!rep.certificate.equal)
    fail(Errc::CertificationFailure,
         "norm comparison failed at " + linalg::to_string(*rep.certificate.witness));
  return rep;
}

GaloisExtension extend_galois(const Jordan& j) {
  const auto& b = j.algebra();
  if (b->model() != assoc::Model::Etale3 ||
      b->module_etale()->spec().kind != etale::Kind::Composite)
    fail(Errc::AlgebraMismatch, "extend_galois requires the J(LK,*,u,mu) model");
  if (!b->is_one(j.pair().u))
    fail(Errc::HypothesisViolation, "extension requires the first parameter u = 1");
  const auto& lk = b->module_etale();
  const Mat& rho_lk = lk->galois_matrix(etale::GaloisMap::Rho);

  const std::size_t hd = j.herm_dim();
  const std::size_t n = j.dim();
  Mat op(n, n);
  // hermitian block: conjugate the hermitian coordinates through rho
  for (std::size_t a = 0; a < hd; ++a) {
    Vec ha = b->from_hermitian(linalg::unit_vec(hd, a));
    Vec hc = b->hermitian_coords(rho_lk.apply(ha));
    for (std::size_t i = 0; i < hd; ++i) op.at(i, a) = hc[i];
  }
  for (std::size_t a = 0; a < lk->dim(); ++a)
    for (std::size_t i = 0; i < lk->dim(); ++i) op.at(hd + i, hd + a) = rho_lk.at(i, a);

  GaloisExtension ext;
  ext.op = op;
  ext.fixes_identity = op.apply(j.structure()->base_point()) == j.structure()->base_point();
  ext.order_three = op.mul(op).mul(op).is_identity();
  ext.certificate =
      cubic::cubic_form_equal(op, *j.structure(), *j.structure(), Rational(1));
  if (!ext.fixes_identity || !ext.certificate.equal)
    fail(Errc::CertificationFailure, "extended map is not an automorphism");
  return ext;
}

Mat conjugation_automorphism(const Jordan& j, const Vec& g) {
  const auto& b = j.algebra();
  Vec gi = b->inv(g);
  const std::size_t hd = j.herm_dim();
  const std::size_t n = j.dim();
  Mat op(n, n);
  for (std::size_t a = 0; a < hd; ++a) {
    Vec ha = b->from_hermitian(linalg::unit_vec(hd, a));
    Vec image = b->mul(b->mul(g, ha), gi);
    Vec hc = b->hermitian_coords(image); // NotHermitian when g is incompatible
    for (std::size_t i = 0; i < hd; ++i) op.at(i, a) = hc[i];
  }
  for (std::size_t a = 0; a < b->kdim(); ++a) {
    Vec image = b->mul(b->mul(g, linalg::unit_vec(b->kdim(), a)), gi);
    for (std::size_t i = 0; i < image.size(); ++i) op.at(hd + i, hd + a) = image[i];
  }
  if (op.apply(j.structure()->base_point()) != j.structure()->base_point())
    fail(Errc::CertificationFailure, "conjugation does not fix the identity");
  auto cert = cubic::cubic_form_equal(op, *j.structure(), *j.structure(), Rational(1));
  if (!cert.equal)
    fail(Errc::CertificationFailure,
         "conjugation is not a norm isometry; witness " + linalg::to_string(*cert.witness));
  return op;
}

} // namespace albert::tits
