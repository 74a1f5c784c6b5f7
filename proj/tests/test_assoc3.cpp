#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "albert/assoc3.hpp"
#include "albert/error.hpp"
#include "albert/rng.hpp"

using namespace albert;
using namespace albert::assoc;
using linalg::Mat;
using linalg::Vec;

namespace {

etale::AlgebraPtr rationals() { return etale::Algebra::make(etale::Spec::rationals()); }
etale::AlgebraPtr sqrt2() { return etale::Algebra::make(etale::Spec::quadratic_field(Rational(2))); }

// mat3 over Q: entry (i,j) at coordinate i*3+j
Vec m3(std::initializer_list<long> entries) {
  Vec v;
  for (long e : entries) v.push_back(Rational(e));
  return v;
}

Vec diag(long a, long b, long c) { return m3({a, 0, 0, 0, b, 0, 0, 0, c}); }

// Independent cofactor oracles for 3x3 rational matrices.
Rational det_oracle(const Vec& m) {
  auto e = [&](int i, int j) { return m[i * 3 + j]; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

Vec adjugate_oracle(const Vec& m) {
  auto e = [&](int i, int j) { return m[i * 3 + j]; };
  Vec r(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r1 = (j + 1) % 3, r2 = (j + 2) % 3, c1 = (i + 1) % 3, c2 = (i + 2) % 3;
      r[i * 3 + j] = e(r1, c1) * e(r2, c2) - e(r1, c2) * e(r2, c1);
    }
  return r;
}

// Cayley-Hamilton route: N(x) 1 = x^3 - T(x) x^2 + s(x) x for degree-3 algebras.
Vec cayley_hamilton_norm(const Algebra& a, const Vec& x) {
  Vec x2 = a.mul(x, x);
  Vec x3 = a.mul(x2, x);
  Vec t = a.reduced_trace(x);
  Vec t2 = a.reduced_trace(x2);
  Vec s = linalg::scale(Rational(1, 2), linalg::sub(a.center().mul(t, t), t2));
  Vec val = linalg::sub(x3, a.center_scale(t, x2));
  return linalg::add(val, a.center_scale(s, x));
}

Vec rand_elt(const Algebra& a, Rng& rng) { return rng.vec(a.kdim()); }

} // namespace

TEST_CASE("mat3 over Q basics") {
  auto a = Algebra::mat3(rationals());
  CHECK(a->kdim() == 9);
  CHECK(a->mul(diag(1, 2, 3), a->one()) == diag(1, 2, 3));
  CHECK(a->reduced_norm(diag(1, 2, 3)) == Vec{Rational(6)});
  CHECK(a->reduced_norm(a->one()) == Vec{Rational(1)});
  CHECK(a->reduced_trace(a->one()) == Vec{Rational(3)});
  CHECK(a->reduced_trace(diag(1, 2, 3)) == Vec{Rational(6)});
  CHECK(a->sharp(diag(1, 2, 3)) == diag(6, 3, 2));
  CHECK(a->sharp(a->one()) == a->one());
  CHECK(a->sharp(diag(1, 1, 0)) == diag(0, 0, 1));
  // non-commutative product sanity: e01 * e12 = e02, e12 * e01 = 0
  Vec e01 = m3({0, 1, 0, 0, 0, 0, 0, 0, 0});
  Vec e12 = m3({0, 0, 0, 0, 0, 1, 0, 0, 0});
  Vec e02 = m3({0, 0, 1, 0, 0, 0, 0, 0, 0});
  CHECK(a->mul(e01, e12) == e02);
  CHECK(linalg::is_zero(a->mul(e12, e01)));
}

TEST_CASE("mat3 over Q against cofactor oracles") {
  auto a = Algebra::mat3(rationals());
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    Vec x = rand_elt(*a, rng), y = rand_elt(*a, rng);
    CHECK(a->reduced_norm(x) == Vec{det_oracle(x)});
    CHECK(a->sharp(x) == adjugate_oracle(x));
    CHECK(a->reduced_norm(a->mul(x, y))[0] == det_oracle(x) * det_oracle(y));
    CHECK(a->mul(x, a->sharp(x)) == linalg::scale(det_oracle(x), a->one()));
    CHECK(a->sharp(a->sharp(x)) == linalg::scale(det_oracle(x), x));
    CHECK(cayley_hamilton_norm(*a, x) == linalg::scale(det_oracle(x), a->one()));
  }
}

TEST_CASE("etale3 over the LK tower carries the star involution") {
  auto lk = etale::Algebra::make(
      etale::Spec::composite(etale::Spec::split_cubic(), etale::Spec::quadratic_field(Rational(2))));
  auto b = Algebra::etale3(lk);
  CHECK(b->rank() == 3);
  CHECK(b->center_dim() == 2);
  CHECK(b->kdim() == 6);
  CHECK(b->has_involution());
  CHECK(b->hermitian_basis().size() == 3);
  // hermitian space = embedded L
  Vec emb = lk->embed_cubic(Vec{Rational(1), Rational(2), Rational(3)});
  CHECK(b->is_hermitian(emb));
  Vec h = b->hermitian_coords(emb);
  CHECK(b->from_hermitian(h) == emb);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    Vec x = rand_elt(*b, rng), y = rand_elt(*b, rng);
    CHECK(b->involve(b->mul(x, y)) == b->mul(b->involve(y), b->involve(x)));
    // reduced norm agrees with the exactfield relative norm
    CHECK(b->reduced_norm(x) == lk->relative_norm(x));
    CHECK(b->reduced_trace(x) == lk->relative_trace(x));
    CHECK(cayley_hamilton_norm(*b, x) == b->embed_center(b->reduced_norm(x)));
  }
}

TEST_CASE("crossed product over split cubic with gamma = 2") {
  auto l = etale::Algebra::make(etale::Spec::split_cubic());
  auto d = Algebra::crossed_product(l, Vec{Rational(2)});
  CHECK(d->rank() == 9);
  CHECK(d->kdim() == 9);
  Vec z = d->z_element();
  // z l = rho(l) z for etale l
  Vec l123{Rational(1), Rational(2), Rational(3)};
  Vec lx = d->embed_etale(l123);
  Vec rho_lx = d->embed_etale(l->galois(l123, etale::GaloisMap::Rho));
  CHECK(d->mul(z, lx) == d->mul(rho_lx, z));
  // z^3 = gamma
  Vec z2 = d->mul(z, z);
  CHECK(d->mul(z, z2) == d->scalar(Rational(2)));
  // reduced_norm(z) = gamma, reduced_trace(z) = 0
  CHECK(d->reduced_norm(z) == Vec{Rational(2)});
  CHECK(d->reduced_trace(z) == Vec{Rational(0)});
  CHECK(d->reduced_trace(d->one()) == Vec{Rational(3)});
  // embedded etale: norm agrees with the exactfield norm
  CHECK(d->reduced_norm(lx) == Vec{Rational(6)});

  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    Vec x = rand_elt(*d, rng), y = rand_elt(*d, rng);
    CHECK(d->reduced_norm(d->mul(x, y))[0] == d->reduced_norm(x)[0] * d->reduced_norm(y)[0]);
    CHECK(d->mul(x, d->sharp(x)) == d->center_scale(d->reduced_norm(x), d->one()));
    CHECK(d->mul(d->sharp(x), x) == d->center_scale(d->reduced_norm(x), d->one()));
    CHECK(d->sharp(d->sharp(x)) == d->center_scale(d->reduced_norm(x), x));
    CHECK(cayley_hamilton_norm(*d, x) == d->embed_center(d->reduced_norm(x)));
    // embedded etale elements: reduced norm and trace match the exactfield maps
    Vec le = rng.vec(3);
    CHECK(d->reduced_norm(d->embed_etale(le)) == Vec{l->norm(le)});
    CHECK(d->reduced_trace(d->embed_etale(le)) == Vec{l->trace(le)});
  }
}

TEST_CASE("crossed product over the cyclic cubic field") {
  auto l = etale::Algebra::make(etale::Spec::cyclic_cubic_field(
      {Rational(-1), Rational(-3), Rational(0)}, {Rational(2), Rational(0), Rational(-1)}));
  auto d = Algebra::crossed_product(l, Vec{Rational(2)});
  Rng rng(29);
  Vec z = d->z_element();
  CHECK(d->mul(z, d->mul(z, z)) == d->scalar(Rational(2)));
  CHECK(d->reduced_norm(z) == Vec{Rational(2)});
  for (int t = 0; t < 40; ++t) {
    Vec x = rand_elt(*d, rng), y = rand_elt(*d, rng);
    CHECK(d->reduced_norm(d->mul(x, y))[0] == d->reduced_norm(x)[0] * d->reduced_norm(y)[0]);
    CHECK(cayley_hamilton_norm(*d, x) == d->embed_center(d->reduced_norm(x)));
  }
}

TEST_CASE("double opposite with the switch involution") {
  auto e = Algebra::mat3(rationals());
  auto b = Algebra::double_opposite(e);
  CHECK(b->rank() == 9);
  CHECK(b->kdim() == 18);
  CHECK(b->involution_kind() == Involution::Switch);
  // fixed space {(x, x^opp)} has dimension 9 over k
  CHECK(b->hermitian_basis().size() == 9);
  CHECK(b->involve(b->one()) == b->one());
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    Vec p = rng.vec(9), q = rng.vec(9);
    Vec x = b->pair_element(p, q);
    CHECK(b->involve(x) == b->pair_element(q, p));
    CHECK(b->is_hermitian(b->pair_element(p, p)));
    CHECK(b->reduced_norm(x) == Vec{det_oracle(p), det_oracle(q)});
    Vec y = b->pair_element(q, p);
    auto [m1, m2] = b->split_pair(b->mul(x, y));
    CHECK(m1 == e->mul(p, q));
    CHECK(m2 == e->mul(p, q)); // (q^opp)(p^opp) = (p q)^opp
    CHECK(cayley_hamilton_norm(*b, x) == b->embed_center(b->reduced_norm(x)));
  }
}

TEST_CASE("unitary involution on mat3 over Q(sqrt 2)") {
  auto b = Algebra::mat3_unitary(sqrt2());
  CHECK(b->kdim() == 18);
  CHECK(b->hermitian_basis().size() == 9); // hermitian matrices, dim 9 over k
  CHECK(b->involve(b->one()) == b->one());
  Rng rng(37);
  for (int t = 0; t < 40; ++t) {
    Vec x = rand_elt(*b, rng), y = rand_elt(*b, rng);
    CHECK(b->involve(b->mul(x, y)) == b->mul(b->involve(y), b->involve(x)));
    CHECK(b->involve(b->involve(x)) == x);
    CHECK(b->reduced_norm(b->involve(x)) == b->center_conj(b->reduced_norm(x)));
    CHECK(cayley_hamilton_norm(*b, x) == b->embed_center(b->reduced_norm(x)));
    CHECK(b->reduced_norm(b->mul(x, y)) ==
          b->center().mul(b->reduced_norm(x), b->reduced_norm(y)));
  }
}

TEST_CASE("twisted involution sigma_v") {
  auto b = Algebra::mat3_unitary(sqrt2());
  // v = diag(1,1,2), rational diagonal
  Vec v(b->kdim());
  v[(0 * 3 + 0) * 2] = Rational(1);
  v[(1 * 3 + 1) * 2] = Rational(1);
  v[(2 * 3 + 2) * 2] = Rational(2);
  auto tw = b->twist(v);
  CHECK(tw->involve(v) == v); // sigma_v(v) = v
  CHECK(tw->hermitian_basis().size() == 9);
  auto same = b->twist(b->one());
  CHECK(same->involution_matrix() == b->involution_matrix());
  Rng rng(41);
  Vec x = rand_elt(*b, rng);
  Vec vi = b->inv(v);
  CHECK(tw->involve(x) == b->mul(b->mul(v, b->involve(x)), vi));
  // non-hermitian twist rejected
  Vec bad(b->kdim());
  bad[(0 * 3 + 1) * 2] = Rational(1);
  bad[(0 * 3 + 0) * 2] = Rational(1);
  bad[(1 * 3 + 1) * 2] = Rational(1);
  bad[(2 * 3 + 2) * 2] = Rational(1);
  CHECK_THROWS_AS(b->twist(bad), Error);
}

TEST_CASE("standard involution on a crossed product over LK") {
  auto lk = etale::Algebra::make(
      etale::Spec::composite(etale::Spec::split_cubic(), etale::Spec::quadratic_field(Rational(2))));
  // gamma = 3 + 2 sqrt2 has norm 1, as the standard involution requires
  auto b = Algebra::crossed_product(lk, Vec{Rational(3), Rational(2)}, true);
  CHECK(b->has_involution());
  CHECK(b->hermitian_basis().size() == 9);
  Vec z = b->z_element();
  CHECK(b->involve(z) == b->inv(z)); // sigma(z) = z^{-1}
  // gamma with norm != 1 cannot carry the standard involution
  CHECK_THROWS_AS(Algebra::crossed_product(lk, Vec{Rational(2), Rational(0)}, true), Error);
}

TEST_CASE("involution sign flip is rejected with a witness") {
  auto b = Algebra::mat3_unitary(sqrt2());
  Mat sigma = b->involution_matrix();
  sigma.at(3, 3) = sigma.at(3, 3) + Rational(1); // corrupt one entry
  try {
    Algebra::with_involution_matrix(Algebra::mat3(sqrt2()), sigma, Involution::UnitaryTranspose);
    FAIL("corrupted involution accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidSpec);
    CHECK(std::string(e.what()).find("involution") != std::string::npos);
  }
}

TEST_CASE("element wrapper mismatch") {
  auto a = Algebra::mat3(rationals());
  auto b = Algebra::mat3(rationals());
  Element x(a, diag(1, 2, 3)), y(b, diag(1, 1, 1));
  CHECK_THROWS_AS(x * y, Error);
  CHECK((x.sharp().v) == diag(6, 3, 2));
  CHECK(x.inverse().v == Vec{Rational(1), Rational(0), Rational(0), Rational(0), Rational(1, 2),
                             Rational(0), Rational(0), Rational(0), Rational(1, 3)});
}
