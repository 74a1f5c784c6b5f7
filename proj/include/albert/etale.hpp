#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "albert/linalg.hpp"
#include "albert/rational.hpp"

namespace albert::etale {

using linalg::Mat;
using linalg::Vec;

enum class Kind {
  Rationals,        // the base field itself, dimension 1
  SplitQuadratic,   // k x k
  QuadraticField,   // k(sqrt(d)), d a nonsquare rational
  SplitCubic,       // k x k x k, cyclic shift as rho
  CyclicCubicField, // k[t]/(m), Galois generator image supplied by the user
  Composite,        // cubic (x) quadratic, the LK tower
};

const char* kind_name(Kind k);

struct Spec {
  Kind kind = Kind::Rationals;
  Rational d;                        // QuadraticField
  std::vector<Rational> min_poly;    // CyclicCubicField: x^3 + c2 x^2 + c1 x + c0, stored {c0,c1,c2}
  std::vector<Rational> rho_image;   // CyclicCubicField: rho(theta) = r0 + r1 theta + r2 theta^2
  std::shared_ptr<Spec> cubic;       // Composite components
  std::shared_ptr<Spec> quadratic;

  static Spec rationals();
  static Spec split_quadratic();
  static Spec quadratic_field(Rational d);
  static Spec split_cubic();
  static Spec cyclic_cubic_field(std::vector<Rational> min_poly, std::vector<Rational> rho_image);
  static Spec composite(Spec cubic, Spec quadratic);

  std::size_t dimension() const;
  bool is_cubic_kind() const { return kind == Kind::SplitCubic || kind == Kind::CyclicCubicField; }
  bool is_quadratic_kind() const { return kind == Kind::SplitQuadratic || kind == Kind::QuadraticField; }
  std::string describe() const;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> failures;
};

// Verifies every Spec invariant: nonsquare discriminant, irreducibility of the
// cubic (exact rational-root test), rho an order-3 automorphism mod the
// minimal polynomial, component validity and dimension for composites.
ValidationReport check_spec(const Spec& spec);

enum class GaloisMap { Rho, Bar, Star };

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Structure-constant model of the described etale algebra over the rationals.
// Immutable after construction; all operations are pure.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
  static AlgebraPtr make(Spec spec); // throws InvalidSpec

  const Spec& spec() const { return spec_; }
  std::size_t dim() const { return dim_; }
  const Vec& one() const { return one_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec inv(const Vec& x) const; // NotInvertible when norm vanishes
  Vec scalar_embed(const Rational& c) const { return linalg::scale(c, one_); }

  // Norm/trace of the regular representation over the rationals. For the
  // composite tower these are the absolute maps N_{LK/k}, T_{LK/k}.
  Rational norm(const Vec& x) const;
  Rational trace(const Vec& x) const;

  // Composite only: K-valued relative norm/trace of LK as a rank-3 K-module.
  Vec relative_norm(const Vec& x) const;
  Vec relative_trace(const Vec& x) const;

  bool has_map(GaloisMap m) const;
  const Mat& galois_matrix(GaloisMap m) const; // MapUndefinedForSpec
  Vec galois(const Vec& x, GaloisMap m) const { return galois_matrix(m).apply(x); }

  // Composite accessors.
  const AlgebraPtr& cubic_part() const;     // MapUndefinedForSpec when not composite
  const AlgebraPtr& quadratic_part() const;
  Vec embed_cubic(const Vec& l) const;      // L -> LK
  Vec embed_quadratic(const Vec& k) const;  // K -> LK
  // K-coordinates of an LK element: block a holds the K-coefficient of l_a.
  Vec k_block(const Vec& x, std::size_t a) const;
  Vec from_k_blocks(const std::vector<Vec>& blocks) const;

  Mat regular_matrix(const Vec& x) const; // left multiplication over the rationals

private:
  explicit Algebra(Spec spec);
  void build_tables();

  Spec spec_;
  std::size_t dim_ = 1;
  std::vector<Vec> mult_; // mult_[i * dim_ + j] = basis_i * basis_j
  Vec one_;
  std::vector<std::string> labels_;
  std::optional<Mat> rho_, bar_, star_;
  AlgebraPtr cubic_part_, quad_part_;
};

// Element wrapper carrying its algebra; arithmetic checks spec agreement.
struct Element {
  AlgebraPtr alg;
  Vec v;

  Element() = default;
  Element(AlgebraPtr a, Vec coords);

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element inverse() const;
  Element apply(GaloisMap m) const;
  Rational norm() const { return alg->norm(v); }
  Rational trace() const { return alg->trace(v); }
  bool operator==(const Element& o) const;
};

} // namespace albert::etale
