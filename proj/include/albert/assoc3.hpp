#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "albert/etale.hpp"
#include "albert/linalg.hpp"

namespace albert::assoc {

using linalg::Mat;
using linalg::Vec;

enum class Model { Etale3, Mat3, CrossedProduct, DoubleOpposite };
enum class Involution { None, UnitaryTranspose, Switch, StandardCrossed, EtaleStar };

const char* model_name(Model m);
const char* involution_name(Involution s);

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// A degree-3 associative algebra, free of rank 3 or 9 over its center C
// (C = k, k x k, or a quadratic field), stored by structure constants over C.
// Rational coordinates have length rank * dim(C); module index i and center
// index a map to i * dim(C) + a.
//
// Reduced norm is per model: the 3x3 determinant for mat3, the determinant of
// the left regular representation over the etale part in the basis {1,z,z^2}
// for crossed products (asserted central), the component pair for double
// opposites, and the relative determinant for rank-3 etale algebras. Reduced
// trace is the regular-representation trace over C scaled so that T(1) = 3,
// precomputed as a linear form. The adjoint is x^2 - T(x) x + s(x) 1 with
// s(x) = (T(x)^2 - T(x^2))/2.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
  static AlgebraPtr mat3(etale::AlgebraPtr center);
  // sigma(x) = w conj(x)^t w^{-1} over a quadratic center; w hermitian unit.
  static AlgebraPtr mat3_unitary(etale::AlgebraPtr center, std::optional<Vec> w = std::nullopt);
  // Cubic etale algebra as a rank-3 algebra: over k for a plain cubic spec
  // (no involution), over K with the * involution for a composite LK.
  static AlgebraPtr etale3(etale::AlgebraPtr e);
  // Cyclic crossed product M + Mz + Mz^2, z m = rho(m) z, z^3 = gamma (center
  // coordinates). The standard involution is the declared conjugation on M
  // with z -> z^{-1}; constructing it requires gamma conj(gamma) = 1.
  static AlgebraPtr crossed_product(etale::AlgebraPtr m, Vec gamma, bool with_involution = false);
  // E x E^opp over k x k with the switch involution.
  static AlgebraPtr double_opposite(AlgebraPtr inner);
  // Re-validates a hand-supplied involution matrix against the same algebra;
  // throws InvalidSpec with the violated identity if it is not an involution
  // of the right kind. Used by mutation suites and explicit configurations.
  static AlgebraPtr with_involution_matrix(const AlgebraPtr& base, Mat sigma, Involution kind);

  Model model() const { return model_; }
  Involution involution_kind() const { return inv_kind_; }
  bool has_involution() const { return inv_kind_ != Involution::None; }
  std::string describe() const;

  const etale::Algebra& center() const { return *center_; }
  const etale::AlgebraPtr& center_ptr() const { return center_; }
  std::size_t rank() const { return rank_; }          // 3 or 9
  std::size_t center_dim() const { return cdim_; }    // 1 or 2
  std::size_t kdim() const { return rank_ * cdim_; }  // dimension over the rationals
  const Vec& one() const { return one_; }
  bool is_one(const Vec& x) const { return x == one_; }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec inv(const Vec& x) const; // NotInvertible
  Vec center_scale(const Vec& c, const Vec& x) const;
  Vec embed_center(const Vec& c) const;
  Vec scalar(const Rational& r) const { return linalg::scale(r, one_); }

  Vec reduced_norm(const Vec& x) const;  // center element
  Vec reduced_trace(const Vec& x) const; // center element, linear form
  Vec sharp(const Vec& x) const;

  Vec involve(const Vec& x) const;
  const Mat& involution_matrix() const;
  bool is_hermitian(const Vec& x) const;
  const std::vector<Vec>& hermitian_basis() const; // size = rank
  Vec hermitian_coords(const Vec& x) const;        // NotHermitian if outside
  Vec from_hermitian(const Vec& h) const;
  AlgebraPtr twist(const Vec& v) const; // sigma_v(x) = v sigma(x) v^{-1}

  Vec center_conj(const Vec& c) const;
  Rational center_trace_rational(const Vec& c) const; // T_{C/k}
  bool center_is_rational(const Vec& c) const;
  Rational center_as_rational(const Vec& c) const; // AlgebraMismatch if not on the diagonal
  Vec center_one() const { return center_->one(); }

  const AlgebraPtr& inner() const;               // DoubleOpposite
  const etale::AlgebraPtr& module_etale() const; // CrossedProduct / Etale3
  const Vec& gamma() const { return gamma_; }    // CrossedProduct
  Vec embed_etale(const Vec& m) const;           // CrossedProduct / Etale3
  Vec z_element() const;                         // CrossedProduct
  Vec pair_element(const Vec& x, const Vec& y) const; // DoubleOpposite
  std::pair<Vec, Vec> split_pair(const Vec& x) const; // DoubleOpposite

private:
  Algebra() = default;
  void finish_tables();     // compact table + trace linear form
  void finish_involution(); // validates sigma, derives hermitian data
  Vec module_etale_embed_center(const Vec& c) const;
  std::optional<Vec> module_value_as_center(const Vec& v) const;

  Model model_ = Model::Mat3;
  Involution inv_kind_ = Involution::None;
  etale::AlgebraPtr center_;
  std::size_t rank_ = 9, cdim_ = 1;
  std::vector<Vec> table_; // table_[i * rank + j] = full coords of b_i b_j
  // nonzero blocks of each product: (module index, center coefficient)
  std::vector<std::vector<std::pair<std::size_t, Vec>>> compact_;
  Mat trace_mat_; // cdim x kdim
  Vec one_;
  std::optional<Mat> sigma_;
  std::vector<Vec> herm_basis_;
  std::vector<std::size_t> herm_pivot_rows_;
  Mat herm_solver_; // inverse of the pivot-row square of the hermitian basis
  AlgebraPtr inner_;
  etale::AlgebraPtr module_;
  Vec gamma_;
};

// Element wrapper with algebra identity checks.
struct Element {
  AlgebraPtr alg;
  Vec v;

  Element() = default;
  Element(AlgebraPtr a, Vec coords);
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element involve() const;
  Element sharp() const;
  Element inverse() const;
  bool operator==(const Element& o) const;
};

} // namespace albert::assoc
