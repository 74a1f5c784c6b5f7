#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "albert/linalg.hpp"
#include "albert/rational.hpp"

namespace albert::cubic {

using linalg::Mat;
using linalg::Vec;

class Structure;
using StructurePtr = std::shared_ptr<const Structure>;

// A cubic norm structure (N, #, c): exact cubic-form evaluator, exact
// quadratic adjoint, base point with N(c) = 1. The trace bilinear form, the
// sharp bilinearization x (x) y = (x+y)# - x# - y#, U-operators and inversion
// are derived. Immutable; evaluators must be pure and thread-safe.
class Structure : public std::enable_shared_from_this<Structure> {
public:
  using NormFn = std::function<Rational(const Vec&)>;
  using AdjFn = std::function<Vec(const Vec&)>;

  static StructurePtr make(std::size_t dim, NormFn norm, AdjFn adjoint, Vec base_point,
                           std::string provenance, std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  const Vec& base_point() const { return c_; }
  const std::string& provenance() const { return provenance_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Rational norm(const Vec& x) const { return norm_(x); }
  Vec adjoint(const Vec& x) const { return adj_(x); }

  // T(x,y) = (D_x N)(c)(D_y N)(c) - (D_x D_y N)(c), derived exactly from the
  // cubic polynomial by directional polarization.
  const Mat& trace_form() const;
  Rational trace_pair(const Vec& x, const Vec& y) const;
  Rational trace_linear(const Vec& x) const; // T(x, c)

  Vec sharp_bilinear(const Vec& x, const Vec& y) const; // the x map
  Vec u_apply(const Vec& x, const Vec& y) const;        // U_x(y) = T(x,y) x - x# x y
  Mat u_matrix(const Vec& x) const;
  Vec inverse(const Vec& x) const; // x^{-1} = N(x)^{-1} x#; NotInvertible

  // Jordan circle products derived from the norm structure.
  Vec jordan_square(const Vec& x) const; // x^2 = T(x) x - x# x c
  Vec jordan_mul(const Vec& x, const Vec& y) const;

  // Polarization evaluation set {e_i} u {e_i + e_j} u {e_i - e_j} u
  // {e_i + e_j + e_k}; a cubic form vanishing on all of it is zero, so exact
  // evaluation on the set decides polynomial identities. Size
  // n + 2 C(n,2) + C(n,3): 165 at n = 9, 3654 at n = 27.
  const std::vector<Vec>& polarization_points() const;
  const std::vector<Rational>& polarization_norms() const; // cached N values
  const Vec& basis_adjoint(std::size_t i) const;           // cached e_i#

private:
  Structure() = default;

  std::size_t dim_ = 0;
  NormFn norm_;
  AdjFn adj_;
  Vec c_;
  std::string provenance_;
  std::vector<std::string> labels_;

  mutable std::mutex cache_mutex_;
  mutable std::optional<Mat> trace_;
  mutable std::vector<Vec> polar_points_;
  mutable std::vector<Rational> polar_norms_;
  mutable std::vector<Vec> basis_adj_;
};

std::size_t polarization_size(std::size_t n);

// Certificate of an exact decision N2(f(x)) = nu N1(x) over the polarization
// set. When equal is false, witness holds the first failing point in sweep
// order (deterministic regardless of worker count).
struct Certificate {
  bool equal = false;
  std::size_t evaluations = 0;
  std::optional<Vec> witness;
  Rational lhs_at_witness, rhs_at_witness;
};

Certificate cubic_form_equal(const Mat& f, const Structure& s1, const Structure& s2,
                             const Rational& nu);

// Full monomial table of the cubic form, dimensions <= 9 only
// (DimensionTooLarge above). Computed by solving the triangular
// inclusion-exclusion system over the polarization evaluations.
struct MonomialTable {
  std::size_t dim = 0;
  std::map<std::array<std::size_t, 3>, Rational> coeff; // sorted index triples

  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const;
  Rational evaluate(const Vec& x) const;
  bool operator==(const MonomialTable& o) const { return dim == o.dim && coeff == o.coeff; }
};

MonomialTable symbolic_expand(const Structure& s);

// Randomized exact axiom suite: N(c) = 1, homogeneity, x## = N(x) x,
// N(x#) = N(x)^2, N(U_x y) = N(x)^2 N(y), U_c = id, T nondegenerate.
struct AxiomReport {
  bool pass = true;
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::string failed_identity;
  std::optional<Vec> witness_x, witness_y;
  std::string detail;
};

AxiomReport axiom_suite(const Structure& s, std::size_t trials, std::uint64_t seed);
// Throwing variant used where an invalid structure is a hard error.
void require_axioms(const Structure& s, std::size_t trials, std::uint64_t seed);

// Division-sampling witness: counts vanishing norms over random nonzero
// points. Supporting evidence only, never a proof of the division property.
struct DivisionSample {
  std::size_t trials = 0;
  std::size_t nonzero = 0;
  std::optional<Vec> zero_witness;
};

DivisionSample division_sample(const Structure& s, std::size_t trials, std::uint64_t seed);

// Derived-trace free function mirroring the operation name.
Mat derive_trace(const Structure& s);

} // namespace albert::cubic
