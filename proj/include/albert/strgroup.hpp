#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "albert/cubicnorm.hpp"
#include "albert/etale.hpp"
#include "albert/linalg.hpp"

namespace albert::strg {

using cubic::StructurePtr;
using linalg::Mat;
using linalg::Vec;

// One generator of a structure-group word. Multipliers: lambda^3 for a scalar
// homothety, N(x)^2 for a U-operator, 1 for a certified automorphism; an
// explicit linear letter gets its multiplier from N(f(c)) and is certified
// with the rest of the word.
struct Letter {
  enum class Kind { Scalar, UOp, Aut, Linear } kind;
  Rational lambda; // Scalar
  Vec x;           // UOp
  Mat m;           // Aut / Linear
  std::string name;
};

Letter scalar_letter(Rational lambda);
Letter u_letter(Vec x);
Letter aut_letter(Mat m, std::string name);
Letter linear_letter(Mat m, std::string name = "linear");

// A certified norm-similarity word. The stored operator is
// letters[0] o letters[1] o ... (rightmost letter applied first), the
// multiplier is the product of the letter multipliers, and construction
// certifies N(op(x)) = nu N(x) over the full polarization sweep
// (CertificationFailure otherwise).
class Word {
public:
  static Word make(StructurePtr s, std::vector<Letter> letters);
  static Word identity(StructurePtr s);

  const StructurePtr& structure() const { return s_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  const Mat& op() const { return op_; }
  const Rational& multiplier() const { return nu_; }
  const cubic::Certificate& certificate() const { return cert_; }

  Vec apply(const Vec& v) const { return op_.apply(v); }
  Word composed_with(const Word& rhs) const; // this o rhs (rhs applied first)
  Word inverse() const;

private:
  StructurePtr s_;
  std::vector<Letter> letters_;
  Mat op_;
  Rational nu_;
  cubic::Certificate cert_;
};

bool is_automorphism(const Word& w);

// Returns [scalarHomothety(N(a)^{-1}), uOperator(a)] o w with a = w(c); the
// result is a certified isometry (nu = 1).
Word normalize_to_isometry(const Word& w);

// A unital #-closed subspace of a cubic norm structure.
class Subalgebra {
public:
  static Subalgebra from_basis(StructurePtr s, std::vector<Vec> basis); // verifies closure
  const StructurePtr& structure() const { return s_; }
  const std::vector<Vec>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  bool contains(const Vec& v) const;
  std::optional<Vec> coordinates(const Vec& v) const;

private:
  StructurePtr s_;
  std::vector<Vec> basis_;
};

// Kernel of (w - id); requires is_automorphism(w) (NotAutomorphism).
Subalgebra fixed_subalgebra(const Word& w);

// Smallest subspace containing c and the inputs, closed under # and the
// bilinearization x; saturation by exact span growth.
Subalgebra generated_subalgebra(const StructurePtr& s, const std::vector<Vec>& elements);

enum class Stratum { Base, Cubic, Nine, Full };
const char* stratum_name(Stratum s);

struct Classification {
  Stratum stratum;
  std::size_t dim;
  std::string diagnostic; // e.g. minimal-polynomial factorization info at dim 3
};

Classification classify_subalgebra(const Subalgebra& s); // UnexpectedDimension

enum class Invariance { PointwiseFixed, Invariant, Neither };
const char* invariance_name(Invariance s);

Invariance invariant_check(const Word& w, const Subalgebra& s);

// A cubic etale algebra embedded into a structure: column a of embed is the
// image of the a-th basis vector of alg.
struct EmbeddedEtale {
  etale::AlgebraPtr alg;
  Mat embed;
};

struct Decomposition {
  Vec a;                   // element of the etale algebra (its coordinates)
  std::size_t galois_power; // w|_L = R_a o rho^galois_power
};

// Decides w|_L = R_a gamma with gamma in {id, rho, rho^2}; NotInvariant when
// w does not stabilize L, NoDecomposition when no Galois power matches.
Decomposition restriction_decompose(const Word& w, const EmbeddedEtale& l);

// Given w stabilizing the etale M with w|_M = R_a, a = w(c), returns the
// certified automorphism word w o w o uOperator(a^{-1})
// (RestrictionNotHomothety when the hypothesis fails).
Word aut_square_witness(const Word& w, const EmbeddedEtale& m);

// Verifies psi phi psi^{-1} fixes v = psi(c) and is a certified similarity
// with nu = 1, i.e. an automorphism of the v^{-1}-isotope.
bool conjugate_aut_group_check(const Word& psi, const Word& phi);

} // namespace albert::strg
