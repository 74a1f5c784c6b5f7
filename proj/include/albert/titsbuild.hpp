#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "albert/assoc3.hpp"
#include "albert/cubicnorm.hpp"
#include "albert/etale.hpp"
#include "albert/linalg.hpp"

namespace albert::tits {

using linalg::Mat;
using linalg::Vec;

// Hermitian unit u and center unit mu with N_B(u) = mu conj(mu).
struct AdmissiblePair {
  Vec u;  // algebra coordinates, sigma(u) = u
  Vec mu; // center coordinates
};

// Carrier layout of J(B, sigma, u, mu): hermitian coordinates (rank entries)
// first, then the full coordinates of B. The induced cubic norm structure
// implements N((b,x)) = N_B(b) + T_K(mu N_B(x)) - T_B(b x u sigma(x)) and
// (b,x)# = (b# - x u sigma(x), conj(mu) sigma(x)# u^{-1} - b x).
class Jordan {
public:
  const assoc::AlgebraPtr& algebra() const { return b_; }
  const AdmissiblePair& pair() const { return pair_; }
  const cubic::StructurePtr& structure() const { return s_; }
  std::size_t herm_dim() const { return b_->rank(); }
  std::size_t dim() const { return s_->dim(); }

  Vec embed_first(const Vec& herm_coords) const;  // (b, 0)
  Vec embed_second(const Vec& b_coords) const;    // (0, x)
  std::pair<Vec, Vec> split(const Vec& j) const;  // (hermitian coords, B coords)
  // Embeds a B element known to be hermitian into the first summand.
  Vec embed_hermitian_element(const Vec& b_elt) const;

  // For the etale model (B = LK with the * involution): the canonical cubic
  // subalgebra L in carrier coordinates, one column per L basis vector.
  Mat embedded_cubic_etale() const;

  friend Jordan build_tits(assoc::AlgebraPtr b, Vec u, Vec mu, std::size_t axiom_trials,
                           std::uint64_t seed);

private:
  assoc::AlgebraPtr b_;
  AdmissiblePair pair_;
  cubic::StructurePtr s_;
};

// Validates admissibility (sigma(u) = u, u and mu units, N_B(u) = mu conj(mu);
// NotAdmissible with the failed condition otherwise), builds the cubic norm
// structure and, when axiom_trials > 0, requires the axiom suite to pass.
Jordan build_tits(assoc::AlgebraPtr b, Vec u, Vec mu, std::size_t axiom_trials = 0,
                  std::uint64_t seed = 1);

// First construction: the K = k x k specialization over B = D x D^opp with
// the switch involution, u = (1,1), mu = (m, N_D(u)/m).
Jordan build_first_construction(const assoc::AlgebraPtr& d, const Rational& mu,
                                std::size_t axiom_trials = 0, std::uint64_t seed = 1);

// Cubic norm structure on the hermitian part (B, sigma)_+ (or on all of a
// rank-9 algebra over k, the E_+ case): N_B, #, 1 restricted.
cubic::StructurePtr hermitian_structure(const assoc::AlgebraPtr& b);

// Cubic norm structure of a cubic etale algebra over k.
cubic::StructurePtr etale_structure(const etale::AlgebraPtr& e);

// v-isotope: N^(v) = N(v) N, x#^(v) = N(v) U_v^{-1}(x#), c^(v) = v^{-1}.
cubic::StructurePtr isotope(const cubic::StructurePtr& s, const Vec& v);

struct EtaleIsotopeReplay {
  Vec u_target;              // u v#  (L coordinates of the etale part)
  Vec mu_target;             // N(v) mu
  Mat map;                   // (l, x) -> (l v, x) on carrier coordinates
  Jordan target;             // J(LK, *, u v#, N(v) mu)
  cubic::StructurePtr isotope_structure;
  cubic::Certificate certificate; // nu = 1 comparison
};

// The 2(b) isomorphism J(LK,*,u,mu)^(v) = J(LK,*,u v#, N(v) mu) for v in L.
// v is given in L coordinates (the cubic part of the composite etale algebra).
EtaleIsotopeReplay isotope_params(const Jordan& j, const Vec& v_l);

struct AlbertIsotopeReplay {
  assoc::AlgebraPtr twisted; // (B, sigma_v)
  Vec u_target;              // u v# (B coordinates)
  Vec mu_target;             // N_B(v) mu
  Mat map;                   // (b, x) -> (v b, x)
  Jordan target;             // J(B, sigma_v, u v#, N(v) mu)
  cubic::StructurePtr isotope_structure;
  cubic::Certificate certificate;
};

// The 2(b) isomorphism J(B,sigma,u,mu)^(v) = J(B,sigma_v,u v#,N(v) mu) for
// hermitian v given in hermitian coordinates.
AlbertIsotopeReplay isotope_params_albert(const Jordan& j, const Vec& v_herm);

struct GaloisExtension {
  Mat op;                  // rho~((l,x)) = (rho(l), rho(x))
  cubic::Certificate certificate; // nu = 1
  bool fixes_identity = false;
  bool order_three = false;
};

// Extends the Galois generator rho of L to the Tits process J(LK, *, 1, mu).
// HypothesisViolation unless the first parameter is 1.
GaloisExtension extend_galois(const Jordan& j);

// Certified automorphism (b,x) -> (g b g^{-1}, g x g^{-1}) for a unit g of B
// with sigma(g) g central-compatible; certification decides validity
// (CertificationFailure otherwise). For the split first construction and
// g = (p, (p^{-1})^opp) with a permutation p this extends the coordinate
// shift of the diagonal cubic etale subalgebra.
Mat conjugation_automorphism(const Jordan& j, const Vec& g);

} // namespace albert::tits
