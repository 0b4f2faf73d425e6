#pragma once

#include "qmflab/periodic.hpp"

#include <vector>

namespace qmflab {

// Exact arithmetic in Q(i)[x]/Phi_N(x), enough ring structure for L-values
// and root-of-unity evaluations of the knot series.  Elements are coefficient
// vectors of length deg(Phi_N) over GaussRat.
//
// Phi_N is computed as Phi_rad(x^{N/rad}) with rad the radical of N, and
// Phi_rad by exact division of x^rad - 1 by the cyclotomic polynomials of its
// proper divisors.  For the conductors this project meets, N = 2^a 3^b, the
// polynomial is the trinomial x^{2d} - x^d + 1 (or x^d + 1), so reduction is
// sparse and cheap even at N ~ 9000.
std::vector<Rat> cyclotomic_poly(long N);

class CycloRing {
 public:
  explicit CycloRing(long N);

  long order() const { return N_; }
  long degree() const { return deg_; }

  using Elem = std::vector<GaussRat>;  // length deg_

  Elem zero() const { return Elem(static_cast<std::size_t>(deg_)); }
  Elem from_scalar(const GaussRat& c) const;
  Elem zeta_pow(long long e) const;  // x^{e mod N} reduced

  // L-value accumulation staging: collect monomials c x^{e mod N} into a
  // dense length-N scratch vector, then fold once.
  void stage_monomial(std::vector<GaussRat>& staged, const GaussRat& c, long long e) const;
  // Reduces a polynomial of any length by top-down folding against the
  // (sparse) monic relation for x^deg.
  Elem reduce(std::vector<GaussRat> poly) const;

  void add_inplace(Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem mul_scalar(const Elem& a, const GaussRat& c) const;

  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const;

  // Numerical image under zeta = e^{2 pi i p / N}.
  Cplx eval_at_root(const Elem& a, long long p, const PrecisionContext& ctx) const;

  // If a is a Gaussian rational (only the constant coefficient can be
  // nonzero after reduction against the full monomial table), report it.
  bool as_gauss_rational(const Elem& a, GaussRat& out) const;

 private:
  long N_;
  long deg_;
  std::vector<Rat> phi_;
  // nonzero coefficients of x^deg = sum_i m_i x^i (negated phi tail)
  std::vector<std::pair<long, Rat>> sparse_;
};

}  // namespace qmflab
