#pragma once

#include "spcell/bruhat.hpp"
#include "spcell/forms.hpp"
#include "spcell/mat.hpp"
#include "spcell/orbit.hpp"
#include "spcell/rng.hpp"
#include "spcell/weyl.hpp"

namespace spcell {

/// Valuation parameters of the cut-off layer. Uniformizer and residue
/// cardinality are both p; kappa scales the ball radii; d and g are additive
/// conductor shifts entering the nbar region.
struct PadicContext {
  long p;
  long kappa;
  long d;
  long g;

  PadicContext(long p_, long kappa_, long d_ = 0, long g_ = 0);
  [[nodiscard]] long shift() const { return d + g; }
};

/// |x|_p as an exact power: |x| = p^exponent, or zero for x = 0.
struct PadicAbs {
  bool zero;
  long exponent;
};
[[nodiscard]] PadicAbs padic_abs(const Rat& x, long p);

/// True iff |x|_p <= p^e; x = 0 passes every bound.
[[nodiscard]] bool abs_leq(const Rat& x, long p, long e);

/// Ball cut-off on an R x C matrix: 1 iff every entry obeys
/// |x_ij| <= q^{((R - i) + (C - j) + 1) kappa}, indices 1-based.
[[nodiscard]] bool phi_kappa(const PadicContext& ctx, const MatQ& x);

/// nbar(X, Y) lies in the kappa-th open compact region iff
/// phi_kappa(p^{-(d+g)} X) * phi_kappa(p^{-2(d+g)} Y) = 1. The regions grow
/// with kappa and exhaust the opposite radical.
[[nodiscard]] bool nbar_membership(const PadicContext& ctx, const MatQ& x, const MatQ& y);
[[nodiscard]] bool nbar_membership(const PadicContext& ctx, const NilpotentPair& n);

/// Levi element in block coordinates: (m1, m2) <-> diag(m1, m2, theta_r(m1)).
struct LeviElement {
  GroupShape shape;
  MatQ m1;  // r x r invertible
  MatQ m2;  // 2m x 2m symplectic
};

/// diag(m1, m2, theta_r(m1)) -> diag(theta_r(m1), m2, m1). Agrees with the
/// ambient conjugation g -> w0^{-1} g w0 on embedded Levi elements and
/// squares to the identity there.
[[nodiscard]] LeviElement theta_M(const LeviElement& m);
[[nodiscard]] MatQ theta_M_matrix(const GroupShape& s, const MatQ& g);

/// phi on the Levi image of n(X, Y): phi_kappa(lambda X) phi_kappa(lambda^2 Y)
/// with lambda = (Y^{-1} X)_{r1}. Needs m >= 1 and invertible Y; also
/// invariant under (X, Y) -> (t X, t^2 Y) since lambda scales by 1/t.
[[nodiscard]] bool phi_levi(const PadicContext& ctx, const NilpotentPair& n);

/// Exact two-sided check of
///   Theta_M(z u^{-1}) m(X, Y) u z^{-1}
///     = m(u1^{-1} t X u2, u1^{-1} t^2 Y theta_r(u1)),  z = alpha_covee(t):
/// ambient matrix algebra on the left, decompose_w0 of the transformed pair
/// on the right. Holds for every u in U_M, not only the congruence subgroup.
[[nodiscard]] bool twisted_conjugation_identity(const GroupShape& s, const Rat& t,
                                                const LeviUnipotent& u, const NilpotentPair& n);

/// Fixed-point agreement at one (u, n): u^{-1} n u = n iff
/// Theta_M(u^{-1}) m u = m, both evaluated on ambient matrices.
struct StabilizerAgreement {
  bool fixes_point;
  bool twisted_fixes_levi;
};
[[nodiscard]] StabilizerAgreement stabilizer_agreement(const GroupShape& s,
                                                       const LeviUnipotent& u,
                                                       const NilpotentPair& n);

/// Congruence unipotents: upper unitriangular with |u_ij| <= q^{(i - j) kappa}
/// above the diagonal. Closed under products and inverses by the ultrametric
/// inequality, and the only bound direction that leaves the phi_kappa balls
/// stable under right multiplication.
[[nodiscard]] bool u_kappa_member(const PadicContext& ctx, const MatQ& u);
[[nodiscard]] MatQ sample_u1_kappa(const PadicContext& ctx, std::size_t r, Sampler& smp);
[[nodiscard]] MatQ sample_u2_kappa(const PadicContext& ctx, std::size_t m, Sampler& smp);
[[nodiscard]] LeviUnipotent sample_u0_kappa(const PadicContext& ctx, const GroupShape& s,
                                            Sampler& smp);

/// Draws `trials` generic pairs and congruence unipotents and checks that
/// phi_levi is unchanged under (X, Y) -> (u1^{-1} X u2, u1^{-1} Y theta_r(u1)).
/// Needs m >= 1.
[[nodiscard]] bool phi_invariance_check(const PadicContext& ctx, const GroupShape& s, int trials,
                                        Sampler& smp);

/// Counterexample search for the mirrored bound direction: unipotents with an
/// entry at the loose exponent -(j - i) kappa of valuation can change
/// phi_levi. Returns true when a phi-changing configuration is found; always
/// false at kappa = 0, where the two directions coincide. Needs m >= 1.
[[nodiscard]] bool phi_bound_direction_control(const PadicContext& ctx, const GroupShape& s,
                                               int tries, Sampler& smp);

/// Conjugates sampled unipotent stabilizer elements of the canonical orbit
/// representative by the u2 factor of the Levi-block Bruhat decomposition and
/// checks they land in the unipotent radical of the Borel of the Levi
/// attached to the cell. Shapes without nontrivial unipotent stabilizers
/// report vacuous = true.
struct CellInclusionReport {
  bool vacuous;
  bool in_support;  // the cell's Weyl element lies in the support set
  int checked;
  bool included;
};
[[nodiscard]] CellInclusionReport stabilizer_cell_inclusion_check(const GroupShape& s, int trials,
                                                                  Sampler& smp);

}  // namespace spcell
