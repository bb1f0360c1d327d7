#pragma once

#include <utility>
#include <vector>

#include "spcell/forms.hpp"
#include "spcell/mat.hpp"
#include "spcell/rng.hpp"

namespace spcell {

/// Diagonal torus coordinates of the two Levi factors at a toric point: t1
/// lists the GL_r diagonal, t2 the Sp_2m diagonal with the paired structure
/// t2[j] t2[2m-1-j] = 1.
struct TorusPair {
  std::vector<Rat> t1;
  std::vector<Rat> t2;
};

[[nodiscard]] inline bool operator==(const TorusPair& a, const TorusPair& b) {
  return a.t1 == b.t1 && a.t2 == b.t2;
}
[[nodiscard]] inline bool operator!=(const TorusPair& a, const TorusPair& b) { return !(a == b); }

/// Minor-ratio projection onto the torus. Defined on toric points: X vanishes
/// off the antidiagonal slots (r-j+1, j) for j <= min(r, m), Z symmetric.
/// With Y_i the minor on the last i rows and first i columns and Y^(i) the
/// one on the first i rows and last i columns (1-based),
///   t1[i] = (-1)^{r-i} det(Y_{r-i}) / det(Y_{r-i+1}),
///   t2[j] = (-1)^j det(Y^(r-j)) / det(Y^(r-j+1)) * x_{r-j+1,j}^2,
/// the t2 list padded with 1s past j = r when r < m and completed by the
/// mirrored inverses. Throws NonGenericError at "phi_lower_<i>" /
/// "phi_upper_<i>" / "phi_x_<j>" when a required minor or antidiagonal entry
/// vanishes, std::invalid_argument off the toric slice.
///
/// Relative to the raw column pivots produced by gl_bruhat / sp_bruhat on the
/// factors of decompose_w0: the m1 pivots equal (-1)^{r-1} t1[i] for every i,
/// and the m2 pivots equal (-1)^{r-1} t2[j] on the first min(r, m) columns,
/// t2[j] (= 1) on the fixed middle columns, and (-1)^r t2[j] on the mirrored
/// ones.
[[nodiscard]] TorusPair phi_minor_formula(const NilpotentPair& n);

/// Unitriangular factors of theta_r(Y) = u1 J_r t1 u2 as minor ratios:
///   u1(i, j) = det(Y_{i,j}) / det(Y_{j-1}),   (cross minor over nested)
///   u2(i, j) = det(Y'_{ij}) / det(Y_{r-i}).
/// Valid for any Y with all det(Y_i) nonzero, toric or not; throws
/// NonGenericError("u_entry_minor_<i>") otherwise.
[[nodiscard]] std::pair<MatQ, MatQ> unipotent_entries_formula(const NilpotentPair& n);

/// Torus action on orbit coordinates: X -> s' X s''^{-1}, Z -> s' Z s'. s1
/// holds the r diagonal entries of s', s2 the 2m entries of s'', which must
/// satisfy s2[k] s2[2m-1-k] = 1. Throws std::invalid_argument on size,
/// zero-entry, or pairing violations.
[[nodiscard]] NilpotentPair toric_act(const std::vector<Rat>& s1, const std::vector<Rat>& s2,
                                      const NilpotentPair& n);

/// Entrywise factors by which phi_minor_formula transforms under
/// toric_act(s1, s2, .): 1/s1[i]^2 on the t1 side; 1/s2[j]^2 on the t2 side
/// for the first min(r, m) slots and their mirrors, 1 on the r < m padding.
[[nodiscard]] TorusPair phi_equivariance_factors(const GroupShape& s, const std::vector<Rat>& s1,
                                                 const std::vector<Rat>& s2);

/// Samples points of the toric slice (antidiagonal X, diagonal Z) and checks
/// the double-cover structure: negating a single antidiagonal x entry moves
/// the point but fixes the projection, while changing a z diagonal entry or
/// the magnitude of an x entry moves the projection.
[[nodiscard]] bool square_cover_check(const GroupShape& s, int trials, Sampler& smp);

/// One scalar transformation law under toric_act by a block-constant s':
/// `actual` is the measured after/before ratio, `derived` the exact law
/// (det(s')^{-2} for det m1, 1/(s_1 s_k) for the corner ratio), `claimed` the
/// block-square law (prod s_i^2, respectively 1/s_k^2).
struct ScalarLaw {
  Rat actual;
  Rat derived;
  Rat claimed;
};

/// Response of det(m1) = det(theta_r(Y)) and of the corner ratio
/// adj(Y)(r, r) / det(Y) to toric_act with s' constant on GL blocks and s''
/// trivial (neither scalar depends on s'').
struct StabilityScalarReport {
  ScalarLaw det_m1;
  ScalarLaw corner_ratio;
  bool derived_ok;
  bool claimed_ok;
};

/// blocks partitions r; s_values holds one nonzero scalar per block. Throws
/// NonGenericError("stability_det_Y" / "stability_corner") when det(Y) or the
/// leading (r-1)-minor vanishes at n.
[[nodiscard]] StabilityScalarReport stability_scalar_report(const std::vector<long>& blocks,
                                                            const std::vector<Rat>& s_values,
                                                            const NilpotentPair& n);

/// True iff the block-square law held exactly on every sampled generic point.
/// The exact law is asserted internally; a violation of it throws.
[[nodiscard]] bool stability_scalar_check(const GroupShape& s, const std::vector<long>& blocks,
                                          const std::vector<Rat>& s_values, int trials,
                                          Sampler& smp);

}  // namespace spcell
