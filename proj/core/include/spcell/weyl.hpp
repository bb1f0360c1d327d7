#pragma once

#include <cstddef>
#include <vector>

#include "spcell/forms.hpp"

namespace spcell {

/// Element of the type-C Weyl group of rank n as a signed permutation:
/// images[i] = +j sends e_{i+1} to e_j, images[i] = -j sends it to -e_j
/// (1-based values). The Weyl group of the Levi GL_r x Sp_2m sits inside
/// rank n = r + m: the first r coordinates carry plain permutations, the
/// last m signed ones.
struct SignedPerm {
  std::vector<int> images;

  SignedPerm() = default;
  explicit SignedPerm(std::vector<int> imgs);

  [[nodiscard]] static SignedPerm identity(std::size_t n);
  [[nodiscard]] std::size_t size() const { return images.size(); }
  [[nodiscard]] bool is_identity() const;
};

[[nodiscard]] bool operator==(const SignedPerm& a, const SignedPerm& b);
[[nodiscard]] bool operator!=(const SignedPerm& a, const SignedPerm& b);
[[nodiscard]] SignedPerm compose(const SignedPerm& a, const SignedPerm& b);
[[nodiscard]] SignedPerm inverse(const SignedPerm& w);

/// Roots are integer coefficient vectors in the e-basis of rank n = r + m;
/// a root is positive iff its first nonzero coefficient is.
using RootVec = std::vector<int>;

[[nodiscard]] RootVec act_on_root(const SignedPerm& w, const RootVec& v);
[[nodiscard]] bool root_positive(const RootVec& v);

/// Simple roots of the Levi GL_r x Sp_2m, in order: e_i - e_{i+1} for
/// i < r, then e_{r+j} - e_{r+j+1} for j < m, then 2 e_{r+m}. Size
/// (r - 1) + m.
[[nodiscard]] std::vector<RootVec> levi_simple_roots(const GroupShape& s);

/// All positive roots of the Levi: the GL_r set e_i - e_j (i < j <= r) and
/// the type C_m set on the last m coordinates.
[[nodiscard]] std::vector<RootVec> levi_positive_roots(const GroupShape& s);

/// Full Weyl group W(M, A) = S_r x (signed permutations of the last m
/// coordinates), enumerated.
[[nodiscard]] std::vector<SignedPerm> levi_weyl_group(const GroupShape& s);

/// Long element of W(M, A): the order reversal on the first r coordinates
/// and -1 on the last m.
[[nodiscard]] SignedPerm levi_long_element(const GroupShape& s);

/// Number of positive roots of the Levi sent to negative ones.
[[nodiscard]] std::size_t weyl_length(const GroupShape& s, const SignedPerm& w);

/// Membership in the Bessel support set: every simple root with positive
/// image is sent to a simple root.
[[nodiscard]] bool in_bessel_support(const GroupShape& s, const SignedPerm& w);

/// The support set itself, in enumeration order of levi_weyl_group.
[[nodiscard]] std::vector<SignedPerm> bessel_support_set(const GroupShape& s);

/// Standard Levi subgroup of GL_r x Sp_2m, recorded as the subset of simple
/// roots retained (indexed as in levi_simple_roots).
struct LeviDescriptor {
  GroupShape shape;
  std::vector<bool> keep;

  LeviDescriptor(const GroupShape& s, std::vector<bool> kept);

  /// Sizes of the GL blocks: the composition of r cut at dropped roots.
  [[nodiscard]] std::vector<long> gl_blocks() const;
  /// Sizes of the GL factors inside the symplectic tail (singletons for
  /// untouched coordinates included), in coordinate order.
  [[nodiscard]] std::vector<long> sp_gl_blocks() const;
  /// Rank m' of the residual Sp_2m' factor (0 when the long root is dropped).
  [[nodiscard]] long sp_tail() const;
  /// Rank of the connected center: one per GL factor on either side.
  [[nodiscard]] std::size_t center_rank() const;
};

[[nodiscard]] bool operator==(const LeviDescriptor& a, const LeviDescriptor& b);
[[nodiscard]] bool operator!=(const LeviDescriptor& a, const LeviDescriptor& b);

/// The Levi attached to a support element: keep the simple roots with
/// positive image. Throws std::invalid_argument when w is not in the
/// support set.
[[nodiscard]] LeviDescriptor levi_of_w(const GroupShape& s, const SignedPerm& w);

/// The inverse map L -> w_M w_L^{-1}, with w_L the long element of W(L).
[[nodiscard]] SignedPerm w_of_levi(const LeviDescriptor& l);

/// Bruhat order on W(M, A), by the length-descent recursion on simple
/// reflections.
[[nodiscard]] bool bruhat_leq(const GroupShape& s, const SignedPerm& u, const SignedPerm& w);

/// Longest chain w = w_k > ... > w_0 = w' inside the support set. Arguments
/// may come in either order; throws std::invalid_argument when they are not
/// comparable or not both in the support set.
[[nodiscard]] int bessel_distance(const GroupShape& s, const SignedPerm& w, const SignedPerm& wp);

/// Rank of the connected common kernel of the simple roots kept by w (the
/// torus that survives on the cell of w). Requires w in the support set.
[[nodiscard]] std::size_t relevant_torus_rank(const GroupShape& s, const SignedPerm& w);

/// Rank data of A_w inside the larger Levi L' attached to w' <= w:
/// rank_upper = rank A_w, rank_lower = rank A_{w'}, rank_transverse =
/// rank(A_w cap L'_der). self_intersection_finite records that
/// A_{w'} cap L'_der has rank zero, complement_finite_index that
/// rank_transverse + rank_lower = rank_upper.
struct TransverseTorusDescriptor {
  std::size_t rank_upper;
  std::size_t rank_lower;
  std::size_t rank_transverse;
  bool self_intersection_finite;
  bool complement_finite_index;
};

/// Throws std::invalid_argument unless w' <= w with both in the support set.
[[nodiscard]] TransverseTorusDescriptor transverse_torus(const GroupShape& s, const SignedPerm& w,
                                                         const SignedPerm& wp);

/// Positive roots of the Levi split by the sign of their image under w:
/// plus holds those kept positive, minus those sent negative.
struct RootPartition {
  std::vector<RootVec> plus;
  std::vector<RootVec> minus;
};

[[nodiscard]] RootPartition u_partition(const GroupShape& s, const SignedPerm& w);

}  // namespace spcell
