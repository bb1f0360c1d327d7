#pragma once

#include <utility>
#include <vector>

#include "spcell/forms.hpp"
#include "spcell/mat.hpp"
#include "spcell/rng.hpp"

namespace spcell {

enum class CaseTag { R_LE_M, M_LT_R_LT_2M, R_GE_2M };

[[nodiscard]] CaseTag case_of(const GroupShape& s);

/// Free-coordinate dimensions (d_X, d_Z) of the canonical representatives.
[[nodiscard]] std::pair<long, long> orbit_dims(const GroupShape& s);

/// Boolean masks of free coordinates, 0-based; maskZ is symmetric and its
/// dimension count is taken over i <= j.
struct OrbitMask {
  std::vector<std::vector<bool>> X;  // r x 2m
  std::vector<std::vector<bool>> Z;  // r x r
};
[[nodiscard]] OrbitMask canonical_mask(const GroupShape& s);

struct StabilizerDescriptor {
  enum class Kind { trivial, Sp_block, GL_block } kind;
  int block_size;  // 2(m-r) for Sp_block, r-2m for GL_block, 0 otherwise
};
[[nodiscard]] StabilizerDescriptor stabilizer_of(const GroupShape& s);

struct CanonicalOrbitRep {
  GroupShape shape;
  CaseTag case_tag;
  MatQ RX;  // r x 2m, mask-conformant
  MatQ RZ;  // r x r symmetric, mask-conformant
  MatQ u1;  // r x r upper unitriangular
  MatQ u2;  // 2m x 2m upper unitriangular symplectic
  StabilizerDescriptor stabilizer;
};

/// The U_M action on (X, Z) coordinates: X -> u1 X u2^{-1}, Z -> u1 Z tu1.
[[nodiscard]] std::pair<MatQ, MatQ> orbit_act(const MatQ& u1, const MatQ& u2, const MatQ& x,
                                              const MatQ& z);

/// Inductive canonicalization: clears X along the antidiagonal pivots with
/// symplectic column operations and unitriangular row operations, then
/// (r > 2m) diagonalizes the leading Z block.
/// Throws PivotError(step, index) when a pivot the elimination divides by
/// vanishes; step counts elimination phases in order, index is the 1-based
/// pivot column (X phases) or diagonal position (Z phase).
[[nodiscard]] CanonicalOrbitRep reduce_to_canonical(const NilpotentPair& n);

/// Exercises the asserted stabilizer: Sp_block elements must fix the whole
/// point, GL_block elements fix RX and generically move RZ, and in the
/// trivial case every sampled nontrivial u must move the point.
[[nodiscard]] bool stabilizer_check(const CanonicalOrbitRep& rep, int samples, Sampler& smp);

/// Z_M^0-normalized slice: X' = X / x_{r,1}, Z' = Z / x_{r,1}^2, so that
/// x'_{r,1} = 1. Rejects x_{r,1} = 0.
struct NormalizedRep {
  MatQ X;
  MatQ Z;
  Rat scale;  // the removed x_{r,1}
};
[[nodiscard]] NormalizedRep zm0_normalize(const MatQ& x, const MatQ& z);

/// The Z_M^0 action on (X, Z): (X, Z) -> (t X, t^2 Z).
[[nodiscard]] std::pair<MatQ, MatQ> zm0_act(const Rat& t, const MatQ& x, const MatQ& z);

}  // namespace spcell
