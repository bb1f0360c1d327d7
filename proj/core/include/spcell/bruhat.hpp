#pragma once

#include <vector>

#include "spcell/forms.hpp"
#include "spcell/mat.hpp"

namespace spcell {

/// Factors of w0^{-1} n(X, Y) = m(m1, m2) n(X', Y') nbar(X1, Y1).
struct BruhatFactors {
  GroupShape shape;
  MatQ m1;  // r x r
  MatQ m2;  // 2m x 2m symplectic
  MatQ Xp;  // X'
  MatQ Yp;  // Y'
  MatQ X1;
  MatQ Y1;
};

/// Closed-form decomposition on the open cell:
///   m1 = theta_r(Y), X1 = (-1)^r Y^{-1} X, Y1 = (-1)^r Y^{-1},
///   Y' = (-1)^r theta_r(Y)^{-1}, X' = (-1)^{r-1} theta_r(Y^{-1}) Y^{-1} X,
///   m2 = (I - J' tX tY^{-1} J_r X)^{-1}.
/// Throws NonGenericError("det_Y") / NonGenericError("m2_factor") off the cell.
[[nodiscard]] BruhatFactors decompose_w0(const NilpotentPair& n);

/// The simple-root coordinate of w0 nbar(X1, Y1) w0^{-1} attached to alpha_r:
/// the (r, 1) entry of Y^{-1} X. Invariant under left/right translation of
/// n(X, Y) by U_M.
[[nodiscard]] Rat alpha_r_coordinate(const NilpotentPair& n);

/// Big-cell factorization A = u1 (J_r diag(t)) u2 in GL_r with both u's upper
/// unitriangular. Throws NonGenericError("gl_cell_minor_<k>") when the k-th
/// corner pivot vanishes.
struct GlCellFactors {
  MatQ u1;
  std::vector<Rat> t;
  MatQ u2;
};
[[nodiscard]] GlCellFactors gl_big_cell(const MatQ& a);
[[nodiscard]] MatQ gl_cell_reconstruct(const GlCellFactors& f);

/// Same factorization inside Sp_2m with the J' form: h = v1 (J' diag(t)) v2.
/// The elimination is the GL one; the factors of a symplectic input land in
/// Sp_2m by uniqueness, and this is checked: v1, v2 symplectic, t paired as
/// t_j t_{2m+1-j} = 1. Throws NonGenericError("sp_cell_minor_<k>") off the
/// cell.
struct SpCellFactors {
  MatQ v1;
  std::vector<Rat> t;
  MatQ v2;
};
[[nodiscard]] SpCellFactors sp_big_cell(const MatQ& h);
[[nodiscard]] MatQ sp_cell_reconstruct(const SpCellFactors& f);

/// Bruhat factorization a = u1 N u2 valid on every cell: u1, u2 upper
/// unitriangular, N the monomial matrix with N(perm[j], j) = t[j] and zeros
/// elsewhere. Pivots are chosen bottom-most per column, which pins the cell.
/// Throws SingularMatrixError on singular input.
struct GlBruhatFactors {
  MatQ u1;
  std::vector<std::size_t> perm;
  std::vector<Rat> t;
  MatQ u2;
};
[[nodiscard]] GlBruhatFactors gl_bruhat(const MatQ& a);
[[nodiscard]] MatQ bruhat_monomial(const std::vector<std::size_t>& perm,
                                   const std::vector<Rat>& t);

/// Bruhat factorization of a symplectic matrix with both unipotent factors in
/// Sp_2m: h = v1 N v2. Starting from the GL factors, v1 is corrected degree by
/// degree inside the subgroup of upper unitriangulars that N conjugates back
/// into itself; the pivot pattern of a symplectic matrix is mirror-symmetric
/// (perm[n-1-j] = n-1-perm[j]) and the corrected factors stay symplectic, both
/// checked. t holds the raw pivot entries of N.
struct SpBruhatFactors {
  MatQ v1;
  std::vector<std::size_t> perm;
  std::vector<Rat> t;
  MatQ v2;
};
[[nodiscard]] SpBruhatFactors sp_bruhat(const MatQ& h);

}  // namespace spcell
