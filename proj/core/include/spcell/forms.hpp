#pragma once

#include <cstddef>
#include <string>

#include "spcell/mat.hpp"
#include "spcell/rng.hpp"

namespace spcell {

/// Shape datum (r, m): GL_r times Sp_2m Levi inside Sp_2n, n = r + m.
/// m = 0 is allowed; every 2m-sized block degenerates to an empty matrix.
struct GroupShape {
  int r;
  int m;

  GroupShape(int r_, int m_) : r(r_), m(m_) {
    if (r < 1 || m < 0) throw std::invalid_argument("GroupShape: need r >= 1, m >= 0");
  }
  [[nodiscard]] int n() const { return r + m; }
  [[nodiscard]] std::size_t ur() const { return static_cast<std::size_t>(r); }
  [[nodiscard]] std::size_t um() const { return static_cast<std::size_t>(m); }
  [[nodiscard]] std::size_t un() const { return static_cast<std::size_t>(r + m); }
};

/// Antidiagonal form J_n: entry (k, n+1-k) = (-1)^(k-1), 1-based.
template <class T>
[[nodiscard]] Mat<T> form_J(std::size_t n) {
  Mat<T> j(n, n);
  T s(1);
  for (std::size_t k = 0; k < n; ++k) {
    j(k, n - 1 - k) = s;
    s = -s;
  }
  return j;
}

/// J'_2n = [[0, J_n], [-tJ_n, 0]]. Coincides with J_2n entrywise; built from
/// the block definition regardless.
template <class T>
[[nodiscard]] Mat<T> form_Jprime(std::size_t n) {
  Mat<T> jp(2 * n, 2 * n);
  Mat<T> j = form_J<T>(n);
  jp.set_block(0, n, j);
  jp.set_block(n, 0, -j.transpose());
  return jp;
}

[[nodiscard]] MatQ form_J_q(std::size_t n);
[[nodiscard]] MatQ form_Jprime_q(std::size_t n);

[[nodiscard]] bool is_symplectic(const MatQ& h);

/// theta_r(g) = J_r tg^{-1} J_r^{-1}, the outer involution of GL_r.
[[nodiscard]] MatQ theta_r(const MatQ& g);

/// theta_{r,m}(X) = (-1)^r J'_2m tX J_r for X of size r x 2m.
template <class T>
[[nodiscard]] Mat<T> theta_rm(const GroupShape& s, const Mat<T>& x) {
  if (x.rows() != s.ur() || x.cols() != 2 * s.um())
    throw std::invalid_argument("theta_rm: X must be r x 2m");
  Mat<T> res = form_Jprime<T>(s.um()) * x.transpose() * form_J<T>(s.ur());
  if (s.r % 2 == 1) res = -res;
  return res;
}

/// Y = Z J_r + X theta_{r,m}(X) / 2 for symmetric Z.
template <class T>
[[nodiscard]] Mat<T> y_from_xz(const GroupShape& s, const Mat<T>& x, const Mat<T>& z) {
  Mat<T> y = z * form_J<T>(s.ur());
  Mat<T> corr = x * theta_rm(s, x);
  const T half = T(1) / T(2);
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) += half * corr(i, j);
  return y;
}

/// Z = J_r tY + (-1)^r X J'_2m tX / 2; symmetric iff (X, Y) satisfies the
/// nilpotent-radical constraint.
[[nodiscard]] MatQ z_from_xy(const GroupShape& s, const MatQ& x, const MatQ& y);

/// Element n(X, Z) of the unipotent radical N, stored in the independent
/// coordinates (X, Z) with Z symmetric; Y is derived on demand.
struct NilpotentPair {
  GroupShape shape;
  MatQ X;  // r x 2m
  MatQ Z;  // r x r symmetric

  [[nodiscard]] MatQ Y() const { return y_from_xz(shape, X, Z); }
};

/// Builds n(X, Z); rejects non-symmetric Z naming the residual.
[[nodiscard]] NilpotentPair make_n(const GroupShape& s, const MatQ& x, const MatQ& z);

/// Builds n(X, Y); rejects constraint violations naming the residual.
[[nodiscard]] NilpotentPair make_n_from_y(const GroupShape& s, const MatQ& x, const MatQ& y);

/// Embedded (2n) x (2n) matrix [[I, X, Y], [0, I, theta_rm(X)], [0, 0, I]].
[[nodiscard]] MatQ embed_n(const NilpotentPair& n);

/// nbar(X1, Y1) = w0 n(X1, Y1) w0^{-1}, the opposite radical element.
/// (X1, Y1) must satisfy the same constraint as n(X, Y).
[[nodiscard]] MatQ embed_nbar(const GroupShape& s, const MatQ& x1, const MatQ& y1);

struct FormsSet {
  MatQ J;       // J_n
  MatQ Jprime;  // J'_2n
  MatQ wG;      // longest-element representative of Sp_2n
  MatQ wM;      // longest-element representative of M
  MatQ w0;      // wG * wM^{-1}
};

[[nodiscard]] FormsSet build_forms(const GroupShape& s);

[[nodiscard]] MatQ w0_matrix(const GroupShape& s);
[[nodiscard]] MatQ w0_inverse(const GroupShape& s);

/// m(m1, m2) = diag(m1, m2, theta_r(m1)) in Sp_2n.
[[nodiscard]] MatQ levi_embed(const GroupShape& s, const MatQ& m1, const MatQ& m2);

/// alpha-covee cocharacter: diag(t I_r, I_2m, t^{-1} I_r).
[[nodiscard]] MatQ alpha_covee(const GroupShape& s, const Rat& t);

/// Sum of superdiagonal entries at the simple positions of M:
/// rows 1..r-1 (GL_r part) and r+1..r+m (Sp_2m part), 1-based.
[[nodiscard]] Rat psi_value(const GroupShape& s, const MatQ& u);

/// Checks psi(w0 u w0^{-1}) = psi(u) for `samples` random u in U_M.
[[nodiscard]] bool psi_compat_check(const GroupShape& s, int samples, Sampler& smp);

struct RhoPairing {
  long two_rho_coeff;       // 2m + r + 1
  long tilde_alpha_pairing; // r
  long exponent;            // r (2m + r + 1)
};

[[nodiscard]] RhoPairing rho_pairing(const GroupShape& s);

/// Symplectic root-group elementaries for Sp_2m with the J' form, 1-based
/// indices. Short: I + c (E_ab + (-1)^(a+b+1) E_{2m+1-b, 2m+1-a}) for a != b,
/// a + b != 2m+1. Long: I + c E_{a, 2m+1-a}.
template <class T>
[[nodiscard]] Mat<T> sp_short_elem(std::size_t m, std::size_t a, std::size_t b, const T& c) {
  if (a < 1 || b < 1 || a > 2 * m || b > 2 * m || a == b || a + b == 2 * m + 1)
    throw std::invalid_argument("sp_short_elem: bad root indices");
  Mat<T> e = Mat<T>::identity(2 * m);
  e(a - 1, b - 1) += c;
  T mirror = ((a + b + 1) % 2 == 0) ? c : -c;
  e(2 * m - b, 2 * m - a) += mirror;
  return e;
}

template <class T>
[[nodiscard]] Mat<T> sp_long_elem(std::size_t m, std::size_t a, const T& c) {
  if (a < 1 || a > 2 * m) throw std::invalid_argument("sp_long_elem: bad index");
  Mat<T> e = Mat<T>::identity(2 * m);
  e(a - 1, 2 * m - a) += c;
  return e;
}

/// Positive-root parameterization of U_{Sp_2m}: the fixed order is all
/// eps_a - eps_b (a < b <= m), then eps_a + eps_b (a < b <= m), then 2 eps_a.
struct SpRoot {
  enum class Kind { short_minus, short_plus, long_root } kind;
  std::size_t a, b;  // 1-based; b unused for long roots
};

[[nodiscard]] std::vector<SpRoot> sp_positive_roots(std::size_t m);

template <class T>
[[nodiscard]] Mat<T> sp_root_elem(std::size_t m, const SpRoot& rt, const T& c) {
  switch (rt.kind) {
    case SpRoot::Kind::short_minus:
      return sp_short_elem<T>(m, rt.a, rt.b, c);
    case SpRoot::Kind::short_plus:
      return sp_short_elem<T>(m, rt.a, 2 * m + 1 - rt.b, c);
    case SpRoot::Kind::long_root:
    default:
      return sp_long_elem<T>(m, rt.a, c);
  }
}

/// Random element of U_{Sp_2m} as a product of root elementaries.
[[nodiscard]] MatQ random_sp_unipotent(std::size_t m, Sampler& smp);

/// Random element u = diag(u1, u2, theta_r(u1)) of U_M, returned as the
/// (u1, u2) pair.
struct LeviUnipotent {
  MatQ u1;  // r x r upper unitriangular
  MatQ u2;  // 2m x 2m upper unitriangular symplectic
};
[[nodiscard]] LeviUnipotent random_levi_unipotent(const GroupShape& s, Sampler& smp);

}  // namespace spcell
