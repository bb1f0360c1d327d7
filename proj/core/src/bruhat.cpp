#include "spcell/bruhat.hpp"

#include <string>

#include "spcell/errors.hpp"

namespace spcell {

BruhatFactors decompose_w0(const NilpotentPair& n) {
  const GroupShape s = n.shape;
  const MatQ x = n.X;
  const MatQ y = n.Y();
  if (is_zero(det(y))) throw NonGenericError("det_Y");
  const MatQ yinv = inverse(y);
  const bool odd = s.r % 2 == 1;

  MatQ m1 = theta_r(y);
  MatQ x1 = yinv * x;
  MatQ y1 = yinv;
  MatQ yp = theta_r(yinv);
  MatQ xp = theta_r(yinv) * yinv * x;
  if (odd) {
    x1 = -x1;
    y1 = -y1;
    yp = -yp;
  } else {
    xp = -xp;
  }

  const MatQ jr = form_J_q(s.ur());
  const MatQ jp = form_Jprime_q(s.um());
  MatQ factor = MatQ::identity(2 * s.um());
  factor -= jp * x.transpose() * yinv.transpose() * jr * x;
  if (is_zero(det(factor))) throw NonGenericError("m2_factor");
  MatQ m2 = inverse(factor);

  return BruhatFactors{s, m1, m2, xp, yp, x1, y1};
}

Rat alpha_r_coordinate(const NilpotentPair& n) {
  const MatQ y = n.Y();
  if (is_zero(det(y))) throw NonGenericError("det_Y");
  MatQ prod = inverse(y) * n.X;
  if (prod.cols() == 0) throw std::invalid_argument("alpha_r_coordinate: needs m >= 1");
  return prod(prod.rows() - 1, 0);
}

namespace {

/// Shared elimination core: C = L A R with antidiagonal C, both accumulators
/// upper unitriangular. `site` names the error family.
struct Eliminated {
  MatQ lacc;
  MatQ c;
  MatQ racc;
};

Eliminated eliminate_to_antidiagonal(const MatQ& a, const std::string& site) {
  const std::size_t r = a.rows();
  if (a.cols() != r) throw std::invalid_argument("big cell: matrix must be square");
  MatQ c = a;
  MatQ lacc = MatQ::identity(r);
  MatQ racc = MatQ::identity(r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t pr = r - 1 - k;
    const std::size_t pc = k;
    if (is_zero(c(pr, pc))) throw NonGenericError(site + std::to_string(k + 1));
    MatQ h = MatQ::identity(r);
    bool any = false;
    for (std::size_t i = 0; i < pr; ++i) {
      if (is_zero(c(i, pc))) continue;
      h(i, pr) = -c(i, pc) / c(pr, pc);
      any = true;
    }
    if (any) {
      c = h * c;
      lacc = h * lacc;
    }
    MatQ g = MatQ::identity(r);
    any = false;
    for (std::size_t j = pc + 1; j < r; ++j) {
      if (is_zero(c(pr, j))) continue;
      g(pc, j) = -c(pr, j) / c(pr, pc);
      any = true;
    }
    if (any) {
      c = c * g;
      racc = racc * g;
    }
  }
  return {lacc, c, racc};
}

std::vector<Rat> torus_from_antidiagonal(const MatQ& c) {
  const std::size_t r = c.rows();
  std::vector<Rat> t(r);
  for (std::size_t j = 1; j <= r; ++j) {
    Rat v = c(r - j, j - 1);
    t[j - 1] = ((r - j) % 2 == 0) ? v : -v;
  }
  return t;
}

MatQ reconstruct_with_form(const MatQ& u1, const MatQ& form, const std::vector<Rat>& t,
                           const MatQ& u2) {
  const std::size_t r = t.size();
  MatQ d(r, r);
  for (std::size_t j = 0; j < r; ++j) d(j, j) = t[j];
  return u1 * form * d * u2;
}

}  // namespace

GlCellFactors gl_big_cell(const MatQ& a) {
  Eliminated e = eliminate_to_antidiagonal(a, "gl_cell_minor_");
  return GlCellFactors{unitriangular_inverse(e.lacc), torus_from_antidiagonal(e.c),
                       unitriangular_inverse(e.racc)};
}

MatQ gl_cell_reconstruct(const GlCellFactors& f) {
  return reconstruct_with_form(f.u1, form_J_q(f.t.size()), f.t, f.u2);
}

SpCellFactors sp_big_cell(const MatQ& h) {
  if (h.rows() % 2 != 0 || !is_symplectic(h))
    throw std::invalid_argument("sp_big_cell: input must be symplectic");
  Eliminated e = eliminate_to_antidiagonal(h, "sp_cell_minor_");
  MatQ v1 = unitriangular_inverse(e.lacc);
  MatQ v2 = unitriangular_inverse(e.racc);
  std::vector<Rat> t = torus_from_antidiagonal(e.c);
  const std::size_t n2 = t.size();
  if (n2 > 0 && (!is_symplectic(v1) || !is_symplectic(v2)))
    throw std::logic_error("sp_big_cell: factors escaped the group");
  for (std::size_t j = 0; j < n2; ++j)
    if (t[j] * t[n2 - 1 - j] != Rat(1))
      throw std::logic_error("sp_big_cell: torus factor is not paired");
  return SpCellFactors{v1, t, v2};
}

MatQ sp_cell_reconstruct(const SpCellFactors& f) {
  return reconstruct_with_form(f.v1, form_Jprime_q(f.t.size() / 2), f.t, f.v2);
}

MatQ bruhat_monomial(const std::vector<std::size_t>& perm, const std::vector<Rat>& t) {
  const std::size_t n = perm.size();
  if (t.size() != n) throw std::invalid_argument("bruhat_monomial: size mismatch");
  MatQ nm(n, n);
  for (std::size_t j = 0; j < n; ++j) nm(perm[j], j) = t[j];
  return nm;
}

GlBruhatFactors gl_bruhat(const MatQ& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("gl_bruhat: matrix must be square");
  MatQ c = a;
  MatQ u1 = MatQ::identity(n);
  MatQ u2 = MatQ::identity(n);
  std::vector<std::size_t> perm(n, n);
  std::vector<std::size_t> colof(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (colof[i] == n || is_zero(c(i, j))) continue;
      const std::size_t pj = colof[i];
      const Rat coef = -c(i, j) / c(i, pj);
      for (std::size_t rr = 0; rr < n; ++rr) c(rr, j) += coef * c(rr, pj);
      for (std::size_t cc = 0; cc < n; ++cc) u2(pj, cc) -= coef * u2(j, cc);
    }
    std::size_t piv = n;
    for (std::size_t i = n; i-- > 0;) {
      if (colof[i] == n && !is_zero(c(i, j))) {
        piv = i;
        break;
      }
    }
    if (piv == n) throw SingularMatrixError();
    for (std::size_t i = 0; i < piv; ++i) {
      if (colof[i] != n || is_zero(c(i, j))) continue;
      const Rat coef = -c(i, j) / c(piv, j);
      for (std::size_t cc = 0; cc < n; ++cc) c(i, cc) += coef * c(piv, cc);
      for (std::size_t rr = 0; rr < n; ++rr) u1(rr, piv) -= coef * u1(rr, i);
    }
    perm[j] = piv;
    colof[piv] = j;
  }
  std::vector<Rat> t(n);
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = c(perm[j], j);
    for (std::size_t i = 0; i < n; ++i)
      if (i != perm[j] && !is_zero(c(i, j)))
        throw std::logic_error("gl_bruhat: elimination left a non-monomial residue");
  }
  return GlBruhatFactors{u1, perm, t, u2};
}

SpBruhatFactors sp_bruhat(const MatQ& h) {
  const std::size_t n = h.rows();
  if (n % 2 != 0 || !is_symplectic(h))
    throw std::invalid_argument("sp_bruhat: input must be symplectic");
  GlBruhatFactors g = gl_bruhat(h);
  for (std::size_t j = 0; j < n; ++j)
    if (g.perm[n - 1 - j] != n - 1 - g.perm[j])
      throw std::logic_error("sp_bruhat: pivot pattern is not mirror-symmetric");
  std::vector<std::size_t> colof(n);
  for (std::size_t j = 0; j < n; ++j) colof[g.perm[j]] = j;
  const MatQ jp = form_Jprime_q(n / 2);
  MatQ v1 = g.u1;
  // The defect tv1 J' v1 - J' is antisymmetric and supported where the index
  // sum exceeds n - 1; positions of sum n - 1 + level pair with correction
  // entries eta(i, j) of degree j - i = level, two mirror slots per equation.
  for (std::size_t level = 1; level < n; ++level) {
    const MatQ d = v1.transpose() * jp * v1 - jp;
    MatQ eta(n, n);
    bool any = false;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t asum = n - 1 + level - b;
      if (asum >= b) continue;
      const std::size_t a = asum;
      if (is_zero(d(a, b))) continue;
      const std::size_t i1 = n - 1 - a;
      const std::size_t i2 = n - 1 - b;
      if (i1 < b && colof[i1] < colof[b]) {
        eta(i1, b) = -d(a, b) / jp(a, n - 1 - a);
      } else if (i2 < a && colof[i2] < colof[a]) {
        eta(i2, a) = -d(a, b) / jp(n - 1 - b, b);
      } else {
        throw std::logic_error("sp_bruhat: defect outside the cell pattern");
      }
      any = true;
    }
    if (any) v1 = v1 * (MatQ::identity(n) + eta);
  }
  if (!is_symplectic(v1)) throw std::logic_error("sp_bruhat: left factor correction failed");
  const MatQ nmono = bruhat_monomial(g.perm, g.t);
  const MatQ v2 = inverse(nmono) * unitriangular_inverse(v1) * h;
  if (!v2.is_upper_unitriangular())
    throw std::logic_error("sp_bruhat: right factor is not unitriangular");
  if (!is_symplectic(v2) || !is_symplectic(nmono))
    throw std::logic_error("sp_bruhat: factors escaped the group");
  return SpBruhatFactors{v1, g.perm, g.t, v2};
}

}  // namespace spcell
