#include "spcell/measures.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "spcell/errors.hpp"

namespace spcell {

namespace {

long pivot_exponent(const GroupShape& s, long k) {
  if (k <= static_cast<long>(s.m) - 1) return s.r + 2L * s.m - 2 - 3 * k;
  return s.r - 1 - k;
}

}  // namespace

MeasureExponents measure_exponents(const GroupShape& s, bool normalized) {
  if (normalized && s.m == 0)
    throw std::invalid_argument("measure_exponents: m = 0 has no x_{r,1} slice");
  const OrbitMask mask = canonical_mask(s);
  const std::size_t r = s.ur();
  const std::size_t c = 2 * s.um();
  const long chain = std::min<long>(s.r, 2L * s.m);
  MeasureExponents me;
  me.normalized = normalized;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (!mask.X[i][j]) continue;
      if (normalized && i == r - 1 && j == 0) continue;
      long e = 0;
      if (i + j == r - 1 && static_cast<long>(j) < chain)
        e = pivot_exponent(s, static_cast<long>(j));
      me.x_terms.push_back({i + 1, j + 1, e});
    }
  const long lead = static_cast<long>(s.r) - 2L * s.m;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      if (!mask.Z[i][j]) continue;
      long e = 0;
      if (i == j && static_cast<long>(i) < lead) e = static_cast<long>(i);
      me.z_terms.push_back({i + 1, j + 1, e});
    }
  return me;
}

Rat measure_monomial_abs(const MeasureExponents& me, const MatQ& x, const MatQ& z) {
  Rat acc(1);
  for (const MeasureTerm& t : me.x_terms)
    if (t.exp != 0) acc *= rat_pow(rat_abs(x(t.row - 1, t.col - 1)), t.exp);
  for (const MeasureTerm& t : me.z_terms)
    if (t.exp != 0) acc *= rat_pow(rat_abs(z(t.row - 1, t.col - 1)), t.exp);
  return acc;
}

JacobianCheck verify_jacobian_monomial(const GroupShape& s, const MatQ& x, const MatQ& z,
                                       bool normalized) {
  const std::size_t r = s.ur();
  const std::size_t c = 2 * s.um();
  if (x.rows() != r || x.cols() != c || z.rows() != r || z.cols() != r)
    throw std::invalid_argument("verify_jacobian_monomial: shape mismatch");
  if (z != z.transpose()) throw std::invalid_argument("verify_jacobian_monomial: z not symmetric");
  const OrbitMask mask = canonical_mask(s);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (!mask.X[i][j] && x(i, j) != Rat(0))
        throw std::invalid_argument("verify_jacobian_monomial: x not mask-conformant");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!mask.Z[i][j] && z(i, j) != Rat(0))
        throw std::invalid_argument("verify_jacobian_monomial: z not mask-conformant");
  if (normalized) {
    if (s.m == 0) throw std::invalid_argument("verify_jacobian_monomial: m = 0 has no slice");
    if (x(r - 1, 0) != Rat(1))
      throw std::invalid_argument("verify_jacobian_monomial: slice needs x_{r,1} = 1");
  }

  std::vector<std::pair<std::size_t, std::size_t>> upos;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) upos.emplace_back(i, j);
  // Positive roots are enumerated with a < b, so a > r alone detects the
  // middle-block roots that fix every chart point when r < m.
  std::vector<SpRoot> roots;
  for (const SpRoot& rt : sp_positive_roots(s.um())) {
    if (s.r < s.m && rt.a > s.ur()) continue;
    roots.push_back(rt);
  }
  std::vector<std::pair<std::size_t, std::size_t>> xpos, zpos;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (!mask.X[i][j]) continue;
      if (normalized && i == r - 1 && j == 0) continue;
      xpos.emplace_back(i, j);
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      if (mask.Z[i][j]) zpos.emplace_back(i, j);

  std::vector<Rat> base;
  base.reserve(upos.size() + roots.size() + xpos.size() + zpos.size());
  for (std::size_t k = 0; k < upos.size() + roots.size(); ++k) base.emplace_back(0);
  for (const auto& pos : xpos) base.push_back(x(pos.first, pos.second));
  for (const auto& pos : zpos) base.push_back(z(pos.first, pos.second));

  const std::size_t dout = r * c + r * (r + 1) / 2 - (normalized ? 1 : 0);
  if (base.size() != dout)
    throw std::logic_error("verify_jacobian_monomial: chart dimension bookkeeping failed");

  auto f = [&](const std::vector<DualRat>& v) {
    std::size_t off = 0;
    MatD u1 = MatD::identity(r);
    for (const auto& pos : upos) u1(pos.first, pos.second) = v[off++];
    MatD u2 = MatD::identity(c);
    for (const SpRoot& rt : roots) {
      u2 = u2 * sp_root_elem<DualRat>(s.um(), rt, v[off]);
      ++off;
    }
    MatD xm(r, c), zm(r, r);
    if (normalized) xm(r - 1, 0) = DualRat(1);
    for (const auto& pos : xpos) xm(pos.first, pos.second) = v[off++];
    for (const auto& pos : zpos) {
      zm(pos.first, pos.second) = v[off];
      zm(pos.second, pos.first) = v[off];
      ++off;
    }
    const MatD xa = u1 * xm * unitriangular_inverse(u2);
    const MatD za = u1 * zm * u1.transpose();
    std::vector<DualRat> out;
    out.reserve(dout);
    DualRat il(1), il2(1);
    if (normalized) {
      il = DualRat(1) / xa(r - 1, 0);
      il2 = il * il;
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (normalized && i == r - 1 && j == 0) continue;
        out.push_back(xa(i, j) * il);
      }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) out.push_back(za(i, j) * il2);
    return out;
  };

  const MatQ jac = jacobian_exact(f, base);
  const Rat d = det(jac);
  JacobianCheck res;
  res.det_abs = rat_abs(d);
  res.sign = sgn(d);
  res.expected_abs = measure_monomial_abs(measure_exponents(s, normalized), x, z);
  res.matches = res.det_abs == res.expected_abs;
  return res;
}

ChangeOfVarsCheck xz_xy_jacobian(const GroupShape& s, const MatQ& x) {
  const std::size_t r = s.ur();
  if (x.rows() != r || x.cols() != 2 * s.um())
    throw std::invalid_argument("xz_xy_jacobian: shape mismatch");
  MatD xd(r, x.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) xd(i, j) = DualRat(x(i, j));
  std::vector<std::pair<std::size_t, std::size_t>> zpos;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) zpos.emplace_back(i, j);
  const std::vector<Rat> base(zpos.size(), Rat(0));

  auto f = [&](const std::vector<DualRat>& v) {
    MatD zm(r, r);
    std::size_t off = 0;
    for (const auto& pos : zpos) {
      zm(pos.first, pos.second) = v[off];
      zm(pos.second, pos.first) = v[off];
      ++off;
    }
    const MatD y = y_from_xz(s, xd, zm);
    std::vector<DualRat> out;
    out.reserve(zpos.size());
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; a + b + 1 < r + 1; ++b) out.push_back(y(a, b));
    return out;
  };

  const Rat d = det(jacobian_exact(f, base));
  ChangeOfVarsCheck res;
  res.unit = rat_abs(d) == Rat(1);
  res.sign = sgn(d);
  return res;
}

bool xz_xy_change_of_variables_check(const GroupShape& s, int trials, Sampler& smp) {
  for (int t = 0; t < trials; ++t) {
    const MatQ x = smp.matrix(s.ur(), 2 * s.um());
    if (!xz_xy_jacobian(s, x).unit) return false;
  }
  return true;
}

long power_identity_lhs(const GroupShape& s) {
  if (s.m == 0) throw std::invalid_argument("power_identity_lhs: needs m >= 1");
  const MeasureExponents me = measure_exponents(s, false);
  long acc = static_cast<long>(s.r) * (s.r + 2L * s.m + 1) - 1;
  for (const MeasureTerm& t : me.x_terms) {
    if (t.row == s.ur() && t.col == 1) continue;
    acc -= t.exp + 1;
  }
  for (const MeasureTerm& t : me.z_terms) acc -= 2 * t.exp + 2;
  return acc;
}

long power_identity_target(const GroupShape& s) { return s.r + 2L * s.m - 2; }

long power_identity_casewise_lhs(const GroupShape& s) {
  if (s.m == 0) throw std::invalid_argument("power_identity_casewise_lhs: needs m >= 1");
  const long r = s.r;
  const long m = s.m;
  long acc = r * (r + 2 * m + 1) - 1;
  if (r <= m) {
    for (long k = 1; k <= r - 1; ++k) acc -= (r + 2 * m - 2 - 3 * k) + 1;
    acc -= r * (r - 1) / 2;
    acc -= r * (r + 1);
  } else if (r < 2 * m) {
    for (long k = 1; k <= m - 1; ++k) acc -= (r + 2 * m - 2 - 3 * k) + 1;
    for (long k = 1; k <= r - m - 1; ++k) acc -= (r - m - k) + 1;
    acc -= (r - m) * (r - m) - (r - m - 1);
    acc -= (3 * r - 2 * m - 1) * (2 * m - r) / 2;
    acc -= r * (r + 1);
  } else {
    for (long k = 1; k <= m - 1; ++k) acc -= (r + 2 * m - 2 - 3 * k) + 1;
    for (long k = 1; k <= m; ++k) acc -= (r - m - k) + 1;
    acc -= m * (m - 1);
    for (long k = 1; k <= r - 2 * m; ++k) acc -= 2 * ((k - 1) + 2);
    acc -= 2 * (r * (r + 1) / 2 - (r - 2 * m) * (r - 2 * m - 1) / 2);
  }
  return acc;
}

bool measure_power_identities(int r_max, int m_max) {
  for (int r = 1; r <= r_max; ++r)
    for (int m = 1; m <= m_max; ++m) {
      const GroupShape s(r, m);
      if (power_identity_lhs(s) != power_identity_target(s)) return false;
    }
  return true;
}

}  // namespace spcell
