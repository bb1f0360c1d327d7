#include "spcell/torus.hpp"

#include <algorithm>
#include <string>

#include "spcell/errors.hpp"

namespace spcell {

namespace {

/// det(Y_0), ..., det(Y_r) for lower_nested, det(Y^(0)), ..., det(Y^(r)) for
/// upper_nested; entry 0 is 1.
std::vector<Rat> nested_minors(MinorKind kind, const MatQ& y) {
  const std::size_t r = y.rows();
  std::vector<Rat> d(r + 1, Rat(1));
  for (std::size_t i = 1; i <= r; ++i) d[i] = structured_minor(kind, y, i);
  return d;
}

void require_nonzero(const std::vector<Rat>& d, const std::string& site) {
  for (std::size_t i = 1; i < d.size(); ++i)
    if (is_zero(d[i])) throw NonGenericError(site + std::to_string(i));
}

void require_toric(const NilpotentPair& n) {
  const GroupShape s = n.shape;
  const std::size_t k = std::min(s.ur(), s.um());
  for (std::size_t i = 0; i < s.ur(); ++i)
    for (std::size_t j = 0; j < 2 * s.um(); ++j) {
      const bool slot = (i + j + 1 == s.ur()) && j < k;
      if (!slot && !is_zero(n.X(i, j)))
        throw std::invalid_argument("phi_minor_formula: X is not supported on the toric slots");
    }
}

MatQ diag_of(const std::vector<Rat>& v) {
  MatQ d(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d(i, i) = v[i];
  return d;
}

}  // namespace

TorusPair phi_minor_formula(const NilpotentPair& n) {
  const GroupShape s = n.shape;
  const std::size_t r = s.ur();
  const std::size_t m = s.um();
  const std::size_t k = std::min(r, m);
  require_toric(n);
  const MatQ y = n.Y();
  const std::vector<Rat> dl = nested_minors(MinorKind::lower_nested, y);
  const std::vector<Rat> du = nested_minors(MinorKind::upper_nested, y);
  require_nonzero(dl, "phi_lower_");
  require_nonzero(du, "phi_upper_");

  TorusPair out;
  out.t1.resize(r);
  for (std::size_t i = 1; i <= r; ++i) {
    Rat v = dl[r - i] / dl[r - i + 1];
    out.t1[i - 1] = ((r - i) % 2 == 0) ? v : -v;
  }
  out.t2.assign(2 * m, Rat(1));
  for (std::size_t j = 1; j <= k; ++j) {
    const Rat xe = n.X(r - j, j - 1);
    if (is_zero(xe)) throw NonGenericError("phi_x_" + std::to_string(j));
    Rat v = du[r - j] / du[r - j + 1] * xe * xe;
    out.t2[j - 1] = (j % 2 == 0) ? v : -v;
  }
  for (std::size_t j = 0; j < m; ++j) out.t2[2 * m - 1 - j] = Rat(1) / out.t2[j];
  return out;
}

std::pair<MatQ, MatQ> unipotent_entries_formula(const NilpotentPair& n) {
  const std::size_t r = n.shape.ur();
  const MatQ y = n.Y();
  const std::vector<Rat> dl = nested_minors(MinorKind::lower_nested, y);
  require_nonzero(dl, "u_entry_minor_");
  MatQ u1 = MatQ::identity(r);
  MatQ u2 = MatQ::identity(r);
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) {
      u1(i - 1, j - 1) = structured_minor(MinorKind::cross, y, i, j) / dl[j - 1];
      u2(i - 1, j - 1) = structured_minor(MinorKind::cross_prime, y, i, j) / dl[r - i];
    }
  return {u1, u2};
}

NilpotentPair toric_act(const std::vector<Rat>& s1, const std::vector<Rat>& s2,
                        const NilpotentPair& n) {
  const GroupShape s = n.shape;
  const std::size_t r = s.ur();
  const std::size_t m = s.um();
  if (s1.size() != r || s2.size() != 2 * m)
    throw std::invalid_argument("toric_act: diagonal size mismatch");
  for (const Rat& v : s1)
    if (is_zero(v)) throw std::invalid_argument("toric_act: singular s'");
  for (std::size_t j = 0; j < m; ++j)
    if (is_zero(s2[j]) || s2[j] * s2[2 * m - 1 - j] != Rat(1))
      throw std::invalid_argument("toric_act: s'' is not of symplectic torus shape");
  const MatQ d1 = diag_of(s1);
  std::vector<Rat> s2inv(2 * m);
  for (std::size_t j = 0; j < 2 * m; ++j) s2inv[j] = Rat(1) / s2[j];
  return make_n(s, d1 * n.X * diag_of(s2inv), d1 * n.Z * d1);
}

TorusPair phi_equivariance_factors(const GroupShape& s, const std::vector<Rat>& s1,
                                   const std::vector<Rat>& s2) {
  const std::size_t r = s.ur();
  const std::size_t m = s.um();
  const std::size_t k = std::min(r, m);
  if (s1.size() != r || s2.size() != 2 * m)
    throw std::invalid_argument("phi_equivariance_factors: diagonal size mismatch");
  TorusPair f;
  f.t1.resize(r);
  for (std::size_t i = 0; i < r; ++i) f.t1[i] = Rat(1) / (s1[i] * s1[i]);
  f.t2.assign(2 * m, Rat(1));
  for (std::size_t j = 0; j < 2 * m; ++j)
    if (j < k || j >= 2 * m - k) f.t2[j] = Rat(1) / (s2[j] * s2[j]);
  return f;
}

bool square_cover_check(const GroupShape& s, int trials, Sampler& smp) {
  const std::size_t r = s.ur();
  const std::size_t m = s.um();
  const std::size_t k = std::min(r, m);
  for (int trial = 0; trial < trials; ++trial) {
    MatQ x(r, 2 * m);
    for (std::size_t j = 0; j < k; ++j) x(r - 1 - j, j) = smp.nonzero_rational();
    MatQ z(r, r);
    for (std::size_t i = 0; i < r; ++i) z(i, i) = smp.nonzero_rational();
    const NilpotentPair n = make_n(s, x, z);
    const TorusPair base = phi_minor_formula(n);

    for (std::size_t j = 0; j < k; ++j) {
      MatQ xf = x;
      xf(r - 1 - j, j) = -xf(r - 1 - j, j);
      if (xf == x) return false;
      if (phi_minor_formula(make_n(s, xf, z)) != base) return false;
      xf(r - 1 - j, j) *= Rat(2);
      if (phi_minor_formula(make_n(s, xf, z)) == base) return false;
    }
    for (std::size_t i = 0; i < r; ++i) {
      MatQ zf = z;
      zf(i, i) = -zf(i, i);
      if (phi_minor_formula(make_n(s, x, zf)) == base) return false;
    }
  }
  return true;
}

StabilityScalarReport stability_scalar_report(const std::vector<long>& blocks,
                                              const std::vector<Rat>& s_values,
                                              const NilpotentPair& n) {
  const GroupShape s = n.shape;
  const std::size_t r = s.ur();
  if (blocks.empty() || blocks.size() != s_values.size())
    throw std::invalid_argument("stability_scalar_report: blocks and s_values mismatch");
  long total = 0;
  for (long b : blocks) {
    if (b < 1) throw std::invalid_argument("stability_scalar_report: empty block");
    total += b;
  }
  if (total != s.r) throw std::invalid_argument("stability_scalar_report: blocks must sum to r");
  for (const Rat& v : s_values)
    if (is_zero(v)) throw std::invalid_argument("stability_scalar_report: singular scalar");

  std::vector<Rat> s1;
  s1.reserve(r);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (long q = 0; q < blocks[b]; ++q) s1.push_back(s_values[b]);
  const std::vector<Rat> s2(2 * s.um(), Rat(1));

  std::vector<std::size_t> lead(r - 1);
  for (std::size_t q = 0; q + 1 < r; ++q) lead[q] = q;
  const auto scalars = [&](const NilpotentPair& p) {
    const MatQ y = p.Y();
    const Rat dy = det(y);
    if (is_zero(dy)) throw NonGenericError("stability_det_Y");
    const Rat corner = det(y.submatrix(lead, lead));
    if (is_zero(corner)) throw NonGenericError("stability_corner");
    return std::pair<Rat, Rat>(det(theta_r(y)), corner / dy);
  };

  const auto before = scalars(n);
  const auto after = scalars(toric_act(s1, s2, n));

  StabilityScalarReport rep;
  rep.det_m1.actual = after.first / before.first;
  rep.corner_ratio.actual = after.second / before.second;

  Rat dets(1);
  Rat prodsq(1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    dets *= rat_pow(s_values[b], blocks[b]);
    prodsq *= s_values[b] * s_values[b];
  }
  rep.det_m1.derived = Rat(1) / (dets * dets);
  rep.det_m1.claimed = prodsq;
  rep.corner_ratio.derived = Rat(1) / (s_values.front() * s_values.back());
  rep.corner_ratio.claimed = Rat(1) / (s_values.back() * s_values.back());
  rep.derived_ok = rep.det_m1.actual == rep.det_m1.derived &&
                   rep.corner_ratio.actual == rep.corner_ratio.derived;
  rep.claimed_ok = rep.det_m1.actual == rep.det_m1.claimed &&
                   rep.corner_ratio.actual == rep.corner_ratio.claimed;
  return rep;
}

bool stability_scalar_check(const GroupShape& s, const std::vector<long>& blocks,
                            const std::vector<Rat>& s_values, int trials, Sampler& smp) {
  bool all_claimed = true;
  for (int trial = 0; trial < trials; ++trial) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 100) throw NonGenericError("stability_sampling");
      const NilpotentPair n =
          make_n(s, smp.matrix(s.ur(), 2 * s.um()), smp.symmetric_matrix(s.ur()));
      try {
        const StabilityScalarReport rep = stability_scalar_report(blocks, s_values, n);
        if (!rep.derived_ok) throw std::logic_error("stability_scalar_check: exact law violated");
        all_claimed = all_claimed && rep.claimed_ok;
        break;
      } catch (const NonGenericError&) {
      }
    }
  }
  return all_claimed;
}

}  // namespace spcell
