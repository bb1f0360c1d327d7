#include "spcell/orbit.hpp"

#include <algorithm>
#include <cstdlib>

#include "spcell/errors.hpp"

namespace spcell {

CaseTag case_of(const GroupShape& s) {
  if (s.r <= s.m) return CaseTag::R_LE_M;
  if (s.r >= 2 * s.m) return CaseTag::R_GE_2M;
  return CaseTag::M_LT_R_LT_2M;
}

OrbitMask canonical_mask(const GroupShape& s) {
  const int r = s.r, m = s.m;
  OrbitMask mask;
  mask.X.assign(s.ur(), std::vector<bool>(2 * s.um(), false));
  mask.Z.assign(s.ur(), std::vector<bool>(s.ur(), false));
  const CaseTag tag = case_of(s);
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= 2 * m; ++j) {
      bool free_coord = false;
      switch (tag) {
        case CaseTag::R_LE_M:
          free_coord = (i + j == r + 1) || (j - i >= 2 * m - r + 1);
          break;
        case CaseTag::R_GE_2M:
          free_coord = (i + j == r + 1 && j <= m + 1) ||
                       (j >= m + 2 && j - m - 1 >= std::abs(i - (r - m)));
          break;
        case CaseTag::M_LT_R_LT_2M:
          free_coord = (i + j == r + 1 && j <= m + 1) ||
                       (j >= m + 2 && j <= r && j - m - 1 >= std::abs(i - (r - m))) ||
                       (j >= r && j - i >= 2 * m - r + 1);
          break;
      }
      mask.X[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = free_coord;
    }
  }
  const int k = r - 2 * m;  // leading Z block forced diagonal when positive
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) {
      bool free_coord = true;
      if (k > 0 && i != j && i <= k && j <= k) free_coord = false;
      mask.Z[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = free_coord;
    }
  return mask;
}

std::pair<long, long> orbit_dims(const GroupShape& s) {
  const OrbitMask mask = canonical_mask(s);
  long dx = 0, dz = 0;
  for (std::size_t i = 0; i < s.ur(); ++i)
    for (std::size_t j = 0; j < 2 * s.um(); ++j)
      if (mask.X[i][j]) ++dx;
  for (std::size_t i = 0; i < s.ur(); ++i)
    for (std::size_t j = i; j < s.ur(); ++j)
      if (mask.Z[i][j]) ++dz;
  return {dx, dz};
}

StabilizerDescriptor stabilizer_of(const GroupShape& s) {
  if (s.r < s.m) return {StabilizerDescriptor::Kind::Sp_block, 2 * (s.m - s.r)};
  if (s.r > 2 * s.m) return {StabilizerDescriptor::Kind::GL_block, s.r - 2 * s.m};
  return {StabilizerDescriptor::Kind::trivial, 0};
}

std::pair<MatQ, MatQ> orbit_act(const MatQ& u1, const MatQ& u2, const MatQ& x, const MatQ& z) {
  MatQ nx = u1 * x;
  if (u2.rows() > 0) nx = nx * inverse(u2);
  return {nx, u1 * z * u1.transpose()};
}

CanonicalOrbitRep reduce_to_canonical(const NilpotentPair& n) {
  const GroupShape s = n.shape;
  const std::size_t r = s.ur();
  const std::size_t cols = 2 * s.um();
  const int m = s.m;
  MatQ x = n.X;
  MatQ z = n.Z;
  MatQ u1 = MatQ::identity(r);
  MatQ u2inv = MatQ::identity(cols);
  int step = 0;

  auto apply_left = [&](const MatQ& h) {
    x = h * x;
    z = h * z * h.transpose();
    u1 = h * u1;
  };
  auto apply_right = [&](const MatQ& g) {
    x = x * g;
    u2inv = u2inv * g;
  };
  // Kills column pcol above row prow with row operations sourced at prow.
  auto clear_column_above = [&](std::size_t prow, std::size_t pcol, const Rat& pivot) {
    MatQ h = MatQ::identity(r);
    bool any = false;
    for (std::size_t i = 0; i < prow; ++i) {
      if (is_zero(x(i, pcol))) continue;
      h(i, prow) = -x(i, pcol) / pivot;
      any = true;
    }
    if (any) apply_left(h);
  };

  const int tmax = std::min(s.r, m);
  for (int t = 0; t < tmax; ++t, ++step) {
    const std::size_t prow = r - 1 - static_cast<std::size_t>(t);
    const std::size_t pcol = static_cast<std::size_t>(t);
    if (is_zero(x(prow, pcol))) throw PivotError(step, t + 1);
    // short-root column operations up to the partner column 2m - t, then the
    // long-root operation for the partner column itself
    for (std::size_t j = pcol + 1; j + pcol + 1 < cols; ++j) {
      if (is_zero(x(prow, j))) continue;
      Rat c = -x(prow, j) / x(prow, pcol);
      apply_right(sp_short_elem<Rat>(s.um(), pcol + 1, j + 1, c));
    }
    const std::size_t gcol = cols - 1 - pcol;
    if (!is_zero(x(prow, gcol))) {
      Rat c = -x(prow, gcol) / x(prow, pcol);
      apply_right(sp_long_elem<Rat>(s.um(), pcol + 1, c));
    }
    clear_column_above(prow, pcol, x(prow, pcol));
  }

  if (s.r > m) {
    const int lmax = std::min(m - 1, s.r - m - 1);
    for (int l = 0; l <= lmax; ++l, ++step) {
      const std::size_t prow = static_cast<std::size_t>(s.r - m - l - 1);
      const std::size_t pcol = static_cast<std::size_t>(m + l);
      if (is_zero(x(prow, pcol))) throw PivotError(step, m + l + 1);
      clear_column_above(prow, pcol, x(prow, pcol));
    }
  }

  const int lead = s.r - 2 * m;
  for (int d = lead - 1; d >= 1; --d, ++step) {
    const auto dd = static_cast<std::size_t>(d);
    if (is_zero(z(dd, dd))) throw PivotError(step, d + 1);
    MatQ h = MatQ::identity(r);
    bool any = false;
    for (std::size_t i = 0; i < dd; ++i) {
      if (is_zero(z(i, dd))) continue;
      h(i, dd) = -z(i, dd) / z(dd, dd);
      any = true;
    }
    if (any) apply_left(h);
  }

  const OrbitMask mask = canonical_mask(s);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      if (!mask.X[i][j] && !is_zero(x(i, j)))
        throw std::logic_error("reduce_to_canonical: X escaped its mask");
    for (std::size_t j = 0; j < r; ++j)
      if (!mask.Z[i][j] && !is_zero(z(i, j)))
        throw std::logic_error("reduce_to_canonical: Z escaped its mask");
  }
  if (!u1.is_upper_unitriangular() || !u2inv.is_upper_unitriangular())
    throw std::logic_error("reduce_to_canonical: reducer left the unipotent group");
  MatQ u2 = cols > 0 ? inverse(u2inv) : u2inv;
  if (cols > 0 && !is_symplectic(u2))
    throw std::logic_error("reduce_to_canonical: u2 is not symplectic");
  auto [ax, az] = orbit_act(u1, u2, n.X, n.Z);
  if (!(ax == x) || !(az == z)) throw std::logic_error("reduce_to_canonical: round trip failed");

  return CanonicalOrbitRep{s, case_of(s), x, z, u1, u2, stabilizer_of(s)};
}

bool stabilizer_check(const CanonicalOrbitRep& rep, int samples, Sampler& smp) {
  const GroupShape& s = rep.shape;
  const std::size_t r = s.ur();
  const std::size_t cols = 2 * s.um();
  for (int it = 0; it < samples; ++it) {
    switch (rep.stabilizer.kind) {
      case StabilizerDescriptor::Kind::Sp_block: {
        const auto half = static_cast<std::size_t>(s.m - s.r);
        MatQ inner = random_sp_unipotent(half, smp);
        MatQ u2 = MatQ::identity(cols);
        u2.set_block(r, r, inner);
        auto [ax, az] = orbit_act(MatQ::identity(r), u2, rep.RX, rep.RZ);
        if (!(ax == rep.RX) || !(az == rep.RZ)) return false;
        break;
      }
      case StabilizerDescriptor::Kind::GL_block: {
        const auto k = static_cast<std::size_t>(rep.stabilizer.block_size);
        MatQ u1 = MatQ::identity(r);
        bool nontrivial = false;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) {
            u1(i, j) = smp.rational();
            if (!is_zero(u1(i, j))) nontrivial = true;
          }
        if (!nontrivial) continue;
        auto [ax, az] = orbit_act(u1, MatQ::identity(cols), rep.RX, rep.RZ);
        if (!(ax == rep.RX)) return false;  // must fix the X part exactly
        if (az == rep.RZ) return false;     // and move a generic Z part
        break;
      }
      case StabilizerDescriptor::Kind::trivial: {
        LeviUnipotent u = random_levi_unipotent(s, smp);
        if (u.u1 == MatQ::identity(r) && u.u2 == MatQ::identity(cols)) continue;
        auto [ax, az] = orbit_act(u.u1, u.u2, rep.RX, rep.RZ);
        if (ax == rep.RX && az == rep.RZ) return false;
        break;
      }
    }
  }
  return true;
}

NormalizedRep zm0_normalize(const MatQ& x, const MatQ& z) {
  if (x.rows() == 0 || x.cols() == 0) throw NonGenericError("x_r1");
  const Rat pivot = x(x.rows() - 1, 0);
  if (is_zero(pivot)) throw NonGenericError("x_r1");
  MatQ nx = x;
  MatQ nz = z;
  const Rat inv = Rat(1) / pivot;
  nx *= inv;
  nz *= inv * inv;
  return NormalizedRep{nx, nz, pivot};
}

std::pair<MatQ, MatQ> zm0_act(const Rat& t, const MatQ& x, const MatQ& z) {
  MatQ nx = x;
  MatQ nz = z;
  nx *= t;
  nz *= t * t;
  return {nx, nz};
}

}  // namespace spcell
