#include "spcell/orbit.hpp"

#include <gtest/gtest.h>

#include <optional>

#include "spcell/errors.hpp"
#include "spcell/forms.hpp"
#include "spcell/rng.hpp"

namespace spcell {
namespace {

Sampler sampler(int r, int m, int salt) { return Sampler(cell_rng(0x0B1731, r, m, salt)); }

std::vector<GroupShape> shapes_up_to(int nmax, int mmin = 0) {
  std::vector<GroupShape> out;
  for (int r = 1; r <= nmax; ++r)
    for (int m = mmin; r + m <= nmax; ++m) out.emplace_back(r, m);
  return out;
}

NilpotentPair random_pair(const GroupShape& s, Sampler& smp) {
  return make_n(s, smp.matrix(s.ur(), 2 * s.um()), smp.symmetric_matrix(s.ur()));
}

CanonicalOrbitRep reduce_generic(const GroupShape& s, Sampler& smp) {
  for (int tries = 0; tries < 100; ++tries) {
    try {
      return reduce_to_canonical(random_pair(s, smp));
    } catch (const PivotError&) {
    }
  }
  throw std::runtime_error("no generic sample found");
}

TEST(OrbitDims, KnownValues) {
  using P = std::pair<long, long>;
  EXPECT_EQ(orbit_dims(GroupShape(2, 3)), P(3, 3));
  EXPECT_EQ(orbit_dims(GroupShape(3, 2)), P(5, 6));
  EXPECT_EQ(orbit_dims(GroupShape(5, 2)), P(6, 15));
  EXPECT_EQ(orbit_dims(GroupShape(1, 1)), P(1, 1));
  EXPECT_EQ(orbit_dims(GroupShape(2, 1)), P(2, 3));
  EXPECT_EQ(orbit_dims(GroupShape(4, 3)), P(9, 10));
  EXPECT_EQ(orbit_dims(GroupShape(5, 3)), P(11, 15));
  EXPECT_EQ(orbit_dims(GroupShape(3, 0)), P(0, 3));
}

TEST(OrbitDims, ClosedForms) {
  for (int r = 1; r <= 8; ++r)
    for (int m = 0; r + m <= 8; ++m) {
      GroupShape s(r, m);
      auto [dx, dz] = orbit_dims(s);
      switch (case_of(s)) {
        case CaseTag::R_LE_M:
          EXPECT_EQ(dx, r * (r + 1) / 2);
          break;
        case CaseTag::M_LT_R_LT_2M:
          EXPECT_EQ(dx, 2 * r * m - r * (r - 1) / 2 - m * m);
          break;
        case CaseTag::R_GE_2M:
          EXPECT_EQ(dx, m * (m + 1));
          break;
      }
      if (r < 2 * m)
        EXPECT_EQ(dz, r * (r + 1) / 2);
      else
        EXPECT_EQ(dz, (2 * m + 1) * (r - m));
    }
}

TEST(OrbitDims, CaseBoundaries) {
  EXPECT_EQ(case_of(GroupShape(3, 3)), CaseTag::R_LE_M);
  EXPECT_EQ(case_of(GroupShape(4, 2)), CaseTag::R_GE_2M);
  EXPECT_EQ(case_of(GroupShape(3, 2)), CaseTag::M_LT_R_LT_2M);
  EXPECT_EQ(case_of(GroupShape(2, 0)), CaseTag::R_GE_2M);
}

// Dimension bookkeeping: free coordinates plus the acting group minus its
// generic stabilizer account for the whole radical coordinate space.
TEST(OrbitDims, ActionBookkeeping) {
  for (int r = 1; r <= 8; ++r)
    for (int m = 0; r + m <= 8; ++m) {
      GroupShape s(r, m);
      auto [dx, dz] = orbit_dims(s);
      long dim_um = static_cast<long>(r) * (r - 1) / 2 + static_cast<long>(m) * m;
      long dim_stab = (r < m) ? static_cast<long>(m - r) * (m - r) : 0;
      long dim_n = 2L * r * m + static_cast<long>(r) * (r + 1) / 2;
      EXPECT_EQ(dx + dz + dim_um - dim_stab, dim_n) << r << " " << m;
    }
}

TEST(Mask, RankOneRow) {
  OrbitMask mask = canonical_mask(GroupShape(1, 3));
  EXPECT_TRUE(mask.X[0][0]);
  for (std::size_t j = 1; j < 6; ++j) EXPECT_FALSE(mask.X[0][j]);
  EXPECT_TRUE(mask.Z[0][0]);
}

TEST(Mask, LeadingZBlockDiagonal) {
  OrbitMask mask = canonical_mask(GroupShape(6, 2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(mask.Z[i][j], i == j);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 2; j < 6; ++j) EXPECT_TRUE(mask.Z[i][j]);
}

TEST(Reduce, RankOneExample) {
  GroupShape s(1, 2);
  MatQ x(1, 4);
  x(0, 0) = rat(3, 2);
  x(0, 1) = Rat(7);
  x(0, 2) = rat(-1, 5);
  x(0, 3) = Rat(2);
  MatQ z(1, 1);
  z(0, 0) = rat(4, 9);
  CanonicalOrbitRep rep = reduce_to_canonical(make_n(s, x, z));
  EXPECT_EQ(rep.RX(0, 0), rat(3, 2));
  for (std::size_t j = 1; j < 4; ++j) EXPECT_TRUE(is_zero(rep.RX(0, j)));
  EXPECT_EQ(rep.RZ, z);
  EXPECT_EQ(rep.u1, MatQ::identity(1));
}

TEST(Reduce, CanonicalInputIsFixed) {
  for (const GroupShape& s : shapes_up_to(7)) {
    Sampler smp = sampler(s.r, s.m, 1);
    OrbitMask mask = canonical_mask(s);
    MatQ x(s.ur(), 2 * s.um());
    for (std::size_t i = 0; i < s.ur(); ++i)
      for (std::size_t j = 0; j < 2 * s.um(); ++j)
        if (mask.X[i][j]) x(i, j) = smp.nonzero_rational();
    MatQ z(s.ur(), s.ur());
    for (std::size_t i = 0; i < s.ur(); ++i)
      for (std::size_t j = i; j < s.ur(); ++j)
        if (mask.Z[i][j]) {
          z(i, j) = smp.nonzero_rational();
          z(j, i) = z(i, j);
        }
    CanonicalOrbitRep rep = reduce_to_canonical(make_n(s, x, z));
    EXPECT_EQ(rep.RX, x);
    EXPECT_EQ(rep.RZ, z);
    EXPECT_EQ(rep.u1, MatQ::identity(s.ur()));
    EXPECT_EQ(rep.u2, MatQ::identity(2 * s.um()));
  }
}

TEST(Reduce, OrbitInvariance) {
  for (const GroupShape& s : shapes_up_to(6)) {
    Sampler smp = sampler(s.r, s.m, 2);
    for (int it = 0; it < 10; ++it) {
      NilpotentPair n = random_pair(s, smp);
      std::optional<CanonicalOrbitRep> rep;
      try {
        rep = reduce_to_canonical(n);
      } catch (const PivotError&) {
        continue;
      }
      LeviUnipotent u = random_levi_unipotent(s, smp);
      auto [ax, az] = orbit_act(u.u1, u.u2, n.X, n.Z);
      CanonicalOrbitRep rep2 = reduce_to_canonical(make_n(s, ax, az));
      EXPECT_EQ(rep->RX, rep2.RX);
      EXPECT_EQ(rep->RZ, rep2.RZ);
    }
  }
}

TEST(Reduce, ReducerReachesCanonicalForm) {
  for (const GroupShape& s : shapes_up_to(6)) {
    Sampler smp = sampler(s.r, s.m, 3);
    for (int it = 0; it < 10; ++it) {
      NilpotentPair n = random_pair(s, smp);
      std::optional<CanonicalOrbitRep> rep;
      try {
        rep = reduce_to_canonical(n);
      } catch (const PivotError&) {
        continue;
      }
      auto [ax, az] = orbit_act(rep->u1, rep->u2, n.X, n.Z);
      EXPECT_EQ(ax, rep->RX);
      EXPECT_EQ(az, rep->RZ);
      EXPECT_TRUE(rep->u1.is_upper_unitriangular());
      if (s.m > 0) EXPECT_TRUE(is_symplectic(rep->u2));
    }
  }
}

TEST(Reduce, VanishingPivotIsReported) {
  GroupShape s(1, 1);
  MatQ x(1, 2);
  x(0, 1) = Rat(4);
  try {
    (void)reduce_to_canonical(make_n(s, x, MatQ(1, 1)));
    FAIL() << "expected PivotError";
  } catch (const PivotError& e) {
    EXPECT_EQ(e.step, 0);
    EXPECT_EQ(e.index, 1);
  }

  GroupShape s2(3, 0);
  MatQ z(3, 3);
  z(0, 0) = Rat(1);
  z(0, 2) = Rat(1);
  z(2, 0) = Rat(1);
  z(1, 1) = Rat(1);
  z(1, 2) = Rat(1);
  z(2, 1) = Rat(1);
  try {
    (void)reduce_to_canonical(make_n(s2, MatQ(3, 0), z));
    FAIL() << "expected PivotError";
  } catch (const PivotError& e) {
    EXPECT_EQ(e.step, 0);
    EXPECT_EQ(e.index, 3);
  }
}

TEST(Stabilizer, Descriptors) {
  EXPECT_EQ(stabilizer_of(GroupShape(1, 2)).kind, StabilizerDescriptor::Kind::Sp_block);
  EXPECT_EQ(stabilizer_of(GroupShape(1, 2)).block_size, 2);
  EXPECT_EQ(stabilizer_of(GroupShape(2, 2)).kind, StabilizerDescriptor::Kind::trivial);
  EXPECT_EQ(stabilizer_of(GroupShape(4, 2)).kind, StabilizerDescriptor::Kind::trivial);
  EXPECT_EQ(stabilizer_of(GroupShape(5, 2)).kind, StabilizerDescriptor::Kind::GL_block);
  EXPECT_EQ(stabilizer_of(GroupShape(5, 2)).block_size, 1);
  EXPECT_EQ(stabilizer_of(GroupShape(3, 0)).kind, StabilizerDescriptor::Kind::GL_block);
  EXPECT_EQ(stabilizer_of(GroupShape(3, 0)).block_size, 3);
}

TEST(Stabilizer, BlocksBehaveAsDescribed) {
  for (const GroupShape& s :
       {GroupShape(1, 2), GroupShape(2, 3), GroupShape(2, 2), GroupShape(3, 2), GroupShape(4, 2),
        GroupShape(5, 2), GroupShape(3, 0), GroupShape(2, 1)}) {
    Sampler smp = sampler(s.r, s.m, 4);
    CanonicalOrbitRep rep = reduce_generic(s, smp);
    EXPECT_TRUE(stabilizer_check(rep, 20, smp)) << "shape (" << s.r << ", " << s.m << ")";
  }
}

TEST(Zm0, NormalizeRoundTrip) {
  for (const GroupShape& s : shapes_up_to(6, 1)) {
    Sampler smp = sampler(s.r, s.m, 5);
    for (int it = 0; it < 5; ++it) {
      MatQ x = smp.matrix(s.ur(), 2 * s.um());
      x(s.ur() - 1, 0) = smp.nonzero_rational();
      MatQ z = smp.symmetric_matrix(s.ur());
      NormalizedRep nr = zm0_normalize(x, z);
      EXPECT_EQ(nr.X(s.ur() - 1, 0), Rat(1));
      auto [bx, bz] = zm0_act(nr.scale, nr.X, nr.Z);
      EXPECT_EQ(bx, x);
      EXPECT_EQ(bz, z);
    }
  }
}

TEST(Zm0, RejectsVanishingCorner) {
  MatQ x(2, 2);
  x(0, 0) = Rat(1);
  try {
    (void)zm0_normalize(x, MatQ(2, 2));
    FAIL() << "expected NonGenericError";
  } catch (const NonGenericError& e) {
    EXPECT_EQ(e.site, "x_r1");
  }
}

// The scaling action is conjugation by the alpha-covee cocharacter.
TEST(Zm0, MatchesCocharacterConjugation) {
  for (const GroupShape& s : shapes_up_to(5, 1)) {
    Sampler smp = sampler(s.r, s.m, 6);
    NilpotentPair n = random_pair(s, smp);
    Rat t = smp.nonzero_rational();
    auto [sx, sz] = zm0_act(t, n.X, n.Z);
    MatQ a = alpha_covee(s, t);
    EXPECT_EQ(a * embed_n(n) * inverse(a), embed_n(make_n(s, sx, sz)));
  }
}

}  // namespace
}  // namespace spcell
