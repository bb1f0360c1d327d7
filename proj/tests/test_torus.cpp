#include "spcell/torus.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "spcell/bruhat.hpp"
#include "spcell/errors.hpp"
#include "spcell/forms.hpp"
#include "spcell/rng.hpp"

namespace spcell {
namespace {

Sampler sampler(int r, int m, int salt) { return Sampler(cell_rng(0x70D05, r, m, salt)); }

std::vector<GroupShape> shapes_up_to(int nmax, int mmin = 0) {
  std::vector<GroupShape> out;
  for (int r = 1; r <= nmax; ++r)
    for (int m = mmin; r + m <= nmax; ++m) out.emplace_back(r, m);
  return out;
}

NilpotentPair random_toric_point(const GroupShape& s, Sampler& smp) {
  const std::size_t r = s.ur(), k = std::min(s.ur(), s.um());
  for (int tries = 0; tries < 200; ++tries) {
    MatQ x(r, 2 * s.um());
    for (std::size_t j = 0; j < k; ++j) x(r - 1 - j, j) = smp.nonzero_rational();
    MatQ z = smp.symmetric_matrix(r);
    NilpotentPair n = make_n(s, x, z);
    try {
      (void)phi_minor_formula(n);
      return n;
    } catch (const NonGenericError&) {
    }
  }
  throw std::runtime_error("no generic toric point found");
}

std::vector<Rat> symplectic_torus_entries(std::size_t m, Sampler& smp) {
  std::vector<Rat> s2(2 * m, Rat(1));
  for (std::size_t j = 0; j < m; ++j) {
    s2[j] = smp.nonzero_rational();
    s2[2 * m - 1 - j] = Rat(1) / s2[j];
  }
  return s2;
}

// The minor formulas name the same monomial factors that the pivot
// eliminations find, up to a fixed sign on each column; checking the factors
// entrywise against gl_bruhat / sp_bruhat pins both the cell and the values.
void expect_matches_elimination(const NilpotentPair& n) {
  const std::size_t r = n.shape.ur(), m = n.shape.um(), k = std::min(r, m);
  const TorusPair phi = phi_minor_formula(n);
  const auto [u1, u2] = unipotent_entries_formula(n);
  const BruhatFactors f = decompose_w0(n);
  const Rat lead = (r % 2 == 1) ? Rat(1) : Rat(-1);

  const GlBruhatFactors g = gl_bruhat(f.m1);
  ASSERT_EQ(g.t.size(), r);
  std::vector<Rat> pivots(r);
  for (std::size_t i = 0; i < r; ++i) {
    EXPECT_EQ(g.perm[i], r - 1 - i);
    EXPECT_EQ(g.t[i], lead * phi.t1[i]) << "t1 column " << i;
    pivots[i] = lead * phi.t1[i];
  }
  EXPECT_EQ(u1, g.u1);
  EXPECT_EQ(u2, g.u2);
  EXPECT_EQ(u1 * bruhat_monomial(g.perm, pivots) * u2, f.m1);

  if (m == 0) return;
  const SpBruhatFactors sp = sp_bruhat(f.m2);
  for (std::size_t j = 0; j < 2 * m; ++j) {
    const bool flipped = j < k || j >= 2 * m - k;
    EXPECT_EQ(sp.perm[j], flipped ? 2 * m - 1 - j : j);
    Rat expected = phi.t2[j];
    if (j < k) expected = lead * expected;
    if (j >= 2 * m - k) expected = -lead * expected;
    EXPECT_EQ(sp.t[j], expected) << "t2 column " << j;
  }
}

TEST(PhiMinorFormula, RankOneByHand) {
  GroupShape s(1, 1);
  MatQ x(1, 2);
  x(0, 0) = Rat(3);
  MatQ z(1, 1);
  z(0, 0) = Rat(2);
  NilpotentPair n = make_n(s, x, z);
  ASSERT_EQ(n.Y()(0, 0), Rat(2));
  TorusPair phi = phi_minor_formula(n);
  ASSERT_EQ(phi.t1.size(), 1u);
  ASSERT_EQ(phi.t2.size(), 2u);
  EXPECT_EQ(phi.t1[0], rat(1, 2));
  EXPECT_EQ(phi.t2[0], rat(-9, 2));
  EXPECT_EQ(phi.t2[1], rat(-2, 9));
}

TEST(PhiMinorFormula, PairedStructureAndPadding) {
  for (const GroupShape& s : shapes_up_to(6, 1)) {
    Sampler smp = sampler(s.r, s.m, 1);
    const std::size_t m = s.um(), k = std::min(s.ur(), m);
    for (int it = 0; it < 5; ++it) {
      TorusPair phi = phi_minor_formula(random_toric_point(s, smp));
      for (std::size_t j = 0; j < m; ++j)
        EXPECT_EQ(phi.t2[j] * phi.t2[2 * m - 1 - j], Rat(1));
      for (std::size_t j = k; j < 2 * m - k; ++j) EXPECT_EQ(phi.t2[j], Rat(1));
    }
  }
}

TEST(PhiMinorFormula, MatchesEliminationPivots) {
  for (const GroupShape& s : shapes_up_to(5)) {
    Sampler smp = sampler(s.r, s.m, 2);
    for (int it = 0; it < 25; ++it) expect_matches_elimination(random_toric_point(s, smp));
  }
}

TEST(PhiMinorFormula, RejectsOffSliceAndSingularPoints) {
  GroupShape s(2, 1);
  MatQ x(2, 2);
  x(0, 0) = Rat(1);  // row 0 is not a toric slot when r = 2
  x(1, 0) = Rat(2);
  MatQ z = MatQ::identity(2);
  EXPECT_THROW((void)phi_minor_formula(make_n(s, x, z)), std::invalid_argument);

  // Z(r, r) = 0 forces y_{r,1} = 0, so the lower-corner minor chain vanishes.
  GroupShape sg(2, 0);
  MatQ zcorner(2, 2);
  zcorner(0, 0) = Rat(1);
  zcorner(0, 1) = Rat(1);
  zcorner(1, 0) = Rat(1);
  try {
    (void)phi_minor_formula(make_n(sg, MatQ(2, 0), zcorner));
    FAIL() << "expected NonGenericError";
  } catch (const NonGenericError& e) {
    EXPECT_EQ(e.site, "phi_lower_1");
  }

  // Vanishing antidiagonal x entry.
  MatQ x2(1, 2);
  MatQ z2(1, 1);
  z2(0, 0) = Rat(1);
  try {
    (void)phi_minor_formula(make_n(GroupShape(1, 1), x2, z2));
    FAIL() << "expected NonGenericError";
  } catch (const NonGenericError& e) {
    EXPECT_EQ(e.site, "phi_x_1");
  }
}

TEST(UnipotentEntriesFormula, MatchesEliminationOffSlice) {
  for (const GroupShape& s : shapes_up_to(5)) {
    Sampler smp = sampler(s.r, s.m, 3);
    for (int it = 0; it < 10; ++it) {
      NilpotentPair n = make_n(s, smp.matrix(s.ur(), 2 * s.um()), smp.symmetric_matrix(s.ur()));
      std::pair<MatQ, MatQ> uu;
      try {
        uu = unipotent_entries_formula(n);
      } catch (const NonGenericError&) {
        --it;
        continue;
      }
      GlBruhatFactors g = gl_bruhat(decompose_w0(n).m1);
      EXPECT_EQ(uu.first, g.u1);
      EXPECT_EQ(uu.second, g.u2);
    }
  }
}

TEST(UnipotentEntriesFormula, VanishingCornerMinorIsNonGeneric) {
  MatQ z(3, 3);
  z(0, 0) = Rat(1);
  z(1, 1) = Rat(1);
  z(0, 2) = Rat(2);
  z(2, 0) = Rat(2);
  NilpotentPair n = make_n(GroupShape(3, 0), MatQ(3, 0), z);
  ASSERT_EQ(n.Y()(2, 0), Rat(0));
  EXPECT_THROW((void)unipotent_entries_formula(n), NonGenericError);
}

TEST(ToricAct, IdentityAndValidation) {
  GroupShape s(2, 2);
  Sampler smp = sampler(2, 2, 4);
  NilpotentPair n = random_toric_point(s, smp);
  std::vector<Rat> ones1(2, Rat(1)), ones2(4, Rat(1));
  NilpotentPair same = toric_act(ones1, ones2, n);
  EXPECT_EQ(same.X, n.X);
  EXPECT_EQ(same.Z, n.Z);

  std::vector<Rat> bad_pair = {Rat(2), Rat(1), Rat(1), Rat(1)};
  EXPECT_THROW((void)toric_act(ones1, bad_pair, n), std::invalid_argument);
  std::vector<Rat> zero1 = {Rat(0), Rat(1)};
  EXPECT_THROW((void)toric_act(zero1, ones2, n), std::invalid_argument);
  EXPECT_THROW((void)toric_act(ones1, ones1, n), std::invalid_argument);
}

TEST(ToricAct, PhiEquivariance) {
  for (const GroupShape& s : shapes_up_to(5)) {
    Sampler smp = sampler(s.r, s.m, 5);
    for (int it = 0; it < 10; ++it) {
      NilpotentPair n = random_toric_point(s, smp);
      std::vector<Rat> s1(s.ur());
      for (auto& v : s1) v = smp.nonzero_rational();
      std::vector<Rat> s2 = symplectic_torus_entries(s.um(), smp);
      TorusPair base = phi_minor_formula(n);
      TorusPair acted = phi_minor_formula(toric_act(s1, s2, n));
      TorusPair factors = phi_equivariance_factors(s, s1, s2);
      for (std::size_t i = 0; i < s.ur(); ++i) EXPECT_EQ(acted.t1[i], factors.t1[i] * base.t1[i]);
      for (std::size_t j = 0; j < 2 * s.um(); ++j)
        EXPECT_EQ(acted.t2[j], factors.t2[j] * base.t2[j]);
    }
  }
}

TEST(ToricAct, EquivarianceFactorShapes) {
  // r < m: only the first r symplectic slots and their mirrors respond.
  GroupShape s(1, 3);
  std::vector<Rat> s1 = {Rat(3)};
  std::vector<Rat> s2 = {Rat(2), Rat(5), Rat(7), rat(1, 7), rat(1, 5), rat(1, 2)};
  TorusPair f = phi_equivariance_factors(s, s1, s2);
  EXPECT_EQ(f.t1[0], rat(1, 9));
  EXPECT_EQ(f.t2[0], rat(1, 4));
  EXPECT_EQ(f.t2[1], Rat(1));
  EXPECT_EQ(f.t2[2], Rat(1));
  EXPECT_EQ(f.t2[3], Rat(1));
  EXPECT_EQ(f.t2[4], Rat(1));
  EXPECT_EQ(f.t2[5], Rat(4));

  // r >= m: every symplectic slot responds.
  GroupShape s2shape(2, 1);
  std::vector<Rat> w1 = {Rat(2), Rat(3)};
  std::vector<Rat> w2 = {Rat(5), rat(1, 5)};
  TorusPair g = phi_equivariance_factors(s2shape, w1, w2);
  EXPECT_EQ(g.t1[0], rat(1, 4));
  EXPECT_EQ(g.t1[1], rat(1, 9));
  EXPECT_EQ(g.t2[0], rat(1, 25));
  EXPECT_EQ(g.t2[1], Rat(25));
}

TEST(SquareCover, SheetsAcrossShapes) {
  for (const GroupShape& s : shapes_up_to(5, 1)) {
    Sampler smp = sampler(s.r, s.m, 6);
    EXPECT_TRUE(square_cover_check(s, 10, smp)) << "(" << s.r << "," << s.m << ")";
  }
}

TEST(SquareCover, SignFlipFixesPhiButMovesThePoint) {
  GroupShape s(2, 1);
  Sampler smp = sampler(2, 1, 7);
  NilpotentPair n = random_toric_point(s, smp);
  MatQ xflip = n.X;
  xflip(1, 0) = -xflip(1, 0);
  NilpotentPair flipped = make_n(s, xflip, n.Z);
  EXPECT_NE(flipped.X, n.X);
  EXPECT_EQ(phi_minor_formula(flipped), phi_minor_formula(n));

  MatQ xscaled = n.X;
  xscaled(1, 0) = Rat(2) * xscaled(1, 0);
  EXPECT_NE(phi_minor_formula(make_n(s, xscaled, n.Z)), phi_minor_formula(n));

  MatQ zflip = n.Z;
  zflip(0, 0) = -zflip(0, 0);
  EXPECT_NE(phi_minor_formula(make_n(s, n.X, zflip)), phi_minor_formula(n));
}

TEST(StabilityScalars, TrivialScalingIsExact) {
  GroupShape s(2, 1);
  Sampler smp = sampler(2, 1, 8);
  NilpotentPair n = random_toric_point(s, smp);
  StabilityScalarReport rep = stability_scalar_report({2}, {Rat(1)}, n);
  EXPECT_TRUE(rep.derived_ok);
  EXPECT_TRUE(rep.claimed_ok);
  EXPECT_EQ(rep.det_m1.actual, Rat(1));
  EXPECT_EQ(rep.corner_ratio.actual, Rat(1));
}

TEST(StabilityScalars, DerivedLawsHoldExactly) {
  const std::vector<std::vector<long>> partitions = {{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}};
  for (const GroupShape& s : shapes_up_to(4, 0)) {
    Sampler smp = sampler(s.r, s.m, 9);
    for (const auto& blocks : partitions) {
      long total = 0;
      for (long b : blocks) total += b;
      if (total != s.r) continue;
      for (int it = 0; it < 5; ++it) {
        NilpotentPair n = random_toric_point(s, smp);
        std::vector<Rat> sv(blocks.size());
        for (auto& v : sv) v = smp.nonzero_rational();
        StabilityScalarReport rep;
        try {
          rep = stability_scalar_report(blocks, sv, n);
        } catch (const NonGenericError&) {
          --it;
          continue;
        }
        EXPECT_TRUE(rep.derived_ok);
        EXPECT_EQ(rep.det_m1.actual, rep.det_m1.derived);
        EXPECT_EQ(rep.corner_ratio.actual, rep.corner_ratio.derived);
      }
    }
  }
}

TEST(StabilityScalars, BlockSquareClaimFailsOnAScalarExample) {
  // One GL_2 block scaled by 2 at shape (2, 1): det(m1) scales by
  // det(s')^{-2} = 1/16 while the block-square law predicts 4; the corner
  // ratio scales by 1/(s_1 s_k) = 1/4, which the claim does match when the
  // first and last blocks coincide.
  GroupShape s(2, 1);
  Sampler smp = sampler(2, 1, 10);
  NilpotentPair n = random_toric_point(s, smp);
  StabilityScalarReport rep = stability_scalar_report({2}, {Rat(2)}, n);
  EXPECT_EQ(rep.det_m1.actual, rat(1, 16));
  EXPECT_EQ(rep.det_m1.derived, rat(1, 16));
  EXPECT_EQ(rep.det_m1.claimed, Rat(4));
  EXPECT_EQ(rep.corner_ratio.actual, rat(1, 4));
  EXPECT_EQ(rep.corner_ratio.claimed, rat(1, 4));
  EXPECT_TRUE(rep.derived_ok);
  EXPECT_FALSE(rep.claimed_ok);

  Sampler smp2 = sampler(2, 1, 11);
  EXPECT_FALSE(stability_scalar_check(s, {2}, {Rat(2)}, 5, smp2));
  Sampler smp3 = sampler(2, 1, 12);
  EXPECT_TRUE(stability_scalar_check(s, {2}, {Rat(1)}, 5, smp3));
}

TEST(StabilityScalars, InputValidation) {
  GroupShape s(2, 1);
  Sampler smp = sampler(2, 1, 13);
  NilpotentPair n = random_toric_point(s, smp);
  EXPECT_THROW((void)stability_scalar_report({1}, {Rat(2)}, n), std::invalid_argument);
  EXPECT_THROW((void)stability_scalar_report({2}, {Rat(2), Rat(3)}, n), std::invalid_argument);
  EXPECT_THROW((void)stability_scalar_report({2}, {Rat(0)}, n), std::invalid_argument);
}

}  // namespace
}  // namespace spcell
