#include <gtest/gtest.h>

#include "spcell/dual.hpp"
#include "spcell/mat.hpp"
#include "spcell/rat.hpp"
#include "spcell/rng.hpp"

using namespace spcell;

namespace {

Sampler sampler(int salt = 0) { return Sampler(cell_rng(0xC0FFEE, 0, 0, salt)); }

}  // namespace

TEST(Rat, ParseAndPrintRoundTrip) {
  EXPECT_EQ(rat_str(rat(3, 6)), "1/2");
  EXPECT_EQ(rat_str(rat(-4, 2)), "-2/1");
  EXPECT_EQ(rat_parse("7/3"), rat(7, 3));
  EXPECT_EQ(rat_parse(rat_str(rat(-22, 8))), rat(-22, 8));
  EXPECT_THROW(rat_parse("x/y"), std::invalid_argument);
}

TEST(Rat, PowHandlesNegativeExponents) {
  EXPECT_EQ(rat_pow(rat(2, 3), 3), rat(8, 27));
  EXPECT_EQ(rat_pow(rat(2, 3), -2), rat(9, 4));
  EXPECT_EQ(rat_pow(rat(5), 0), Rat(1));
  EXPECT_THROW(rat_pow(Rat(0), -1), std::domain_error);
}

TEST(DualRatArith, ProductRule) {
  DualRat x(rat(2), rat(1));
  DualRat y(rat(5), rat(0));
  DualRat p = x * x * y;  // f = x^2 y, df/dx = 2xy = 20
  EXPECT_EQ(p.a, rat(20));
  EXPECT_EQ(p.b, rat(20));
  DualRat q = DualRat(rat(1), rat(0)) / x;  // d(1/x)/dx = -1/x^2
  EXPECT_EQ(q.b, rat(-1, 4));
  EXPECT_THROW(x / DualRat(rat(0), rat(3)), std::domain_error);
}

TEST(Det, IdentityAndRankDeficiency) {
  EXPECT_EQ(det(MatQ::identity(3)), Rat(1));
  MatQ m(3, 3);
  auto s = sampler(1);
  for (int j = 0; j < 3; ++j) {
    m(0, j) = s.rational();
    m(1, j) = m(0, j);
    m(2, j) = s.rational();
  }
  EXPECT_EQ(det(m), Rat(0));
  EXPECT_THROW(det(MatQ(2, 3)), std::invalid_argument);
}

TEST(Det, MatchesCofactorOracle) {
  auto s = sampler(2);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = static_cast<std::size_t>(s.integer(1, 5));
    MatQ m = s.matrix(n, n);
    EXPECT_EQ(det(m), det_cofactor(m));
  }
  for (int round = 0; round < 10; ++round) {
    MatQ m(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = Rat(s.integer(-9, 9));
    EXPECT_EQ(det(m), det_cofactor(m));
  }
}

TEST(Det, Multiplicative200Samples) {
  auto s = sampler(3);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = static_cast<std::size_t>(s.integer(1, 4));
    MatQ a = s.matrix(n, n);
    MatQ b = s.matrix(n, n);
    EXPECT_EQ(det(a * b), det(a) * det(b));
  }
}

TEST(Det, DualNumberEntries) {
  // det over dual numbers tracks the derivative of det along a perturbation.
  auto s = sampler(4);
  for (int round = 0; round < 20; ++round) {
    MatQ a = s.matrix(3, 3);
    MatQ dir = s.matrix(3, 3);
    MatD ad(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) ad(i, j) = DualRat(a(i, j), dir(i, j));
    DualRat d = det(ad);
    EXPECT_EQ(d.a, det(a));
    // Derivative oracle: tr(adj(A) * dir).
    MatQ adj = adjugate(a);
    MatQ prod = adj * dir;
    Rat tr(0);
    for (std::size_t i = 0; i < 3; ++i) tr += prod(i, i);
    EXPECT_EQ(d.b, tr);
  }
}

TEST(Inverse, DiagonalAndMultiplyBack) {
  MatQ d(2, 2);
  d(0, 0) = rat(2);
  d(1, 1) = rat(3);
  MatQ di = inverse(d);
  EXPECT_EQ(di(0, 0), rat(1, 2));
  EXPECT_EQ(di(1, 1), rat(1, 3));
  auto s = sampler(5);
  for (int round = 0; round < 30; ++round) {
    MatQ m = s.matrix(4, 4);
    if (is_zero(det(m))) continue;
    EXPECT_EQ(m * inverse(m), MatQ::identity(4));
  }
  MatQ sing(2, 2);
  sing(0, 0) = rat(1);
  sing(1, 1) = rat(0);
  EXPECT_THROW(inverse(sing), SingularMatrixError);
}

TEST(Adjugate, MultiplyBackIncludingSingular) {
  EXPECT_EQ(adjugate(MatQ::identity(4)), MatQ::identity(4));
  auto s = sampler(6);
  for (int round = 0; round < 30; ++round) {
    MatQ m = s.matrix(4, 4);
    MatQ lhs = adjugate(m) * m;
    MatQ want = MatQ::identity(4);
    want *= det(m);
    EXPECT_EQ(lhs, want);
  }
  // Rank-deficient case: adjugate * M = 0.
  MatQ m(3, 3);
  for (int j = 0; j < 3; ++j) {
    m(0, j) = Rat(j + 1);
    m(1, j) = Rat(2 * (j + 1));
    m(2, j) = Rat(j * j);
  }
  EXPECT_EQ(det(m), Rat(0));
  EXPECT_TRUE((adjugate(m) * m).is_zero());
}

TEST(UnitriangularInverse, DivisionFree) {
  auto s = sampler(7);
  MatQ u = s.upper_unitriangular(5);
  EXPECT_EQ(u * unitriangular_inverse(u), MatQ::identity(5));
  MatD ud(3, 3);
  for (std::size_t i = 0; i < 3; ++i) ud(i, i) = DualRat(rat(1), rat(0));
  ud(0, 1) = DualRat(rat(2), rat(1));
  ud(0, 2) = DualRat(rat(-1), rat(0));
  ud(1, 2) = DualRat(rat(3), rat(2));
  EXPECT_EQ(ud * unitriangular_inverse(ud), MatD::identity(3));
}

TEST(StructuredMinor, TwoByTwoNesting) {
  // Y = [[a, b], [c, d]] with the lower-left nesting: Y_1 is the 1x1 block c.
  MatQ y(2, 2);
  y(0, 0) = rat(11);  // a
  y(0, 1) = rat(13);  // b
  y(1, 0) = rat(17);  // c
  y(1, 1) = rat(19);  // d
  EXPECT_EQ(structured_minor(MinorKind::lower_nested, y, 1), rat(17));
  EXPECT_EQ(structured_minor(MinorKind::lower_nested, y, 0), Rat(1));
  EXPECT_EQ(structured_minor(MinorKind::upper_nested, y, 0), Rat(1));
  EXPECT_EQ(structured_minor(MinorKind::upper_nested, y, 1), rat(13));
  EXPECT_EQ(structured_minor(MinorKind::lower_nested, y, 2), det(y));
  EXPECT_THROW(structured_minor(MinorKind::lower_nested, y, 3), std::out_of_range);
}

TEST(StructuredMinor, CrossFamiliesMatchDirectExtraction) {
  auto s = sampler(8);
  const std::size_t r = 3;
  MatQ y = s.matrix(r, r);
  // Y_{i,j}: rows {r-j+1..r} \ {r-i+1}, cols {1..j-1}, 1-based.
  for (std::size_t j = 1; j <= r; ++j)
    for (std::size_t i = 1; i <= j; ++i) {
      std::vector<std::size_t> ri, ci;
      for (std::size_t q = r - j + 1; q <= r; ++q)
        if (q != r - i + 1) ri.push_back(q - 1);
      for (std::size_t q = 1; q + 1 <= j; ++q) ci.push_back(q - 1);
      EXPECT_EQ(structured_minor(MinorKind::cross, y, i, j), det(y.submatrix(ri, ci)));
    }
  // Y'_{ij}: rows {i+1..r}, cols {1..r-i+1} \ {r-j+1}.
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i; j <= r; ++j) {
      std::vector<std::size_t> ri, ci;
      for (std::size_t q = i + 1; q <= r; ++q) ri.push_back(q - 1);
      for (std::size_t q = 1; q <= r - i + 1; ++q)
        if (q != r - j + 1) ci.push_back(q - 1);
      EXPECT_EQ(structured_minor(MinorKind::cross_prime, y, i, j), det(y.submatrix(ri, ci)));
    }
  // Degenerate identifications used by the unipotent entry formulas.
  for (std::size_t j = 1; j <= r; ++j)
    EXPECT_EQ(structured_minor(MinorKind::cross, y, j, j),
              structured_minor(MinorKind::lower_nested, y, j - 1));
  for (std::size_t i = 1; i <= r; ++i)
    EXPECT_EQ(structured_minor(MinorKind::cross_prime, y, i, i),
              structured_minor(MinorKind::lower_nested, y, r - i));
}

TEST(Jacobian, TrivialExamples) {
  auto sq = [](const std::vector<DualRat>& v) {
    return std::vector<DualRat>{v[0] * v[0]};
  };
  MatQ j1 = jacobian_exact(sq, {rat(3)});
  EXPECT_EQ(j1(0, 0), rat(6));

  auto bil = [](const std::vector<DualRat>& v) {
    return std::vector<DualRat>{v[0] * v[1], v[0] + v[1]};
  };
  MatQ j2 = jacobian_exact(bil, {rat(2), rat(5)});
  EXPECT_EQ(j2(0, 0), rat(5));
  EXPECT_EQ(j2(0, 1), rat(2));
  EXPECT_EQ(j2(1, 0), rat(1));
  EXPECT_EQ(j2(1, 1), rat(1));
}

TEST(Jacobian, ChainRule) {
  // g: (x,y) -> (x^2 + y, x y); f: (u,v) -> (u v, u - v, v^3)
  auto g = [](const std::vector<DualRat>& v) {
    return std::vector<DualRat>{v[0] * v[0] + v[1], v[0] * v[1]};
  };
  auto f = [](const std::vector<DualRat>& v) {
    return std::vector<DualRat>{v[0] * v[1], v[0] - v[1], v[1] * v[1] * v[1]};
  };
  auto fg = [&](const std::vector<DualRat>& v) { return f(g(v)); };
  auto s = sampler(9);
  for (int round = 0; round < 25; ++round) {
    std::vector<Rat> pt{s.rational(), s.rational()};
    MatQ jg = jacobian_exact(g, pt);
    std::vector<Rat> mid;
    {
      std::vector<DualRat> vd(pt.begin(), pt.end());
      for (const DualRat& d : g(vd)) mid.push_back(d.a);
    }
    MatQ jf = jacobian_exact(f, mid);
    MatQ jfg = jacobian_exact(fg, pt);
    EXPECT_EQ(jfg, jf * jg);
  }
}

TEST(Jacobian, HandExpandedActionOracle) {
  // 2x2 instance of a conjugation-style action map: (u, x) -> entries of
  // [[1, u],[0, 1]] * [[x, 1],[1, 0]]; derivative in u is [[1,0],[0,0]]-row
  // pattern, derivative in x is the unit at the (0,0) output.
  auto act = [](const std::vector<DualRat>& v) {
    const DualRat& u = v[0];
    const DualRat& x = v[1];
    return std::vector<DualRat>{x + u, DualRat(1), DualRat(1), DualRat(0)};
  };
  MatQ j = jacobian_exact(act, {rat(7), rat(4)});
  EXPECT_EQ(j(0, 0), Rat(1));
  EXPECT_EQ(j(0, 1), Rat(1));
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(j(i, 0), Rat(0));
    EXPECT_EQ(j(i, 1), Rat(0));
  }
}
