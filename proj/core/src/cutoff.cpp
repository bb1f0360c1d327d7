#include "spcell/cutoff.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "spcell/errors.hpp"

namespace spcell {

namespace {

void require_prime(long p) {
  if (p < 2) throw std::invalid_argument("padic: p must be a prime >= 2");
  mpz_class pz(p);
  if (mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("padic: composite p rejected");
}

long bound_exponent(const PadicContext& ctx, std::size_t rows, std::size_t cols, std::size_t i,
                    std::size_t j) {
  return static_cast<long>((rows - 1 - i) + (cols - 1 - j) + 1) * ctx.kappa;
}

MatQ scaled(const MatQ& a, const Rat& c) {
  MatQ out = a;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= c;
  return out;
}

/// Generic p-adic point of N with valuations in [vlo, vhi]; resamples past
/// vanishing det(Y).
NilpotentPair sample_padic_n(const GroupShape& s, long p, long vlo, long vhi, Sampler& smp) {
  for (int tries = 0; tries < 200; ++tries) {
    MatQ x = smp.padic_matrix(s.ur(), 2 * s.um(), p, vlo, vhi);
    MatQ z(s.ur(), s.ur());
    for (std::size_t i = 0; i < s.ur(); ++i)
      for (std::size_t j = i; j < s.ur(); ++j) {
        z(i, j) = smp.padic(p, vlo, vhi);
        z(j, i) = z(i, j);
      }
    NilpotentPair n = make_n(s, x, z);
    if (!is_zero(det(n.Y()))) return n;
  }
  throw NonGenericError("cutoff_sampling");
}

/// Root vector of the e-basis attached to a strictly-upper matrix position of
/// a Levi block, 1-based block indices.
RootVec gl_position_root(const GroupShape& s, std::size_t i, std::size_t j) {
  RootVec v(s.un(), 0);
  v[i - 1] = 1;
  v[j - 1] -= 1;
  return v;
}

RootVec sp_position_root(const GroupShape& s, std::size_t i, std::size_t j) {
  const std::size_t m = s.um();
  RootVec v(s.un(), 0);
  auto add = [&](std::size_t k, int c) {
    if (k <= m)
      v[s.ur() + k - 1] += c;
    else
      v[s.ur() + 2 * m - k] -= c;
  };
  add(i, 1);
  add(j, -1);
  return v;
}

/// Signed permutation of W(M, A) carried by the pivot positions of the two
/// Levi-block eliminations.
SignedPerm fold_cell_perm(const GroupShape& s, const std::vector<std::size_t>& gl_perm,
                          const std::vector<std::size_t>& sp_perm) {
  std::vector<int> im(s.un());
  for (int i = 0; i < s.r; ++i) im[static_cast<std::size_t>(i)] = static_cast<int>(gl_perm[i]) + 1;
  for (int j = 0; j < s.m; ++j) {
    const int q = static_cast<int>(sp_perm[static_cast<std::size_t>(j)]);
    im[static_cast<std::size_t>(s.r + j)] = (q < s.m) ? (s.r + q + 1) : -(s.r + 2 * s.m - q);
  }
  return SignedPerm(im);
}

bool upper_unitriangular(const MatQ& u) {
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Rat want = (i == j) ? Rat(1) : Rat(0);
      if (u(i, j) != want) return false;
    }
  return true;
}

}  // namespace

PadicContext::PadicContext(long p_, long kappa_, long d_, long g_)
    : p(p_), kappa(kappa_), d(d_), g(g_) {
  require_prime(p);
  if (kappa < 0) throw std::invalid_argument("PadicContext: kappa must be >= 0");
}

PadicAbs padic_abs(const Rat& x, long p) {
  require_prime(p);
  if (is_zero(x)) return {true, 0};
  const mpz_class pz(p);
  mpz_class rest;
  const long vn = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), x.get_num().get_mpz_t(), pz.get_mpz_t()));
  const long vd = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), x.get_den().get_mpz_t(), pz.get_mpz_t()));
  return {false, vd - vn};
}

bool abs_leq(const Rat& x, long p, long e) {
  const PadicAbs a = padic_abs(x, p);
  return a.zero || a.exponent <= e;
}

bool phi_kappa(const PadicContext& ctx, const MatQ& x) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!abs_leq(x(i, j), ctx.p, bound_exponent(ctx, x.rows(), x.cols(), i, j))) return false;
  return true;
}

bool nbar_membership(const PadicContext& ctx, const MatQ& x, const MatQ& y) {
  const Rat sx = rat_pow(Rat(ctx.p), -ctx.shift());
  const Rat sy = rat_pow(Rat(ctx.p), -2 * ctx.shift());
  return phi_kappa(ctx, scaled(x, sx)) && phi_kappa(ctx, scaled(y, sy));
}

bool nbar_membership(const PadicContext& ctx, const NilpotentPair& n) {
  return nbar_membership(ctx, n.X, n.Y());
}

LeviElement theta_M(const LeviElement& m) {
  return {m.shape, theta_r(m.m1), m.m2};
}

MatQ theta_M_matrix(const GroupShape& s, const MatQ& g) {
  return w0_inverse(s) * g * w0_matrix(s);
}

bool phi_levi(const PadicContext& ctx, const NilpotentPair& n) {
  const Rat lambda = alpha_r_coordinate(n);
  return phi_kappa(ctx, scaled(n.X, lambda)) && phi_kappa(ctx, scaled(n.Y(), lambda * lambda));
}

bool twisted_conjugation_identity(const GroupShape& s, const Rat& t, const LeviUnipotent& u,
                                  const NilpotentPair& n) {
  if (is_zero(t)) throw std::invalid_argument("twisted_conjugation_identity: t must be nonzero");
  const BruhatFactors f = decompose_w0(n);
  const MatQ mfull = levi_embed(s, f.m1, f.m2);
  const MatQ ufull = levi_embed(s, u.u1, u.u2);
  const MatQ z = alpha_covee(s, t);
  const MatQ lhs = theta_M_matrix(s, z * inverse(ufull)) * mfull * ufull * inverse(z);

  const MatQ u1i = unitriangular_inverse(u.u1);
  const MatQ xt = scaled(u1i * n.X * u.u2, t);
  const MatQ yt = scaled(u1i * n.Y() * theta_r(u.u1), t * t);
  const BruhatFactors ft = decompose_w0(make_n_from_y(s, xt, yt));
  return lhs == levi_embed(s, ft.m1, ft.m2);
}

StabilizerAgreement stabilizer_agreement(const GroupShape& s, const LeviUnipotent& u,
                                         const NilpotentPair& n) {
  const MatQ ufull = levi_embed(s, u.u1, u.u2);
  const MatQ ufull_inv = unitriangular_inverse(ufull);
  const MatQ namb = embed_n(n);
  const BruhatFactors f = decompose_w0(n);
  const MatQ mfull = levi_embed(s, f.m1, f.m2);
  return {ufull_inv * namb * ufull == namb,
          theta_M_matrix(s, ufull_inv) * mfull * ufull == mfull};
}

bool u_kappa_member(const PadicContext& ctx, const MatQ& u) {
  if (u.rows() != u.cols()) return false;
  if (!upper_unitriangular(u)) return false;
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = i + 1; j < u.cols(); ++j) {
      const long e = -static_cast<long>(j - i) * ctx.kappa;
      if (!abs_leq(u(i, j), ctx.p, e)) return false;
    }
  return true;
}

MatQ sample_u1_kappa(const PadicContext& ctx, std::size_t r, Sampler& smp) {
  MatQ u = MatQ::identity(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      if (smp.integer(0, 3) == 0) continue;
      const long v = static_cast<long>(j - i) * ctx.kappa;
      u(i, j) = smp.padic(ctx.p, v, v + 2);
    }
  return u;
}

MatQ sample_u2_kappa(const PadicContext& ctx, std::size_t m, Sampler& smp) {
  MatQ u = MatQ::identity(2 * m);
  for (const SpRoot& rt : sp_positive_roots(m)) {
    if (smp.integer(0, 3) == 0) continue;
    std::size_t col = 0, row = 0;
    switch (rt.kind) {
      case SpRoot::Kind::short_minus:
        row = rt.a, col = rt.b;
        break;
      case SpRoot::Kind::short_plus:
        row = rt.a, col = 2 * m + 1 - rt.b;
        break;
      case SpRoot::Kind::long_root:
        row = rt.a, col = 2 * m + 1 - rt.a;
        break;
    }
    const long v = static_cast<long>(col - row) * ctx.kappa;
    u = u * sp_root_elem(m, rt, smp.padic(ctx.p, v, v + 2));
  }
  return u;
}

LeviUnipotent sample_u0_kappa(const PadicContext& ctx, const GroupShape& s, Sampler& smp) {
  return {sample_u1_kappa(ctx, s.ur(), smp), sample_u2_kappa(ctx, s.um(), smp)};
}

bool phi_invariance_check(const PadicContext& ctx, const GroupShape& s, int trials, Sampler& smp) {
  if (s.m < 1) throw std::invalid_argument("phi_invariance_check: needs m >= 1");
  const long window = 2 * ctx.kappa + 2;
  for (int it = 0; it < trials; ++it) {
    const NilpotentPair n = sample_padic_n(s, ctx.p, -window, window, smp);
    const LeviUnipotent u = sample_u0_kappa(ctx, s, smp);
    const MatQ u1i = unitriangular_inverse(u.u1);
    const NilpotentPair nt =
        make_n_from_y(s, u1i * n.X * u.u2, u1i * n.Y() * theta_r(u.u1));
    if (phi_levi(ctx, n) != phi_levi(ctx, nt)) return false;
  }
  return true;
}

bool phi_bound_direction_control(const PadicContext& ctx, const GroupShape& s, int tries,
                                 Sampler& smp) {
  if (s.m < 1) throw std::invalid_argument("phi_bound_direction_control: needs m >= 1");
  if (ctx.kappa == 0) return false;
  const std::vector<SpRoot> roots = sp_positive_roots(s.um());
  for (int it = 0; it < tries; ++it) {
    NilpotentPair n = sample_padic_n(s, ctx.p, -ctx.kappa - 1, ctx.kappa + 1, smp);
    const SpRoot& rt = roots[static_cast<std::size_t>(
        smp.integer(0, static_cast<long>(roots.size()) - 1))];
    std::size_t col = 0, row = 0;
    switch (rt.kind) {
      case SpRoot::Kind::short_minus:
        row = rt.a, col = rt.b;
        break;
      case SpRoot::Kind::short_plus:
        row = rt.a, col = 2 * s.um() + 1 - rt.b;
        break;
      case SpRoot::Kind::long_root:
        row = rt.a, col = 2 * s.um() + 1 - rt.a;
        break;
    }
    const long v = -static_cast<long>(col - row) * ctx.kappa;
    const MatQ u2 = sp_root_elem(s.um(), rt, smp.padic(ctx.p, v, v));
    const NilpotentPair nt = make_n_from_y(s, n.X * u2, n.Y());
    if (phi_levi(ctx, n) != phi_levi(ctx, nt)) return true;
  }
  return false;
}

CellInclusionReport stabilizer_cell_inclusion_check(const GroupShape& s, int trials,
                                                    Sampler& smp) {
  CellInclusionReport report{false, false, 0, true};
  CanonicalOrbitRep rep = [&] {
    for (int tries = 0; tries < 100; ++tries) {
      try {
        NilpotentPair seed_pt{s, smp.matrix(s.ur(), 2 * s.um()), smp.symmetric_matrix(s.ur())};
        CanonicalOrbitRep out = reduce_to_canonical(seed_pt);
        if (!is_zero(det(make_n(s, out.RX, out.RZ).Y()))) return out;
      } catch (const PivotError&) {
      }
    }
    throw NonGenericError("cell_inclusion_sampling");
  }();
  report.vacuous = rep.stabilizer.kind != StabilizerDescriptor::Kind::Sp_block;

  const NilpotentPair nc = make_n(s, rep.RX, rep.RZ);
  const BruhatFactors f = decompose_w0(nc);
  const GlBruhatFactors gl = gl_bruhat(f.m1);
  const SpBruhatFactors sp = sp_bruhat(f.m2);
  const SignedPerm w = fold_cell_perm(s, gl.perm, sp.perm);
  report.in_support = in_bessel_support(s, w);

  if (report.vacuous) return report;

  std::set<RootVec> kept;
  for (const RootVec& beta : u_partition(s, w).plus) kept.insert(beta);
  const auto allowed = [&](const MatQ& v, bool sp_side) {
    if (!upper_unitriangular(v)) return false;
    for (std::size_t i = 0; i < v.rows(); ++i)
      for (std::size_t j = i + 1; j < v.cols(); ++j) {
        if (is_zero(v(i, j))) continue;
        const RootVec root = sp_side ? sp_position_root(s, i + 1, j + 1)
                                     : gl_position_root(s, i + 1, j + 1);
        if (kept.find(root) == kept.end()) return false;
      }
    return true;
  };

  const auto half = static_cast<std::size_t>(s.m - s.r);
  const MatQ v2_inv = unitriangular_inverse(sp.v2);
  for (int it = 0; it < trials; ++it) {
    MatQ inner = random_sp_unipotent(half, smp);
    MatQ ustab = MatQ::identity(2 * s.um());
    ustab.set_block(s.ur(), s.ur(), inner);
    const auto [ax, az] = orbit_act(MatQ::identity(s.ur()), ustab, rep.RX, rep.RZ);
    if (!(ax == rep.RX) || !(az == rep.RZ)) {
      report.included = false;
      return report;
    }
    ++report.checked;
    if (!allowed(sp.v2 * ustab * v2_inv, true)) {
      report.included = false;
      return report;
    }
  }
  return report;
}

}  // namespace spcell
