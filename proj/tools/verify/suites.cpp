#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spcell/bruhat.hpp"
#include "spcell/cutoff.hpp"
#include "spcell/errors.hpp"
#include "spcell/forms.hpp"
#include "spcell/mat.hpp"
#include "spcell/measures.hpp"
#include "spcell/orbit.hpp"
#include "spcell/rat.hpp"
#include "spcell/rng.hpp"
#include "spcell/torus.hpp"
#include "spcell/weyl.hpp"

namespace spcell::harness {
namespace {

struct Cell {
  int r;
  int m;
};

std::vector<Cell> cells_of(const SuiteConfig& cfg) {
  std::vector<Cell> cells;
  if (cfg.n_exact > 0) {
    for (int r = 1; r <= cfg.n_exact; ++r) cells.push_back({r, cfg.n_exact - r});
    return cells;
  }
  if (cfg.r_lo < 1 || cfg.r_lo > cfg.r_hi) throw std::invalid_argument("empty r range");
  if (cfg.m_lo < 0 || cfg.m_lo > cfg.m_hi) throw std::invalid_argument("empty m range");
  for (int r = cfg.r_lo; r <= cfg.r_hi; ++r)
    for (int m = cfg.m_lo; m <= cfg.m_hi; ++m) cells.push_back({r, m});
  return cells;
}

Json vec_json(const std::vector<Rat>& v) {
  Json arr = Json::array();
  for (const Rat& x : v) arr.push_back(rat_str(x));
  return arr;
}

void push_entry_mismatch(std::vector<FailureRecord>& out, const Json& input,
                         const MatQ& expected, const MatQ& actual, const std::string& site) {
  for (std::size_t i = 0; i < expected.rows(); ++i)
    for (std::size_t j = 0; j < expected.cols(); ++j)
      if (expected(i, j) != actual(i, j)) {
        out.push_back({input, rat_str(expected(i, j)), rat_str(actual(i, j)),
                       site + "/entry_" + std::to_string(i) + "_" + std::to_string(j)});
        return;
      }
}

/// Runs cfg.samples independent attempts of `fn`, each on a fresh engine
/// keyed by (seed, r, m, sample, salt); a genericity throw reruns the sample
/// on the same engine up to the budget, after which an inconclusive record
/// is emitted instead.
using CheckFn = std::function<void(Sampler&, int, std::vector<FailureRecord>&)>;

CaseResult run_sampled(const SuiteConfig& cfg, Cell c, const std::string& name,
                       std::uint64_t salt, const CheckFn& fn) {
  CaseResult result{c.r, c.m, name, cfg.samples, {}};
  for (int sample = 0; sample < cfg.samples; ++sample) {
    Sampler smp(cell_rng(cfg.seed, c.r, c.m, sample, salt), cfg.bound);
    std::string last_site;
    bool done = false;
    for (int attempt = 0; attempt < kResampleBudget && !done; ++attempt) {
      try {
        fn(smp, sample, result.failures);
        done = true;
      } catch (const NonGenericError& e) {
        last_site = e.site;
      } catch (const PivotError& e) {
        last_site = "pivot_step_" + std::to_string(e.step);
      } catch (const SingularMatrixError&) {
        last_site = "singular";
      }
    }
    if (!done)
      result.failures.push_back({Json::object(),
                                 "a generic sample within " + std::to_string(kResampleBudget) +
                                     " attempts",
                                 "exhausted at " + last_site, name + "/resample_budget"});
  }
  return result;
}

MatQ sample_generic_y_point(const GroupShape& s, Sampler& smp, MatQ* z_out) {
  MatQ x = smp.matrix(s.ur(), 2 * s.um());
  *z_out = smp.symmetric_matrix(s.ur());
  return x;
}

MatQ paired_torus(std::size_t m, Sampler& smp) {
  MatQ d(2 * m, 2 * m);
  for (std::size_t a = 0; a < m; ++a) {
    const Rat v = smp.nonzero_rational();
    d(a, a) = v;
    d(2 * m - 1 - a, 2 * m - 1 - a) = Rat(1) / v;
  }
  return d;
}

MatQ random_symplectic(std::size_t m, Sampler& smp) {
  return random_sp_unipotent(m, smp) * paired_torus(m, smp) *
         random_sp_unipotent(m, smp).transpose() * random_sp_unipotent(m, smp);
}

std::pair<MatQ, MatQ> mask_point(const GroupShape& s, Sampler& smp) {
  const OrbitMask mask = canonical_mask(s);
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
  return {x, z};
}

NilpotentPair toric_point(const GroupShape& s, Sampler& smp) {
  const std::size_t r = s.ur(), k = std::min(s.ur(), s.um());
  MatQ x(r, 2 * s.um());
  for (std::size_t j = 0; j < k; ++j) x(r - 1 - j, j) = smp.nonzero_rational();
  return make_n(s, x, smp.symmetric_matrix(r));
}

std::vector<Rat> symplectic_torus_entries(std::size_t m, Sampler& smp) {
  std::vector<Rat> s2(2 * m, Rat(1));
  for (std::size_t j = 0; j < m; ++j) {
    s2[j] = smp.nonzero_rational();
    s2[2 * m - 1 - j] = Rat(1) / s2[j];
  }
  return s2;
}

// ---------------------------------------------------------------------------

std::vector<CaseResult> run_bruhat(const SuiteConfig& cfg) {
  const bool fault = cfg.inject_fault == "bruhat" || cfg.inject_fault == "any";
  std::vector<CaseResult> out;
  for (const Cell c : cells_of(cfg)) {
    const GroupShape s(c.r, c.m);

    out.push_back(run_sampled(
        cfg, c, "bruhat/w0_decomposition", 101,
        [&, fault](Sampler& smp, int sample, std::vector<FailureRecord>& fl) {
          MatQ z;
          const MatQ x = sample_generic_y_point(s, smp, &z);
          const NilpotentPair n = make_n(s, x, z);
          const BruhatFactors f = decompose_w0(n);
          const Json input{{"X", matrix_json(x)}, {"Z", matrix_json(z)}};
          if (!is_symplectic(f.m2))
            fl.push_back({input, "m2 in Sp", "m2 not symplectic",
                          "bruhat/w0_decomposition/m2_symplectic"});
          const MatQ lhs = w0_inverse(s) * embed_n(n);
          MatQ rhs = levi_embed(s, f.m1, f.m2) * embed_n(make_n_from_y(s, f.Xp, f.Yp)) *
                     embed_nbar(s, f.X1, f.Y1);
          const std::string site = (fault && sample == 0)
                                       ? "bruhat/w0_decomposition/injected_fault"
                                       : "bruhat/w0_decomposition/product";
          if (fault && sample == 0) rhs(0, 0) += 1;
          push_entry_mismatch(fl, input, lhs, rhs, site);
        }));

    if (c.m >= 1)
      out.push_back(run_sampled(
          cfg, c, "bruhat/alpha_invariance", 102,
          [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
            MatQ z;
            const MatQ x = sample_generic_y_point(s, smp, &z);
            const NilpotentPair n = make_n(s, x, z);
            const Rat a = alpha_r_coordinate(n);
            const LeviUnipotent u = random_levi_unipotent(s, smp);
            const MatQ u1inv = unitriangular_inverse(u.u1);
            const NilpotentPair twisted =
                make_n_from_y(s, u1inv * n.X * u.u2, u1inv * n.Y() * theta_r(u.u1));
            const Rat b = alpha_r_coordinate(twisted);
            if (a != b)
              fl.push_back({Json{{"X", matrix_json(x)},
                                 {"Z", matrix_json(z)},
                                 {"u1", matrix_json(u.u1)},
                                 {"u2", matrix_json(u.u2)}},
                            rat_str(a), rat_str(b), "bruhat/alpha_invariance/alpha"});
          }));

    out.push_back(run_sampled(
        cfg, c, "bruhat/gl_roundtrip", 103,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const MatQ a = smp.matrix(s.ur(), s.ur());
          if (is_zero(det(a))) throw NonGenericError("gl_sample_singular");
          const GlBruhatFactors f = gl_bruhat(a);
          const Json input{{"a", matrix_json(a)}};
          if (!f.u1.is_upper_unitriangular() || !f.u2.is_upper_unitriangular())
            fl.push_back({input, "unitriangular factors", "factor not unitriangular",
                          "bruhat/gl_roundtrip/factors"});
          push_entry_mismatch(fl, input, a, f.u1 * bruhat_monomial(f.perm, f.t) * f.u2,
                              "bruhat/gl_roundtrip/product");
        }));

    if (c.m >= 1)
      out.push_back(run_sampled(
          cfg, c, "bruhat/sp_roundtrip", 104,
          [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
            const std::size_t m = s.um();
            const MatQ h = random_symplectic(m, smp);
            const SpBruhatFactors f = sp_bruhat(h);
            const Json input{{"h", matrix_json(h)}};
            if (!is_symplectic(f.v1) || !is_symplectic(f.v2))
              fl.push_back({input, "symplectic factors", "factor not symplectic",
                            "bruhat/sp_roundtrip/factors"});
            for (std::size_t j = 0; j < 2 * m; ++j)
              if (f.perm[2 * m - 1 - j] != 2 * m - 1 - f.perm[j]) {
                fl.push_back({input, "mirror-symmetric pivot pattern",
                              "column " + std::to_string(j) + " unpaired",
                              "bruhat/sp_roundtrip/perm"});
                break;
              }
            push_entry_mismatch(fl, input, h, f.v1 * bruhat_monomial(f.perm, f.t) * f.v2,
                                "bruhat/sp_roundtrip/product");
          }));
  }
  return out;
}

std::vector<CaseResult> run_orbit(const SuiteConfig& cfg) {
  std::vector<CaseResult> out;
  for (const Cell c : cells_of(cfg)) {
    const GroupShape s(c.r, c.m);
    const OrbitMask mask = canonical_mask(s);

    out.push_back(run_sampled(
        cfg, c, "orbit/canonical_round_trip", 201,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          MatQ z;
          const MatQ x = sample_generic_y_point(s, smp, &z);
          const CanonicalOrbitRep rep = reduce_to_canonical(make_n(s, x, z));
          const Json input{{"X", matrix_json(x)}, {"Z", matrix_json(z)}};
          if (!rep.u1.is_upper_unitriangular())
            fl.push_back({input, "unitriangular u1", "u1 not unitriangular",
                          "orbit/canonical_round_trip/u1"});
          if (c.m >= 1 && !is_symplectic(rep.u2))
            fl.push_back({input, "symplectic u2", "u2 not symplectic",
                          "orbit/canonical_round_trip/u2"});
          const auto [ax, az] = orbit_act(rep.u1, rep.u2, x, z);
          push_entry_mismatch(fl, input, rep.RX, ax, "orbit/canonical_round_trip/x");
          push_entry_mismatch(fl, input, rep.RZ, az, "orbit/canonical_round_trip/z");
        }));

    out.push_back(run_sampled(
        cfg, c, "orbit/mask_idempotence", 202,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          MatQ z;
          const MatQ x = sample_generic_y_point(s, smp, &z);
          const CanonicalOrbitRep rep = reduce_to_canonical(make_n(s, x, z));
          const Json input{{"X", matrix_json(x)}, {"Z", matrix_json(z)}};
          for (std::size_t i = 0; i < s.ur(); ++i) {
            for (std::size_t j = 0; j < 2 * s.um(); ++j)
              if (!mask.X[i][j] && !is_zero(rep.RX(i, j)) && rep.RX(i, j) != Rat(1)) {
                fl.push_back({input, "masked x coordinate in {0, 1}", rat_str(rep.RX(i, j)),
                              "orbit/mask_idempotence/x_off_mask"});
                return;
              }
            for (std::size_t j = 0; j < s.ur(); ++j)
              if (!mask.Z[i][j] && !is_zero(rep.RZ(i, j))) {
                fl.push_back({input, "0", rat_str(rep.RZ(i, j)),
                              "orbit/mask_idempotence/z_off_mask"});
                return;
              }
          }
          const CanonicalOrbitRep again = reduce_to_canonical(make_n(s, rep.RX, rep.RZ));
          push_entry_mismatch(fl, input, rep.RX, again.RX, "orbit/mask_idempotence/x_fixed");
          push_entry_mismatch(fl, input, rep.RZ, again.RZ, "orbit/mask_idempotence/z_fixed");
        }));

    out.push_back(run_sampled(
        cfg, c, "orbit/stabilizer", 203,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          MatQ z;
          const MatQ x = sample_generic_y_point(s, smp, &z);
          const CanonicalOrbitRep rep = reduce_to_canonical(make_n(s, x, z));
          if (!stabilizer_check(rep, 3, smp))
            fl.push_back({Json{{"X", matrix_json(x)}, {"Z", matrix_json(z)}},
                          "stabilizer kind acts as described", "violation found",
                          "orbit/stabilizer/check"});
        }));

    if (c.m >= 1)
      out.push_back(run_sampled(
          cfg, c, "orbit/zm0_slice", 204,
          [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
            MatQ z;
            const MatQ x = sample_generic_y_point(s, smp, &z);
            const NormalizedRep nr = zm0_normalize(x, z);
            const Json input{{"X", matrix_json(x)}, {"Z", matrix_json(z)}};
            if (nr.X(s.ur() - 1, 0) != Rat(1))
              fl.push_back({input, "1", rat_str(nr.X(s.ur() - 1, 0)),
                            "orbit/zm0_slice/pivot"});
            const auto [bx, bz] = zm0_act(nr.scale, nr.X, nr.Z);
            push_entry_mismatch(fl, input, x, bx, "orbit/zm0_slice/x");
            push_entry_mismatch(fl, input, z, bz, "orbit/zm0_slice/z");
          }));
  }
  return out;
}

std::vector<CaseResult> run_measure(const SuiteConfig& cfg) {
  std::vector<CaseResult> out;
  for (const Cell c : cells_of(cfg)) {
    const GroupShape s(c.r, c.m);

    out.push_back(run_sampled(
        cfg, c, "measure/jacobian_monomial", 301,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const auto [x, z] = mask_point(s, smp);
          const JacobianCheck ck = verify_jacobian_monomial(s, x, z, false);
          const Json input{{"x", matrix_json(x)}, {"z", matrix_json(z)}};
          if (!ck.matches)
            fl.push_back({input, rat_str(ck.expected_abs), rat_str(ck.det_abs),
                          "measure/jacobian_monomial/abs"});
          if (ck.sign == 0)
            fl.push_back({input, "nonzero Jacobian sign", "0",
                          "measure/jacobian_monomial/sign"});
        }));

    if (c.m >= 1)
      out.push_back(run_sampled(
          cfg, c, "measure/jacobian_normalized", 302,
          [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
            auto [x, z] = mask_point(s, smp);
            const NormalizedRep nr = zm0_normalize(x, z);
            const JacobianCheck ck = verify_jacobian_monomial(s, nr.X, nr.Z, true);
            const Json input{{"x", matrix_json(nr.X)}, {"z", matrix_json(nr.Z)}};
            if (!ck.matches)
              fl.push_back({input, rat_str(ck.expected_abs), rat_str(ck.det_abs),
                            "measure/jacobian_normalized/abs"});
            const Rat table =
                measure_monomial_abs(measure_exponents(s, true), nr.X, nr.Z);
            if (ck.expected_abs != table)
              fl.push_back({input, rat_str(table), rat_str(ck.expected_abs),
                            "measure/jacobian_normalized/table"});
          }));

    out.push_back(run_sampled(
        cfg, c, "measure/xy_change_of_variables", 303,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const MatQ x = smp.matrix(s.ur(), 2 * s.um());
          const ChangeOfVarsCheck ck = xz_xy_jacobian(s, x);
          if (!ck.unit || ck.sign == 0)
            fl.push_back({Json{{"x", matrix_json(x)}}, "|det| == 1 with definite sign",
                          ck.unit ? "sign 0" : "|det| != 1",
                          "measure/xy_change_of_variables/unit"});
        }));

    if (c.m >= 1) {
      CaseResult ident{c.r, c.m, "measure/power_identity", 1, {}};
      const long lhs = power_identity_lhs(s);
      const long target = power_identity_target(s);
      if (lhs != target)
        ident.failures.push_back({Json::object(), std::to_string(target), std::to_string(lhs),
                                  "measure/power_identity/sum"});
      out.push_back(std::move(ident));
    }
  }
  return out;
}

std::vector<CaseResult> run_torus(const SuiteConfig& cfg) {
  std::vector<CaseResult> out;
  for (const Cell c : cells_of(cfg)) {
    const GroupShape s(c.r, c.m);
    const std::size_t r = s.ur(), m = s.um(), k = std::min(r, m);
    const Rat lead = (c.r % 2 == 1) ? Rat(1) : Rat(-1);

    out.push_back(run_sampled(
        cfg, c, "torus/pivot_consistency", 401,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const NilpotentPair n = toric_point(s, smp);
          const TorusPair phi = phi_minor_formula(n);
          const BruhatFactors f = decompose_w0(n);
          const Json input{{"x", matrix_json(n.X)}, {"z", matrix_json(n.Z)}};
          const GlBruhatFactors g = gl_bruhat(f.m1);
          for (std::size_t i = 0; i < r; ++i) {
            if (g.perm[i] != r - 1 - i) {
              fl.push_back({input, "antidiagonal cell", "pivot row " + std::to_string(g.perm[i]),
                            "torus/pivot_consistency/gl_perm"});
              break;
            }
            if (g.t[i] != lead * phi.t1[i]) {
              fl.push_back({input, rat_str(lead * phi.t1[i]), rat_str(g.t[i]),
                            "torus/pivot_consistency/gl_pivot_" + std::to_string(i)});
              break;
            }
          }
          if (m == 0) return;
          const SpBruhatFactors sp = sp_bruhat(f.m2);
          for (std::size_t j = 0; j < 2 * m; ++j) {
            const bool flipped = j < k || j >= 2 * m - k;
            if (sp.perm[j] != (flipped ? 2 * m - 1 - j : j)) {
              fl.push_back({input, "mirrored antidiagonal cell",
                            "pivot row " + std::to_string(sp.perm[j]),
                            "torus/pivot_consistency/sp_perm"});
              break;
            }
            Rat expected = phi.t2[j];
            if (j < k) expected = lead * expected;
            if (j >= 2 * m - k) expected = -lead * expected;
            if (sp.t[j] != expected) {
              fl.push_back({input, rat_str(expected), rat_str(sp.t[j]),
                            "torus/pivot_consistency/sp_pivot_" + std::to_string(j)});
              break;
            }
          }
        }));

    out.push_back(run_sampled(
        cfg, c, "torus/unipotent_minors", 402,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const NilpotentPair n = toric_point(s, smp);
          const auto [u1, u2] = unipotent_entries_formula(n);
          const BruhatFactors f = decompose_w0(n);
          const GlBruhatFactors g = gl_bruhat(f.m1);
          const Json input{{"x", matrix_json(n.X)}, {"z", matrix_json(n.Z)}};
          push_entry_mismatch(fl, input, g.u1, u1, "torus/unipotent_minors/u1");
          push_entry_mismatch(fl, input, g.u2, u2, "torus/unipotent_minors/u2");
          push_entry_mismatch(fl, input, f.m1, u1 * bruhat_monomial(g.perm, g.t) * u2,
                              "torus/unipotent_minors/product");
        }));

    out.push_back(run_sampled(
        cfg, c, "torus/equivariance", 403,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const NilpotentPair n = toric_point(s, smp);
          const TorusPair before = phi_minor_formula(n);
          std::vector<Rat> s1(r);
          for (Rat& v : s1) v = smp.nonzero_rational();
          const std::vector<Rat> s2 = symplectic_torus_entries(m, smp);
          const TorusPair after = phi_minor_formula(toric_act(s1, s2, n));
          const TorusPair factors = phi_equivariance_factors(s, s1, s2);
          const Json input{{"x", matrix_json(n.X)},
                           {"z", matrix_json(n.Z)},
                           {"s1", vec_json(s1)},
                           {"s2", vec_json(s2)}};
          for (std::size_t i = 0; i < r; ++i)
            if (after.t1[i] != before.t1[i] * factors.t1[i]) {
              fl.push_back({input, rat_str(before.t1[i] * factors.t1[i]),
                            rat_str(after.t1[i]), "torus/equivariance/t1_" + std::to_string(i)});
              break;
            }
          for (std::size_t j = 0; j < 2 * m; ++j)
            if (after.t2[j] != before.t2[j] * factors.t2[j]) {
              fl.push_back({input, rat_str(before.t2[j] * factors.t2[j]),
                            rat_str(after.t2[j]), "torus/equivariance/t2_" + std::to_string(j)});
              break;
            }
        }));

    if (c.m >= 1)
      out.push_back(run_sampled(
          cfg, c, "torus/square_cover", 404,
          [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
            if (!square_cover_check(s, 1, smp))
              fl.push_back({Json::object(),
                            "sign flips fix the projection, magnitude changes move it",
                            "cover structure violated", "torus/square_cover/check"});
          }));

    out.push_back(run_sampled(
        cfg, c, "torus/scalar_law_derived", 405,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const NilpotentPair n = toric_point(s, smp);
          std::vector<std::vector<long>> partitions = {{static_cast<long>(c.r)}};
          if (c.r >= 2) partitions.push_back({1, static_cast<long>(c.r) - 1});
          for (const auto& blocks : partitions) {
            std::vector<Rat> sv(blocks.size());
            for (Rat& v : sv) v = smp.nonzero_rational();
            const StabilityScalarReport rep = stability_scalar_report(blocks, sv, n);
            const Json input{{"x", matrix_json(n.X)},
                             {"z", matrix_json(n.Z)},
                             {"s_values", vec_json(sv)}};
            if (rep.det_m1.actual != rep.det_m1.derived)
              fl.push_back({input, rat_str(rep.det_m1.derived), rat_str(rep.det_m1.actual),
                            "torus/scalar_law_derived/det_m1"});
            if (rep.corner_ratio.actual != rep.corner_ratio.derived)
              fl.push_back({input, rat_str(rep.corner_ratio.derived),
                            rat_str(rep.corner_ratio.actual),
                            "torus/scalar_law_derived/corner_ratio"});
          }
        }));
  }
  return out;
}

std::vector<CaseResult> run_weyl(const SuiteConfig& cfg) {
  std::vector<CaseResult> out;
  for (const Cell c : cells_of(cfg)) {
    const GroupShape s(c.r, c.m);
    const std::vector<SignedPerm> support = bessel_support_set(s);
    const std::size_t expected_count = std::size_t{1} << (c.r - 1 + c.m);

    CaseResult count{c.r, c.m, "weyl/support_count", static_cast<int>(support.size()), {}};
    if (support.size() != expected_count)
      count.failures.push_back({Json::object(), std::to_string(expected_count),
                                std::to_string(support.size()), "weyl/support_count/size"});
    out.push_back(std::move(count));

    const std::size_t bits = static_cast<std::size_t>(c.r - 1 + c.m);
    CaseResult bij{c.r, c.m, "weyl/levi_bijection", static_cast<int>(std::size_t{1} << bits), {}};
    std::set<std::vector<int>> from_levis;
    for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
      std::vector<bool> keep(bits);
      for (std::size_t b = 0; b < bits; ++b) keep[b] = (mask >> b) & 1;
      const LeviDescriptor desc{s, keep};
      const SignedPerm w = w_of_levi(desc);
      from_levis.insert(w.images);
      if (!in_bessel_support(s, w)) {
        bij.failures.push_back({Json::object(), "support membership for every quotient element",
                                "missing at keep mask " + std::to_string(mask),
                                "weyl/levi_bijection/membership"});
        break;
      }
      if (!(levi_of_w(s, w) == desc)) {
        bij.failures.push_back({Json::object(), "round trip at keep mask " + std::to_string(mask),
                                "descriptor changed", "weyl/levi_bijection/round_trip"});
        break;
      }
    }
    std::set<std::vector<int>> from_filter;
    for (const SignedPerm& w : support) from_filter.insert(w.images);
    if (bij.failures.empty() && from_levis != from_filter)
      bij.failures.push_back({Json::object(), "quotient enumeration == support filter",
                              "sets differ", "weyl/levi_bijection/set_equality"});
    out.push_back(std::move(bij));

    CaseResult ranks{c.r, c.m, "weyl/torus_ranks", static_cast<int>(support.size()), {}};
    for (const SignedPerm& w : support) {
      const std::size_t rank = relevant_torus_rank(s, w);
      const std::size_t center = levi_of_w(s, w).center_rank();
      if (rank != center) {
        ranks.failures.push_back({Json::object(), std::to_string(center), std::to_string(rank),
                                  "weyl/torus_ranks/rank"});
        break;
      }
    }
    out.push_back(std::move(ranks));

    CaseResult trans{c.r, c.m, "weyl/transverse_finite", 0, {}};
    int pairs = 0;
    for (const SignedPerm& w : support)
      for (const SignedPerm& wp : support) {
        if (!bruhat_leq(s, wp, w)) continue;
        ++pairs;
        const TransverseTorusDescriptor d = transverse_torus(s, w, wp);
        if (!d.self_intersection_finite || !d.complement_finite_index) {
          trans.failures.push_back(
              {Json::object(), "finite self-intersection and finite-index complement",
               d.self_intersection_finite ? "rank gap" : "positive-rank self-intersection",
               "weyl/transverse_finite/flags"});
        }
        if (!trans.failures.empty()) break;
      }
    trans.samples = pairs;
    out.push_back(std::move(trans));
  }
  return out;
}

std::vector<CaseResult> run_cutoff(const SuiteConfig& cfg) {
  const PadicContext ctx(cfg.prime, cfg.kappa, cfg.d, cfg.g);
  const PadicContext next(cfg.prime, cfg.kappa + 1, cfg.d, cfg.g);
  std::vector<CaseResult> out;
  for (const Cell c : cells_of(cfg)) {
    const GroupShape s(c.r, c.m);
    const long window = 2 * cfg.kappa + 2;

    out.push_back(run_sampled(
        cfg, c, "cutoff/nbar_nesting", 601,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          const MatQ x = smp.padic_matrix(s.ur(), 2 * s.um(), cfg.prime, -window, window);
          const MatQ y = smp.padic_matrix(s.ur(), s.ur(), cfg.prime, -window, window);
          if (nbar_membership(ctx, x, y) && !nbar_membership(next, x, y))
            fl.push_back({Json{{"X", matrix_json(x)}, {"Y", matrix_json(y)}},
                          "membership preserved as kappa grows", "dropped out at kappa+1",
                          "cutoff/nbar_nesting/monotone"});
        }));

    if (c.m >= 1)
      out.push_back(run_sampled(
          cfg, c, "cutoff/phi_congruence_invariance", 602,
          [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
            if (!phi_invariance_check(ctx, s, 1, smp))
              fl.push_back({Json::object(), "phi constant on congruence translates",
                            "value changed", "cutoff/phi_congruence_invariance/check"});
          }));

    out.push_back(run_sampled(
        cfg, c, "cutoff/twisted_conjugation", 603,
        [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
          MatQ z;
          const MatQ x = sample_generic_y_point(s, smp, &z);
          const NilpotentPair n = make_n(s, x, z);
          if (is_zero(det(n.Y()))) throw NonGenericError("sample_det_y");
          const LeviUnipotent u = random_levi_unipotent(s, smp);
          const Rat t = smp.nonzero_rational();
          if (!twisted_conjugation_identity(s, t, u, n))
            fl.push_back({Json{{"X", matrix_json(x)},
                               {"Z", matrix_json(z)},
                               {"u1", matrix_json(u.u1)},
                               {"u2", matrix_json(u.u2)},
                               {"t", rat_str(t)}},
                          "twisted conjugate equals the Levi image of the translated point",
                          "mismatch", "cutoff/twisted_conjugation/identity"});
        }));

    if (c.m >= 1)
      out.push_back(run_sampled(
          cfg, c, "cutoff/u_kappa_closure", 604,
          [&](Sampler& smp, int, std::vector<FailureRecord>& fl) {
            const LeviUnipotent u = sample_u0_kappa(ctx, s, smp);
            const LeviUnipotent v = sample_u0_kappa(ctx, s, smp);
            const auto check = [&](const MatQ& g, const std::string& what) {
              if (!u_kappa_member(ctx, g))
                fl.push_back({Json::object(), "membership " + what, "outside the ball",
                              "cutoff/u_kappa_closure/" + what});
            };
            check(u.u1, "sample_gl");
            check(u.u2, "sample_sp");
            check(u.u1 * v.u1, "product_gl");
            check(u.u2 * v.u2, "product_sp");
            check(unitriangular_inverse(u.u1), "inverse_gl");
            check(unitriangular_inverse(u.u2), "inverse_sp");
          }));

    {
      const int trials = std::min(cfg.samples, 10);
      CaseResult incl{c.r, c.m, "cutoff/cell_inclusion", trials, {}};
      Sampler smp(cell_rng(cfg.seed, c.r, c.m, 0, 605), cfg.bound);
      bool done = false;
      for (int attempt = 0; attempt < kResampleBudget && !done; ++attempt) {
        try {
          const CellInclusionReport rep = stabilizer_cell_inclusion_check(s, trials, smp);
          if (!rep.included)
            incl.failures.push_back({Json::object(),
                                     "stabilizer conjugates into the cell's Levi factor",
                                     "escaping element found", "cutoff/cell_inclusion/included"});
          if (!rep.vacuous && !rep.in_support)
            incl.failures.push_back({Json::object(), "cell Weyl element in the support set",
                                     "outside", "cutoff/cell_inclusion/support"});
          if (!rep.vacuous && rep.checked != trials)
            incl.failures.push_back({Json::object(), std::to_string(trials),
                                     std::to_string(rep.checked),
                                     "cutoff/cell_inclusion/checked"});
          done = true;
        } catch (const NonGenericError&) {
        } catch (const PivotError&) {
        }
      }
      if (!done)
        incl.failures.push_back({Json::object(),
                                 "a generic sample within " + std::to_string(kResampleBudget) +
                                     " attempts",
                                 "exhausted", "cutoff/cell_inclusion/resample_budget"});
      out.push_back(std::move(incl));
    }
  }
  return out;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");

  SuiteReport rep;
  rep.suite = cfg.suite;
  rep.config = cfg;

  const auto append = [&rep](std::vector<CaseResult> part) {
    for (CaseResult& c : part) rep.results.push_back(std::move(c));
  };
  bool known = false;
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "bruhat") known = true, append(run_bruhat(cfg));
  if (all || cfg.suite == "orbit") known = true, append(run_orbit(cfg));
  if (all || cfg.suite == "measure") known = true, append(run_measure(cfg));
  if (all || cfg.suite == "torus") known = true, append(run_torus(cfg));
  if (all || cfg.suite == "weyl") known = true, append(run_weyl(cfg));
  if (all || cfg.suite == "cutoff") known = true, append(run_cutoff(cfg));
  if (!known) throw std::invalid_argument("unknown suite: " + cfg.suite);

  rep.status = derive_status(rep.results);
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace spcell::harness
