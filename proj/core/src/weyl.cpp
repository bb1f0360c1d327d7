#include "spcell/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "spcell/mat.hpp"

namespace spcell {

namespace {

void check_images(const std::vector<int>& imgs) {
  const std::size_t n = imgs.size();
  std::vector<bool> seen(n, false);
  for (int v : imgs) {
    const int a = std::abs(v);
    if (a < 1 || static_cast<std::size_t>(a) > n || seen[a - 1])
      throw std::invalid_argument("SignedPerm: images are not a signed permutation");
    seen[a - 1] = true;
  }
}

std::size_t delta_size(const GroupShape& s) { return s.ur() - 1 + s.um(); }

/// Simple reflections of W(M, A), aligned with levi_simple_roots.
std::vector<SignedPerm> simple_reflections(const GroupShape& s) {
  const std::size_t r = s.ur(), m = s.um(), n = r + m;
  std::vector<SignedPerm> out;
  out.reserve(delta_size(s));
  for (std::size_t i = 0; i + 1 < r; ++i) {
    SignedPerm w = SignedPerm::identity(n);
    std::swap(w.images[i], w.images[i + 1]);
    out.push_back(w);
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    SignedPerm w = SignedPerm::identity(n);
    std::swap(w.images[r + j], w.images[r + j + 1]);
    out.push_back(w);
  }
  if (m >= 1) {
    SignedPerm w = SignedPerm::identity(n);
    w.images[n - 1] = -static_cast<int>(n);
    out.push_back(w);
  }
  return out;
}

void require_support(const GroupShape& s, const SignedPerm& w, const char* who) {
  if (!in_bessel_support(s, w))
    throw std::invalid_argument(std::string(who) + ": element is not in the support set");
}

/// Coroot of a simple root: equal to the root for the short e_i - e_j kind,
/// e_i for the long 2 e_i kind.
RootVec coroot(const RootVec& alpha) {
  RootVec v = alpha;
  for (int& c : v) c /= (std::abs(c) == 2 ? 2 : 1);
  return v;
}

MatQ rows_from(const std::vector<RootVec>& vs, std::size_t n) {
  MatQ a(vs.size(), n);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(vs[i][j]);
  return a;
}

std::vector<RootVec> kept_simples(const GroupShape& s, const SignedPerm& w) {
  const std::vector<RootVec> delta = levi_simple_roots(s);
  std::vector<RootVec> kept;
  for (const RootVec& alpha : delta)
    if (root_positive(act_on_root(w, alpha))) kept.push_back(alpha);
  return kept;
}

}  // namespace

SignedPerm::SignedPerm(std::vector<int> imgs) : images(std::move(imgs)) { check_images(images); }

SignedPerm SignedPerm::identity(std::size_t n) {
  SignedPerm w;
  w.images.resize(n);
  std::iota(w.images.begin(), w.images.end(), 1);
  return w;
}

bool SignedPerm::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] != static_cast<int>(i) + 1) return false;
  return true;
}

bool operator==(const SignedPerm& a, const SignedPerm& b) { return a.images == b.images; }
bool operator!=(const SignedPerm& a, const SignedPerm& b) { return !(a == b); }

SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: rank mismatch");
  SignedPerm out;
  out.images.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int bi = b.images[i];
    const int ai = a.images[std::abs(bi) - 1];
    out.images[i] = bi > 0 ? ai : -ai;
  }
  return out;
}

SignedPerm inverse(const SignedPerm& w) {
  SignedPerm out;
  out.images.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int v = w.images[i];
    out.images[std::abs(v) - 1] = v > 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1);
  }
  return out;
}

RootVec act_on_root(const SignedPerm& w, const RootVec& v) {
  if (w.size() != v.size()) throw std::invalid_argument("act_on_root: rank mismatch");
  RootVec out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int img = w.images[i];
    out[std::abs(img) - 1] += (img > 0 ? v[i] : -v[i]);
  }
  return out;
}

bool root_positive(const RootVec& v) {
  for (int c : v) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  throw std::invalid_argument("root_positive: zero vector");
}

std::vector<RootVec> levi_simple_roots(const GroupShape& s) {
  const std::size_t r = s.ur(), m = s.um(), n = r + m;
  std::vector<RootVec> out;
  out.reserve(delta_size(s));
  for (std::size_t i = 0; i + 1 < r; ++i) {
    RootVec v(n, 0);
    v[i] = 1;
    v[i + 1] = -1;
    out.push_back(v);
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    RootVec v(n, 0);
    v[r + j] = 1;
    v[r + j + 1] = -1;
    out.push_back(v);
  }
  if (m >= 1) {
    RootVec v(n, 0);
    v[n - 1] = 2;
    out.push_back(v);
  }
  return out;
}

std::vector<RootVec> levi_positive_roots(const GroupShape& s) {
  const std::size_t r = s.ur(), m = s.um(), n = r + m;
  std::vector<RootVec> out;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      RootVec v(n, 0);
      v[i] = 1;
      v[j] = -1;
      out.push_back(v);
    }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      RootVec v(n, 0);
      v[r + i] = 1;
      v[r + j] = -1;
      out.push_back(v);
      v[r + j] = 1;
      out.push_back(v);
    }
    RootVec v(n, 0);
    v[r + i] = 2;
    out.push_back(v);
  }
  return out;
}

std::vector<SignedPerm> levi_weyl_group(const GroupShape& s) {
  const std::size_t r = s.ur(), m = s.um(), n = r + m;
  std::vector<int> glperm(r), spperm(m);
  std::iota(glperm.begin(), glperm.end(), 1);
  std::vector<SignedPerm> out;
  do {
    std::iota(spperm.begin(), spperm.end(), static_cast<int>(r) + 1);
    do {
      for (std::size_t signs = 0; signs < (std::size_t{1} << m); ++signs) {
        SignedPerm w;
        w.images.resize(n);
        for (std::size_t i = 0; i < r; ++i) w.images[i] = glperm[i];
        for (std::size_t j = 0; j < m; ++j)
          w.images[r + j] = (signs >> j & 1) ? -spperm[j] : spperm[j];
        out.push_back(w);
      }
    } while (std::next_permutation(spperm.begin(), spperm.end()));
  } while (std::next_permutation(glperm.begin(), glperm.end()));
  return out;
}

SignedPerm levi_long_element(const GroupShape& s) {
  const std::size_t r = s.ur(), m = s.um();
  SignedPerm w = SignedPerm::identity(r + m);
  for (std::size_t i = 0; i < r; ++i) w.images[i] = static_cast<int>(r - i);
  for (std::size_t j = 0; j < m; ++j) w.images[r + j] = -static_cast<int>(r + j + 1);
  return w;
}

std::size_t weyl_length(const GroupShape& s, const SignedPerm& w) {
  std::size_t len = 0;
  for (const RootVec& alpha : levi_positive_roots(s))
    if (!root_positive(act_on_root(w, alpha))) ++len;
  return len;
}

bool in_bessel_support(const GroupShape& s, const SignedPerm& w) {
  const std::vector<RootVec> delta = levi_simple_roots(s);
  for (const RootVec& alpha : delta) {
    const RootVec img = act_on_root(w, alpha);
    if (!root_positive(img)) continue;
    if (std::find(delta.begin(), delta.end(), img) == delta.end()) return false;
  }
  return true;
}

std::vector<SignedPerm> bessel_support_set(const GroupShape& s) {
  std::vector<SignedPerm> out;
  for (const SignedPerm& w : levi_weyl_group(s))
    if (in_bessel_support(s, w)) out.push_back(w);
  return out;
}

LeviDescriptor::LeviDescriptor(const GroupShape& s, std::vector<bool> kept)
    : shape(s), keep(std::move(kept)) {
  if (keep.size() != delta_size(s))
    throw std::invalid_argument("LeviDescriptor: mask size does not match the simple-root count");
}

std::vector<long> LeviDescriptor::gl_blocks() const {
  std::vector<long> out;
  long run = 1;
  for (std::size_t i = 0; i + 1 < shape.ur(); ++i) {
    if (keep[i]) {
      ++run;
    } else {
      out.push_back(run);
      run = 1;
    }
  }
  out.push_back(run);
  return out;
}

long LeviDescriptor::sp_tail() const {
  const std::size_t r = shape.ur(), m = shape.um();
  if (m == 0 || !keep[r - 1 + m - 1]) return 0;
  long tail = 1;
  for (std::size_t j = m - 1; j-- > 0 && keep[r - 1 + j];) ++tail;
  return tail;
}

std::vector<long> LeviDescriptor::sp_gl_blocks() const {
  const std::size_t r = shape.ur(), m = shape.um();
  const long tail = sp_tail();
  std::vector<long> out;
  long run = 1;
  // Coordinates r+1 .. r+m-tail are grouped by the kept short roots.
  for (std::size_t j = 0; j + static_cast<std::size_t>(tail) < m; ++j) {
    const bool join = j + 1 + static_cast<std::size_t>(tail) < m && keep[r - 1 + j];
    if (join) {
      ++run;
    } else {
      out.push_back(run);
      run = 1;
    }
  }
  if (static_cast<std::size_t>(tail) == m) out.clear();
  return out;
}

std::size_t LeviDescriptor::center_rank() const {
  return gl_blocks().size() + sp_gl_blocks().size();
}

bool operator==(const LeviDescriptor& a, const LeviDescriptor& b) {
  return a.shape.r == b.shape.r && a.shape.m == b.shape.m && a.keep == b.keep;
}
bool operator!=(const LeviDescriptor& a, const LeviDescriptor& b) { return !(a == b); }

LeviDescriptor levi_of_w(const GroupShape& s, const SignedPerm& w) {
  require_support(s, w, "levi_of_w");
  const std::vector<RootVec> delta = levi_simple_roots(s);
  std::vector<bool> keep(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) keep[i] = root_positive(act_on_root(w, delta[i]));
  return LeviDescriptor(s, std::move(keep));
}

SignedPerm w_of_levi(const LeviDescriptor& l) {
  const std::size_t r = l.shape.ur(), m = l.shape.um(), n = r + m;
  SignedPerm wl = SignedPerm::identity(n);
  std::size_t at = 0;
  for (long b : l.gl_blocks()) {
    for (long i = 0; i < b; ++i) wl.images[at + i] = static_cast<int>(at + b - i);
    at += b;
  }
  at = r;
  for (long b : l.sp_gl_blocks()) {
    for (long i = 0; i < b; ++i) wl.images[at + i] = static_cast<int>(at + b - i);
    at += b;
  }
  for (std::size_t j = n - static_cast<std::size_t>(l.sp_tail()); j < n; ++j)
    wl.images[j] = -static_cast<int>(j + 1);
  return compose(levi_long_element(l.shape), inverse(wl));
}

bool bruhat_leq(const GroupShape& s, const SignedPerm& u, const SignedPerm& w) {
  if (u == w) return true;
  const std::size_t lu = weyl_length(s, u), lw = weyl_length(s, w);
  if (lu >= lw) return false;
  for (const SignedPerm& sr : simple_reflections(s)) {
    const SignedPerm sw = compose(sr, w);
    if (weyl_length(s, sw) >= lw) continue;
    const SignedPerm su = compose(sr, u);
    if (weyl_length(s, su) < lu) return bruhat_leq(s, su, sw);
    return bruhat_leq(s, u, sw);
  }
  throw std::logic_error("bruhat_leq: no descent found");
}

int bessel_distance(const GroupShape& s, const SignedPerm& w, const SignedPerm& wp) {
  const std::vector<SignedPerm> support = bessel_support_set(s);
  const auto member = [&](const SignedPerm& x) {
    return std::find(support.begin(), support.end(), x) != support.end();
  };
  if (!member(w) || !member(wp))
    throw std::invalid_argument("bessel_distance: element is not in the support set");
  SignedPerm lo = wp, hi = w;
  if (bruhat_leq(s, hi, lo)) std::swap(lo, hi);
  if (!bruhat_leq(s, lo, hi))
    throw std::invalid_argument("bessel_distance: elements are not comparable");

  // Longest chain from lo to hi through support elements, by length order.
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> len(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) len[i] = weyl_length(s, support[i]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return len[a] < len[b]; });
  std::vector<int> best(support.size(), -1);
  for (std::size_t oi : order) {
    const SignedPerm& x = support[oi];
    if (!bruhat_leq(s, lo, x) || !bruhat_leq(s, x, hi)) continue;
    if (x == lo) {
      best[oi] = 0;
      continue;
    }
    for (std::size_t pj : order) {
      if (best[pj] < 0 || len[pj] >= len[oi]) continue;
      if (bruhat_leq(s, support[pj], x) && best[pj] + 1 > best[oi]) best[oi] = best[pj] + 1;
    }
  }
  const std::size_t hi_idx =
      static_cast<std::size_t>(std::find(support.begin(), support.end(), hi) - support.begin());
  return best[hi_idx];
}

std::size_t relevant_torus_rank(const GroupShape& s, const SignedPerm& w) {
  require_support(s, w, "relevant_torus_rank");
  const std::vector<RootVec> kept = kept_simples(s, w);
  return (s.ur() + s.um()) - rank(rows_from(kept, s.ur() + s.um()));
}

TransverseTorusDescriptor transverse_torus(const GroupShape& s, const SignedPerm& w,
                                           const SignedPerm& wp) {
  require_support(s, w, "transverse_torus");
  require_support(s, wp, "transverse_torus");
  if (!bruhat_leq(s, wp, w))
    throw std::invalid_argument("transverse_torus: order violated, need w' <= w");
  const std::size_t n = s.ur() + s.um();
  const std::vector<RootVec> theta_w = kept_simples(s, w);
  const std::vector<RootVec> theta_wp = kept_simples(s, wp);
  std::vector<RootVec> coroots_lp;
  coroots_lp.reserve(theta_wp.size());
  for (const RootVec& alpha : theta_wp) coroots_lp.push_back(coroot(alpha));

  const MatQ c = rows_from(coroots_lp, n);
  const std::size_t dim_c = rank(c);
  const auto pairing_rank = [&](const std::vector<RootVec>& thetas) {
    MatQ p(thetas.size(), coroots_lp.size());
    for (std::size_t i = 0; i < thetas.size(); ++i)
      for (std::size_t j = 0; j < coroots_lp.size(); ++j) {
        long dot = 0;
        for (std::size_t k = 0; k < n; ++k) dot += thetas[i][k] * coroots_lp[j][k];
        p(i, j) = Rat(dot);
      }
    return rank(p);
  };

  TransverseTorusDescriptor out;
  out.rank_upper = n - rank(rows_from(theta_w, n));
  out.rank_lower = n - rank(rows_from(theta_wp, n));
  out.rank_transverse = dim_c - pairing_rank(theta_w);
  out.self_intersection_finite = (dim_c == pairing_rank(theta_wp));
  out.complement_finite_index = (out.rank_transverse + out.rank_lower == out.rank_upper);
  return out;
}

RootPartition u_partition(const GroupShape& s, const SignedPerm& w) {
  RootPartition out;
  for (const RootVec& alpha : levi_positive_roots(s)) {
    if (root_positive(act_on_root(w, alpha)))
      out.plus.push_back(alpha);
    else
      out.minus.push_back(alpha);
  }
  return out;
}

}  // namespace spcell
