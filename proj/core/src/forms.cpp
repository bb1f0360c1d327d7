#include "spcell/forms.hpp"

#include <sstream>

namespace spcell {

MatQ form_J_q(std::size_t n) { return form_J<Rat>(n); }
MatQ form_Jprime_q(std::size_t n) { return form_Jprime<Rat>(n); }

bool is_symplectic(const MatQ& h) {
  if (!h.is_square() || h.rows() % 2 != 0)
    throw std::invalid_argument("is_symplectic: even square matrix required");
  const MatQ jp = form_Jprime_q(h.rows() / 2);
  return h.transpose() * jp * h == jp;
}

MatQ theta_r(const MatQ& g) {
  if (!g.is_square()) throw std::invalid_argument("theta_r: square matrix required");
  const std::size_t r = g.rows();
  if (r == 0) return g;
  MatQ j = form_J_q(r);
  MatQ jinv = j;
  if (r % 2 == 0) jinv = -jinv;  // J_r^{-1} = (-1)^(r-1) J_r
  return j * inverse(g).transpose() * jinv;
}

MatQ z_from_xy(const GroupShape& s, const MatQ& x, const MatQ& y) {
  if (y.rows() != s.ur() || y.cols() != s.ur())
    throw std::invalid_argument("z_from_xy: Y must be r x r");
  if (x.rows() != s.ur() || x.cols() != 2 * s.um())
    throw std::invalid_argument("z_from_xy: X must be r x 2m");
  MatQ z = form_J_q(s.ur()) * y.transpose();
  MatQ corr = x * form_Jprime_q(s.um()) * x.transpose();
  const Rat half = (s.r % 2 == 0) ? rat(1, 2) : rat(-1, 2);
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) += half * corr(i, j);
  return z;
}

namespace {

std::string first_nonzero_residual(const MatQ& res) {
  for (std::size_t i = 0; i < res.rows(); ++i)
    for (std::size_t j = 0; j < res.cols(); ++j)
      if (!is_zero(res(i, j))) {
        std::ostringstream os;
        os << "residual (" << i + 1 << "," << j + 1 << ") = " << rat_str(res(i, j));
        return os.str();
      }
  return "zero residual";
}

}  // namespace

NilpotentPair make_n(const GroupShape& s, const MatQ& x, const MatQ& z) {
  if (x.rows() != s.ur() || x.cols() != 2 * s.um())
    throw std::invalid_argument("make_n: X must be r x 2m");
  if (z.rows() != s.ur() || z.cols() != s.ur())
    throw std::invalid_argument("make_n: Z must be r x r");
  MatQ res = z - z.transpose();
  if (!res.is_zero())
    throw ConstraintError("make_n: Z not symmetric, " + first_nonzero_residual(res));
  return NilpotentPair{s, x, z};
}

NilpotentPair make_n_from_y(const GroupShape& s, const MatQ& x, const MatQ& y) {
  MatQ z = z_from_xy(s, x, y);
  MatQ res = z - z.transpose();
  if (!res.is_zero())
    throw ConstraintError("make_n_from_y: constraint violated, " + first_nonzero_residual(res));
  // Symmetrize exactly (res is zero, so this is the identity; it keeps the
  // stored Z bit-identical under both constructors).
  return NilpotentPair{s, x, z};
}

MatQ embed_n(const NilpotentPair& n) {
  const GroupShape& s = n.shape;
  const std::size_t r = s.ur(), m2 = 2 * s.um(), dim = 2 * s.un();
  MatQ g = MatQ::identity(dim);
  g.set_block(0, r, n.X);
  g.set_block(0, r + m2, n.Y());
  g.set_block(r, r + m2, theta_rm(s, n.X));
  return g;
}

MatQ embed_nbar(const GroupShape& s, const MatQ& x1, const MatQ& y1) {
  NilpotentPair n = make_n_from_y(s, x1, y1);
  MatQ w0 = w0_matrix(s);
  return w0 * embed_n(n) * w0_inverse(s);
}

FormsSet build_forms(const GroupShape& s) {
  FormsSet f{form_J_q(s.un()), form_Jprime_q(s.un()), MatQ(), MatQ(), MatQ()};
  f.wG = f.Jprime;
  const std::size_t r = s.ur(), m2 = 2 * s.um(), dim = 2 * s.un();
  MatQ wm(dim, dim);
  MatQ jr = form_J_q(r);
  wm.set_block(0, 0, jr);
  MatQ mid = form_Jprime_q(s.um());
  if (s.r % 2 == 1) mid = -mid;
  wm.set_block(r, r, mid);
  wm.set_block(r + m2, r + m2, jr);
  f.wM = wm;
  f.w0 = f.wG * inverse(f.wM);
  return f;
}

MatQ w0_matrix(const GroupShape& s) {
  const std::size_t r = s.ur(), m2 = 2 * s.um(), dim = 2 * s.un();
  MatQ w(dim, dim);
  MatQ ir = MatQ::identity(r);
  w.set_block(0, r + m2, ir);
  w.set_block(r, r, MatQ::identity(m2));
  MatQ low = ir;
  if (s.r % 2 == 1) low = -low;
  w.set_block(r + m2, 0, low);
  return w;
}

MatQ w0_inverse(const GroupShape& s) {
  const std::size_t r = s.ur(), m2 = 2 * s.um(), dim = 2 * s.un();
  MatQ w(dim, dim);
  MatQ ir = MatQ::identity(r);
  MatQ up = ir;
  if (s.r % 2 == 1) up = -up;
  w.set_block(0, r + m2, up);
  w.set_block(r, r, MatQ::identity(m2));
  w.set_block(r + m2, 0, ir);
  return w;
}

MatQ levi_embed(const GroupShape& s, const MatQ& m1, const MatQ& m2) {
  if (m1.rows() != s.ur() || m1.cols() != s.ur())
    throw std::invalid_argument("levi_embed: m1 must be r x r");
  if (m2.rows() != 2 * s.um() || m2.cols() != 2 * s.um())
    throw std::invalid_argument("levi_embed: m2 must be 2m x 2m");
  const std::size_t r = s.ur(), m2s = 2 * s.um(), dim = 2 * s.un();
  MatQ g(dim, dim);
  g.set_block(0, 0, m1);
  g.set_block(r, r, m2);
  g.set_block(r + m2s, r + m2s, theta_r(m1));
  return g;
}

MatQ alpha_covee(const GroupShape& s, const Rat& t) {
  if (is_zero(t)) throw std::invalid_argument("alpha_covee: t must be nonzero");
  const std::size_t r = s.ur(), m2 = 2 * s.um(), dim = 2 * s.un();
  MatQ g = MatQ::identity(dim);
  const Rat tinv = Rat(1) / t;
  for (std::size_t i = 0; i < r; ++i) {
    g(i, i) = t;
    g(r + m2 + i, r + m2 + i) = tinv;
  }
  return g;
}

Rat psi_value(const GroupShape& s, const MatQ& u) {
  if (u.rows() != 2 * s.un() || u.cols() != 2 * s.un())
    throw std::invalid_argument("psi_value: 2n x 2n matrix required");
  Rat acc(0);
  for (int i = 1; i <= s.r - 1; ++i) acc += u(i - 1, i);
  for (int i = s.r + 1; i <= s.r + s.m; ++i) acc += u(i - 1, i);
  return acc;
}

bool psi_compat_check(const GroupShape& s, int samples, Sampler& smp) {
  const MatQ w0 = w0_matrix(s);
  const MatQ w0i = w0_inverse(s);
  for (int k = 0; k < samples; ++k) {
    LeviUnipotent u = random_levi_unipotent(s, smp);
    MatQ g = levi_embed(s, u.u1, u.u2);
    if (psi_value(s, w0 * g * w0i) != psi_value(s, g)) return false;
  }
  return true;
}

RhoPairing rho_pairing(const GroupShape& s) {
  RhoPairing p{};
  p.two_rho_coeff = 2L * s.m + s.r + 1;
  p.tilde_alpha_pairing = s.r;
  p.exponent = static_cast<long>(s.r) * p.two_rho_coeff;
  return p;
}

std::vector<SpRoot> sp_positive_roots(std::size_t m) {
  std::vector<SpRoot> roots;
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = a + 1; b <= m; ++b)
      roots.push_back({SpRoot::Kind::short_minus, a, b});
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = a + 1; b <= m; ++b)
      roots.push_back({SpRoot::Kind::short_plus, a, b});
  for (std::size_t a = 1; a <= m; ++a) roots.push_back({SpRoot::Kind::long_root, a, 0});
  return roots;
}

MatQ random_sp_unipotent(std::size_t m, Sampler& smp) {
  MatQ u = MatQ::identity(2 * m);
  for (const SpRoot& rt : sp_positive_roots(m)) u = u * sp_root_elem<Rat>(m, rt, smp.rational());
  return u;
}

LeviUnipotent random_levi_unipotent(const GroupShape& s, Sampler& smp) {
  return LeviUnipotent{smp.upper_unitriangular(s.ur()), random_sp_unipotent(s.um(), smp)};
}

}  // namespace spcell
