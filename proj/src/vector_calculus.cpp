#include "acmhd/vector_calculus.hpp"

#include <algorithm>
#include <cmath>

namespace acmhd {

namespace {

Eigen::ArrayXcd cmul(const Eigen::ArrayXcd& v, const Eigen::ArrayXd& m) {
  Eigen::ArrayXcd out(v.size());
  out.real() = v.real() * m;
  out.imag() = v.imag() * m;
  return out;
}

}  // namespace

Vec3Field gradient(const Field& f) {
  return Vec3Field(derivative(f, 0), derivative(f, 1), derivative(f, 2));
}

Field divergence(const Vec3Field& f) {
  Eigen::ArrayXcd out =
      derivative(f[0], 0).sp() + derivative(f[1], 1).sp() + derivative(f[2], 2).sp();
  return Field::spectral(f.grid(), std::move(out));
}

Vec3Field curl(const Vec3Field& f) {
  Field c0 = Field::spectral(f.grid(), derivative(f[2], 1).sp() - derivative(f[1], 2).sp());
  Field c1 = Field::spectral(f.grid(), derivative(f[0], 2).sp() - derivative(f[2], 0).sp());
  Field c2 = Field::spectral(f.grid(), derivative(f[1], 0).sp() - derivative(f[0], 1).sp());
  return Vec3Field(std::move(c0), std::move(c1), std::move(c2));
}

Vec3Field cross(const Vec3Field& a, const Vec3Field& b) {
  if (!a.grid().same(b.grid())) throw ContractError("cross: fields on different grids");
  const Grid3& g = a.grid();
  Eigen::ArrayXd c0 = a[1].ph() * b[2].ph() - a[2].ph() * b[1].ph();
  Eigen::ArrayXd c1 = a[2].ph() * b[0].ph() - a[0].ph() * b[2].ph();
  Eigen::ArrayXd c2 = a[0].ph() * b[1].ph() - a[1].ph() * b[0].ph();
  return Vec3Field(Field::physical(g, std::move(c0)), Field::physical(g, std::move(c1)),
                   Field::physical(g, std::move(c2)));
}

HelmholtzSplit helmholtz_split(const Vec3Field& f) {
  const Grid3& g = f.grid();
  const Eigen::ArrayXd& ksq = g.ksq();
  Eigen::ArrayXd inv = (ksq > 0.0).select(ksq.inverse(), 0.0);
  // Q = k (k . v) / |k|^2, real multipliers so the i factors cancel
  Eigen::ArrayXcd kdotv =
      cmul(f[0].sp(), g.k1()) + cmul(f[1].sp(), g.k2()) + cmul(f[2].sp(), g.k3());
  kdotv = cmul(kdotv, inv);
  Eigen::ArrayXcd q0 = cmul(kdotv, g.k1());
  Eigen::ArrayXcd q1 = cmul(kdotv, g.k2());
  Eigen::ArrayXcd q2 = cmul(kdotv, g.k3());
  Vec3Field grad_part(Field::spectral(g, q0), Field::spectral(g, q1), Field::spectral(g, q2));
  Vec3Field sol_part(Field::spectral(g, f[0].sp() - q0), Field::spectral(g, f[1].sp() - q1),
                     Field::spectral(g, f[2].sp() - q2));
  return {std::move(grad_part), std::move(sol_part)};
}

Vec3Field leray_P(const Vec3Field& f) { return helmholtz_split(f).solenoidal_part; }
Vec3Field leray_Q(const Vec3Field& f) { return helmholtz_split(f).gradient_part; }

Field mollify(const Field& f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParamError("mollify: alpha must lie in (0, 1]");
  Eigen::ArrayXd m = (-0.5 * alpha * alpha * f.grid().ksq()).exp();
  return Field::spectral(f.grid(), cmul(f.sp(), m));
}

Vec3Field mollify(const Vec3Field& f, double alpha) {
  return Vec3Field(mollify(f[0], alpha), mollify(f[1], alpha), mollify(f[2], alpha));
}

namespace {

// rows[j][i] = d_j w_i as physical samples
std::array<Vec3Field, 3> grad_rows_physical(const Vec3Field& w) {
  auto row = [&](int j) {
    return Vec3Field(to_physical(derivative(w[0], j)), to_physical(derivative(w[1], j)),
                     to_physical(derivative(w[2], j)));
  };
  return {row(0), row(1), row(2)};
}

// (v . grad) w from physical samples
Vec3Field advect(const Vec3Field& v_ph, const std::array<Vec3Field, 3>& rows) {
  const Grid3& g = v_ph.grid();
  std::array<Eigen::ArrayXd, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = v_ph[0].ph() * rows[0][i].ph() + v_ph[1].ph() * rows[1][i].ph() +
             v_ph[2].ph() * rows[2][i].ph();
  return Vec3Field(Field::physical(g, std::move(out[0])), Field::physical(g, std::move(out[1])),
                   Field::physical(g, std::move(out[2])));
}

double rel_l2(const Field& lhs, const Field& rhs) {
  Field dl = dealias(lhs);
  Field dr = dealias(rhs);
  Field diff = Field::spectral(dl.grid(), dl.sp() - dr.sp());
  double denom = std::max(l2_norm(dl), l2_norm(dr));
  return l2_norm(diff) / std::max(denom, 1e-300);
}

double rel_l2(const Vec3Field& lhs, const Vec3Field& rhs) {
  Vec3Field dl = dealias(lhs);
  Vec3Field dr = dealias(rhs);
  Vec3Field diff(Field::spectral(dl.grid(), dl[0].sp() - dr[0].sp()),
                 Field::spectral(dl.grid(), dl[1].sp() - dr[1].sp()),
                 Field::spectral(dl.grid(), dl[2].sp() - dr[2].sp()));
  double denom = std::max(l2_norm(dl), l2_norm(dr));
  return l2_norm(diff) / std::max(denom, 1e-300);
}

Vec3Field lincomb(double ca, const Vec3Field& a, double cb, const Vec3Field& b) {
  return Vec3Field(Field::physical(a.grid(), ca * a[0].ph() + cb * b[0].ph()),
                   Field::physical(a.grid(), ca * a[1].ph() + cb * b[1].ph()),
                   Field::physical(a.grid(), ca * a[2].ph() + cb * b[2].ph()));
}

}  // namespace

IdentityResiduals vector_identity_residuals(const Vec3Field& A, const Vec3Field& H) {
  if (!A.grid().same(H.grid())) throw ContractError("identity residuals: grids differ");
  const Grid3& g = A.grid();

  Vec3Field A_ph = to_physical(A);
  Vec3Field H_ph = to_physical(H);
  auto gradA = grad_rows_physical(A);
  auto gradH = grad_rows_physical(H);
  Vec3Field curlA_ph = to_physical(curl(A));
  Vec3Field curlH_ph = to_physical(curl(H));

  IdentityResiduals out{};

  // grad |A|^2 = 2 (A.grad)A + 2 A x curl A
  {
    Eigen::ArrayXd asq = A_ph[0].ph().square() + A_ph[1].ph().square() + A_ph[2].ph().square();
    Vec3Field lhs = gradient(to_spectral(Field::physical(g, std::move(asq))));
    Vec3Field adv = advect(A_ph, gradA);
    Vec3Field axc = cross(A_ph, curlA_ph);
    Vec3Field rhs = to_spectral(lincomb(2.0, adv, 2.0, axc));
    out.grad_square = rel_l2(lhs, rhs);
  }

  Vec3Field W_ph = cross(A_ph, H_ph);
  Field divA = divergence(A);
  Field divH = divergence(H);
  Vec3Field W = to_spectral(W_ph);

  // curl(A x H) = A div H - H div A + (H.grad)A - (A.grad)H
  {
    Vec3Field lhs = curl(W);
    Field divA_ph = to_physical(divA);
    Field divH_ph = to_physical(divH);
    Vec3Field hgA = advect(H_ph, gradA);
    Vec3Field agH = advect(A_ph, gradH);
    std::array<Eigen::ArrayXd, 3> r;
    for (int i = 0; i < 3; ++i)
      r[i] = A_ph[i].ph() * divH_ph.ph() - H_ph[i].ph() * divA_ph.ph() + hgA[i].ph() -
             agH[i].ph();
    Vec3Field rhs = to_spectral(Vec3Field(Field::physical(g, std::move(r[0])),
                                          Field::physical(g, std::move(r[1])),
                                          Field::physical(g, std::move(r[2]))));
    out.curl_cross = rel_l2(lhs, rhs);
  }

  // div((A x H) x H) = curl H x H . A + curl(A x H) . H
  {
    Field lhs = divergence(to_spectral(cross(W_ph, H_ph)));
    Vec3Field cHxH = cross(curlH_ph, H_ph);
    Vec3Field curlW_ph = to_physical(curl(W));
    Eigen::ArrayXd r = cHxH[0].ph() * A_ph[0].ph() + cHxH[1].ph() * A_ph[1].ph() +
                       cHxH[2].ph() * A_ph[2].ph() + curlW_ph[0].ph() * H_ph[0].ph() +
                       curlW_ph[1].ph() * H_ph[1].ph() + curlW_ph[2].ph() * H_ph[2].ph();
    Field rhs = to_spectral(Field::physical(g, std::move(r)));
    out.cross_cross_div = rel_l2(lhs, rhs);
  }

  return out;
}

}  // namespace acmhd
