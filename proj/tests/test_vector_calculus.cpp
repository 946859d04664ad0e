#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "acmhd/random_fields.hpp"
#include "acmhd/vector_calculus.hpp"

using namespace acmhd;

namespace {

constexpr double kPi = 3.14159265358979323846;

double diff_norm(const Vec3Field& a, const Vec3Field& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i) s += (a[i].sp() - b[i].sp()).abs2().sum();
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("divergence of a curl vanishes") {
  Grid3 g(32, 2 * kPi);
  Vec3Field v = random_vector(g, 9, 1.0, 3);
  Field d = divergence(curl(v));
  CHECK(d.sp().abs().maxCoeff() < 1e-13);
}

TEST_CASE("curl of a gradient vanishes") {
  Grid3 g(32, 2 * kPi);
  Field f = random_scalar(g, 9, 1.0, 4);
  Vec3Field c = curl(gradient(f));
  for (int i = 0; i < 3; ++i) CHECK(c[i].sp().abs().maxCoeff() < 1e-13);
}

TEST_CASE("gradient and divergence compose to the Laplacian") {
  Grid3 g(32, 2 * kPi);
  Field f = random_scalar(g, 9, 1.0, 5);
  Field lhs = divergence(gradient(f));
  Field rhs = laplacian(f);
  CHECK((lhs.sp() - rhs.sp()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("Helmholtz split is an orthogonal resolution of the identity") {
  Grid3 g(32, 2 * kPi);
  Vec3Field v = random_vector(g, 9, 1.0, 6);
  HelmholtzSplit hs = helmholtz_split(v);

  // parts sum back to v
  double rel = 0;
  for (int i = 0; i < 3; ++i)
    rel += (hs.gradient_part[i].sp() + hs.solenoidal_part[i].sp() - v[i].sp()).abs2().sum();
  CHECK(std::sqrt(rel) < 1e-13);

  // solenoidal part is divergence free, gradient part is curl free
  CHECK(divergence(hs.solenoidal_part).sp().abs().maxCoeff() < 1e-13);
  Vec3Field cg = curl(hs.gradient_part);
  for (int i = 0; i < 3; ++i) CHECK(cg[i].sp().abs().maxCoeff() < 1e-13);

  // projections are idempotent and mutually annihilating
  CHECK(diff_norm(leray_P(hs.solenoidal_part), hs.solenoidal_part) < 1e-13);
  CHECK(diff_norm(leray_Q(hs.gradient_part), hs.gradient_part) < 1e-13);
  Vec3Field pq = leray_P(hs.gradient_part);
  for (int i = 0; i < 3; ++i) CHECK(pq[i].sp().abs().maxCoeff() < 1e-13);
}

TEST_CASE("a pure gradient field is all Q, a curl is all P") {
  Grid3 g(32, 2 * kPi);
  Vec3Field grad = gradient(random_scalar(g, 9, 1.0, 7));
  CHECK(diff_norm(leray_Q(grad), grad) < 1e-13);
  Vec3Field rot = curl(random_vector(g, 9, 1.0, 8));
  CHECK(diff_norm(leray_P(rot), rot) < 1e-13);
}

TEST_CASE("the mean rides with the solenoidal part") {
  Grid3 g(16, 2 * kPi);
  Vec3Field v(Field::physical(g, Eigen::ArrayXd::Constant(g.size(), 2.0)),
              Field::zeros(g, Rep::physical), Field::zeros(g, Rep::physical));
  Vec3Field p = leray_P(to_spectral(v));
  CHECK(mean(p[0]) == doctest::Approx(2.0).epsilon(1e-14));
  Vec3Field q = leray_Q(to_spectral(v));
  CHECK(std::abs(mean(q[0])) < 1e-14);
}

TEST_CASE("cross product matches hand computation") {
  Grid3 g(16, 2 * kPi);
  auto c = [&](double v) { return Field::physical(g, Eigen::ArrayXd::Constant(g.size(), v)); };
  Vec3Field a(c(1), c(2), c(3));
  Vec3Field b(c(4), c(5), c(6));
  Vec3Field axb = cross(a, b);
  CHECK(axb[0].ph()[0] == doctest::Approx(-3.0));
  CHECK(axb[1].ph()[0] == doctest::Approx(6.0));
  CHECK(axb[2].ph()[0] == doctest::Approx(-3.0));
}

TEST_CASE("mollifier damps high modes and respects the width parameter") {
  Grid3 g(32, 2 * kPi);
  Field f = to_spectral(Field::physical(g, g.x1().sin() + (5.0 * g.x2()).sin()));
  Field m = mollify(f, 0.5);
  // multiplier exp(-k^2 a^2 / 2): mode 1 -> exp(-1/8), mode 5 -> exp(-25/8)
  double lo = std::abs(m.sp()[1]) / std::abs(f.sp()[1]);
  CHECK(lo == doctest::Approx(std::exp(-0.125)).epsilon(1e-12));
  double hi_idx = 5;
  double hi = std::abs(m.sp()[(int)(32 * hi_idx)]) / std::abs(f.sp()[(int)(32 * hi_idx)]);
  CHECK(hi == doctest::Approx(std::exp(-25.0 / 8.0)).epsilon(1e-12));
  CHECK(l2_norm(m) < l2_norm(f));

  CHECK_THROWS_AS(mollify(f, 0.0), ParamError);
  CHECK_THROWS_AS(mollify(f, 1.5), ParamError);
}

TEST_CASE("vector identities hold to rounding on tightly banded fields") {
  Grid3 g(32, 2 * kPi);
  for (int trial = 0; trial < 3; ++trial) {
    Vec3Field A = random_vector(g, 6, 1.0, 100 + 2 * trial);
    Vec3Field H = random_vector(g, 6, 1.0, 101 + 2 * trial);
    IdentityResiduals r = vector_identity_residuals(A, H);
    CHECK(r.grad_square < 1e-11);
    CHECK(r.curl_cross < 1e-11);
    CHECK(r.cross_cross_div < 1e-11);
  }
}

TEST_CASE("cubic aliasing appears exactly past the documented band") {
  // at kmax = n/3 quadratic products stay exact on the retained band, but
  // triple sums (up to 3n/3 = n) fold back inside it, so only the cubic
  // identity degrades
  Grid3 g(32, 2 * kPi);
  Vec3Field A = random_vector(g, 10, 1.0, 200);
  Vec3Field H = random_vector(g, 10, 1.0, 201);
  IdentityResiduals r = vector_identity_residuals(A, H);
  CHECK(r.grad_square < 1e-11);
  CHECK(r.curl_cross < 1e-11);
  CHECK(r.cross_cross_div > 1e-7);
}
