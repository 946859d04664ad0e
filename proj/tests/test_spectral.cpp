#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "acmhd/random_fields.hpp"
#include "acmhd/spectral.hpp"

using namespace acmhd;

namespace {

constexpr double kPi = 3.14159265358979323846;

int idx(const Grid3& g, int s1, int s2, int s3) {
  const int n = g.n();
  auto fold = [n](int s) { return ((s % n) + n) % n; };
  return fold(s1) + n * (fold(s2) + n * fold(s3));
}

Eigen::ArrayXd white_noise(Eigen::Index size, unsigned seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  Eigen::ArrayXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = normal(engine);
  return v;
}

Vec3Field taylor_green(const Grid3& g) {
  Eigen::ArrayXd sx = g.x1().sin(), cx = g.x1().cos();
  Eigen::ArrayXd sy = g.x2().sin(), cy = g.x2().cos();
  Eigen::ArrayXd cz = g.x3().cos();
  return Vec3Field(Field::physical(g, sx * cy * cz), Field::physical(g, -cx * sy * cz),
                   Field::zeros(g, Rep::physical));
}

}  // namespace

TEST_CASE("grid layout: x varies fastest, one point per cell") {
  Grid3 g(16, 2 * kPi);
  CHECK(g.size() == 16 * 16 * 16);
  CHECK(g.dx() == doctest::Approx(2 * kPi / 16).epsilon(1e-15));
  CHECK(g.x1()[1] == doctest::Approx(g.dx()));
  CHECK(g.x2()[16] == doctest::Approx(g.dx()));
  CHECK(g.x3()[16 * 16] == doctest::Approx(g.dx()));
  CHECK(g.x1()[0] == 0.0);
  CHECK(g.dealias_cutoff() == 5);

  CHECK_THROWS_AS(Grid3(12, 2 * kPi), ParamError);  // not a power of two
  CHECK_THROWS_AS(Grid3(4, 2 * kPi), ParamError);   // too small
  CHECK_THROWS_AS(Grid3(16, -1.0), ParamError);
}

TEST_CASE("transform roundtrip reproduces white noise") {
  Grid3 g(32, 2 * kPi);
  Eigen::ArrayXd v = white_noise(g.size(), 7);
  Field f = Field::physical(g, v);
  Field back = to_physical(to_spectral(f));
  double rel = std::sqrt((back.ph() - v).square().sum() / v.square().sum());
  CHECK(rel < 1e-13);
}

TEST_CASE("constant field concentrates at the zero mode") {
  Grid3 g(16, 2 * kPi);
  Field f = to_spectral(Field::physical(g, Eigen::ArrayXd::Constant(g.size(), 2.5)));
  CHECK(std::abs(f.sp()[0] - 2.5) < 1e-14);
  Eigen::ArrayXcd rest = f.sp();
  rest[0] = 0;
  CHECK(rest.abs().maxCoeff() < 1e-14);
  CHECK(mean(f) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("sine lands on the two conjugate modes with weight 1/2") {
  Grid3 g(16, 2 * kPi);
  Field f = to_spectral(Field::physical(g, g.x1().sin()));
  const std::complex<double> plus = f.sp()[idx(g, 1, 0, 0)];
  const std::complex<double> minus = f.sp()[idx(g, -1, 0, 0)];
  CHECK(std::abs(plus - std::complex<double>(0, -0.5)) < 1e-14);
  CHECK(std::abs(minus - std::complex<double>(0, 0.5)) < 1e-14);
}

TEST_CASE("derivatives pick the right axis") {
  Grid3 g(16, 2 * kPi);
  Field f = to_spectral(Field::physical(g, g.x2().sin() * g.x3().cos()));
  Field d2 = to_physical(derivative(f, 1));
  Field d3 = to_physical(derivative(f, 2));
  Eigen::ArrayXd want2 = g.x2().cos() * g.x3().cos();
  Eigen::ArrayXd want3 = -g.x2().sin() * g.x3().sin();
  CHECK((d2.ph() - want2).abs().maxCoeff() < 1e-13);
  CHECK((d3.ph() - want3).abs().maxCoeff() < 1e-13);
  CHECK_THROWS_AS(derivative(f, 3), ParamError);
}

TEST_CASE("box scaling enters the wavenumbers") {
  Grid3 g(16, 4 * kPi);  // fundamental wavenumber 1/2
  Field f = to_spectral(Field::physical(g, (0.5 * g.x1()).sin()));
  Field d = to_physical(derivative(f, 0));
  Eigen::ArrayXd want = 0.5 * (0.5 * g.x1()).cos();
  CHECK((d.ph() - want).abs().maxCoeff() < 1e-13);
}

TEST_CASE("the Nyquist mode is inert under differentiation") {
  Grid3 g(32, 2 * kPi);
  CHECK(g.k(0)[idx(g, 16, 0, 0)] == 0.0);
  Field f = to_spectral(Field::physical(g, (16.0 * g.x1()).cos()));
  CHECK(std::abs(f.sp()[idx(g, 16, 0, 0)]) > 0.99);  // all mass sits there
  Field d = derivative(f, 0);
  CHECK(d.sp().abs().maxCoeff() < 1e-14);
}

TEST_CASE("dealiasing keeps the band and kills the rest") {
  Grid3 g(16, 2 * kPi);  // cutoff 5
  Eigen::ArrayXcd v = Eigen::ArrayXcd::Zero(g.size());
  v[idx(g, 5, -5, 5)] = 1.0;
  v[idx(g, 6, 0, 0)] = 1.0;
  v[idx(g, 0, 2, -6)] = 1.0;
  Field f = dealias(Field::spectral(g, v));
  CHECK(std::abs(f.sp()[idx(g, 5, -5, 5)] - 1.0) < 1e-15);
  CHECK(std::abs(f.sp()[idx(g, 6, 0, 0)]) == 0.0);
  CHECK(std::abs(f.sp()[idx(g, 0, 2, -6)]) == 0.0);
}

TEST_CASE("Parseval: Taylor-Green norms match closed forms") {
  Grid3 g(32, 2 * kPi);
  Vec3Field u = taylor_green(g);
  const double l2 = std::sqrt(2 * kPi * kPi * kPi);
  CHECK(l2_norm(u) == doctest::Approx(l2).epsilon(1e-13));
  CHECK(l2_norm(to_spectral(u)) == doctest::Approx(l2).epsilon(1e-13));

  const double l4 = std::pow(15.0 * kPi * kPi * kPi / 16.0, 0.25);
  CHECK(lp_norm(u, 4) == doctest::Approx(l4).epsilon(1e-13));
  CHECK(lp_norm(u, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(lp_norm(u, 0.5), ParamError);
}

TEST_CASE("lp agrees with l2 at p = 2") {
  Grid3 g(16, 2 * kPi);
  Field f = Field::physical(g, white_noise(g.size(), 11));
  CHECK(lp_norm(f, 2) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
}

TEST_CASE("Sobolev multipliers on a single harmonic") {
  Grid3 g(16, 2 * kPi);
  Field f = to_spectral(Field::physical(g, (2.0 * g.x1()).sin()));
  const double base = l2_norm(f);
  CHECK(sobolev_norm(f, 1.5, Sobolev::homogeneous) ==
        doctest::Approx(std::pow(2.0, 1.5) * base).epsilon(1e-12));
  CHECK(sobolev_norm(f, -2.0, Sobolev::homogeneous) ==
        doctest::Approx(0.25 * base).epsilon(1e-12));
  CHECK(sobolev_norm(f, 1.5, Sobolev::inhomogeneous) ==
        doctest::Approx(std::pow(5.0, 0.75) * base).epsilon(1e-12));
  CHECK(sobolev_norm(f, 0.0, Sobolev::homogeneous) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("inverse Laplacian inverts the Laplacian away from the mean") {
  Grid3 g(16, 2 * kPi);
  Field sine = to_spectral(Field::physical(g, g.x1().sin()));
  Field g_of = to_physical(inverse_laplacian(laplacian(sine)));
  CHECK((g_of.ph() - g.x1().sin()).abs().maxCoeff() < 1e-13);

  const long before = warnings().zero_mode_projected.load();
  Field with_mean =
      to_spectral(Field::physical(g, g.x1().sin() + Eigen::ArrayXd::Constant(g.size(), 1.0)));
  Field dropped = inverse_laplacian(with_mean);
  CHECK(warnings().zero_mode_projected.load() == before + 1);
  CHECK(std::abs(dropped.sp()[0]) == 0.0);
}

TEST_CASE("negative homogeneous order on a mean-free field is quiet") {
  Grid3 g(16, 2 * kPi);
  const long before = warnings().zero_mode_projected.load();
  Field f = to_spectral(Field::physical(g, g.x1().sin()));
  sobolev_norm(f, -1.0, Sobolev::homogeneous);
  CHECK(warnings().zero_mode_projected.load() == before);
}

TEST_CASE("random fields: normalized, banded, reproducible") {
  Grid3 g(32, 2 * kPi);
  Field a = random_scalar(g, 3, 0.0, 42);
  Field b = random_scalar(g, 3, 0.0, 42);
  Field c = random_scalar(g, 3, 0.0, 43);
  CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((a.sp() - b.sp()).abs().maxCoeff() == 0.0);
  CHECK((a.sp() - c.sp()).abs().maxCoeff() > 1e-3);
  CHECK(std::abs(a.sp()[0]) == 0.0);
  CHECK(std::abs(a.sp()[idx(g, 4, 0, 0)]) == 0.0);
  CHECK(std::abs(a.sp()[idx(g, 2, -4, 1)]) == 0.0);
  CHECK_THROWS_AS(random_scalar(g, 0, 0.0, 1), ParamError);
  CHECK_THROWS_AS(random_scalar(g, 16, 0.0, 1), ParamError);
}

TEST_CASE("spectral slope shapes the shell profile") {
  Grid3 g(32, 2 * kPi);
  Field f = random_scalar(g, 8, 2.0, 5);
  // |f^(k)| ~ |k|^-2: average the six axis modes at radius 2 and radius 8
  auto shell = [&](int r) {
    double s = 0;
    for (int a = 0; a < 3; ++a)
      for (int sign : {-1, 1}) {
        int m[3] = {0, 0, 0};
        m[a] = sign * r;
        s += std::abs(f.sp()[idx(g, m[0], m[1], m[2])]);
      }
    return s / 6;
  };
  CHECK(shell(2) / shell(8) > 4.0);  // expect about 16
}

TEST_CASE("representation misuse is rejected") {
  Grid3 g(16, 2 * kPi);
  Field ph = Field::zeros(g, Rep::physical);
  Field sp = Field::zeros(g, Rep::spectral);
  CHECK_THROWS_AS(ph.sp(), ContractError);
  CHECK_THROWS_AS(sp.ph(), ContractError);
  CHECK_THROWS_AS(derivative(ph, 0), ContractError);
  CHECK_THROWS_AS(Field::physical(g, Eigen::ArrayXd::Zero(7)), ContractError);
}
