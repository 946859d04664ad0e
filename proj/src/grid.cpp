#include "acmhd/grid.hpp"

#include <cmath>

#include "acmhd/errors.hpp"

namespace acmhd {

Warnings& warnings() {
  static Warnings w;
  return w;
}

Grid3::Grid3(int n, double box) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw ParamError("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(box > 0.0)) throw ParamError("box length must be positive");

  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->box = box;
  impl->size = static_cast<Eigen::Index>(n) * n * n;

  const double scale = 2.0 * M_PI / box;
  Eigen::ArrayXd kax(n);
  for (int i = 0; i < n; ++i) {
    int s = i <= n / 2 - 1 ? i : i - n;
    kax[i] = s == -n / 2 ? 0.0 : scale * s;  // Nyquist zeroed
  }
  Eigen::ArrayXd xax(n);
  for (int i = 0; i < n; ++i) xax[i] = box * i / n;

  const int kc = n / 3;
  for (int a = 0; a < 3; ++a) {
    impl->k[a].resize(impl->size);
    impl->x[a].resize(impl->size);
  }
  impl->ksq.resize(impl->size);
  impl->mask.resize(impl->size);

  Eigen::Index idx = 0;
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix, ++idx) {
        impl->k[0][idx] = kax[ix];
        impl->k[1][idx] = kax[iy];
        impl->k[2][idx] = kax[iz];
        impl->x[0][idx] = xax[ix];
        impl->x[1][idx] = xax[iy];
        impl->x[2][idx] = xax[iz];
        impl->ksq[idx] = kax[ix] * kax[ix] + kax[iy] * kax[iy] + kax[iz] * kax[iz];
        int sx = ix <= n / 2 - 1 ? ix : ix - n;
        int sy = iy <= n / 2 - 1 ? iy : iy - n;
        int sz = iz <= n / 2 - 1 ? iz : iz - n;
        bool keep = std::abs(sx) <= kc && std::abs(sy) <= kc && std::abs(sz) <= kc;
        impl->mask[idx] = keep ? 1.0 : 0.0;
      }

  impl_ = std::move(impl);
}

}  // namespace acmhd
