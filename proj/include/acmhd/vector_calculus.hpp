#pragma once

#include "acmhd/spectral.hpp"

namespace acmhd {

// Spectral-in, spectral-out differential operators.
Vec3Field gradient(const Field& f);
Field divergence(const Vec3Field& f);
Vec3Field curl(const Vec3Field& f);

// Pointwise cross product of physical fields.
Vec3Field cross(const Vec3Field& a, const Vec3Field& b);

// Orthogonal splitting of a spectral field into gradient and solenoidal
// parts. The k=0 mode (the mean) goes with the solenoidal part.
struct HelmholtzSplit {
  Vec3Field gradient_part;
  Vec3Field solenoidal_part;
};
HelmholtzSplit helmholtz_split(const Vec3Field& f);
Vec3Field leray_P(const Vec3Field& f);  // solenoidal part
Vec3Field leray_Q(const Vec3Field& f);  // gradient part

// Convolution with the periodized gaussian of width alpha, realized as the
// multiplier exp(-|k|^2 alpha^2 / 2). alpha must lie in (0, 1].
Field mollify(const Field& f, double alpha);
Vec3Field mollify(const Vec3Field& f, double alpha);

// Relative L2 residuals of three vector identities on band-limited input,
// each computed as |lhs - rhs| / max(|lhs|, |rhs|):
//   grad|A|^2            = 2 (A.grad)A + 2 A x curl A
//   curl(A x H)          = A div H - H div A + (H.grad)A - (A.grad)H
//   div((A x H) x H)     = curl H x H . A + curl(A x H) . H
// Both sides are dealiased before comparison, so the residuals sit at
// rounding level only when the inputs are band-limited tightly enough that
// the cubic terms stay alias-free on the retained band (max index <= 2n/9).
struct IdentityResiduals {
  double grad_square;
  double curl_cross;
  double cross_cross_div;
};
IdentityResiduals vector_identity_residuals(const Vec3Field& A, const Vec3Field& H);

}  // namespace acmhd
