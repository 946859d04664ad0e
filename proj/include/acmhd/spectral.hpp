#pragma once

#include "acmhd/field.hpp"

namespace acmhd {

// Transforms. Forward divides by n^3 so the k=0 coefficient is the mean;
// inverse is the plain synthesis sum and returns the real part.
Field to_spectral(const Field& f);
Field to_physical(const Field& f);
Vec3Field to_spectral(const Vec3Field& f);
Vec3Field to_physical(const Vec3Field& f);

// Spectral-in, spectral-out operators. The Nyquist mode is dropped by all
// of them via the grid's zeroed wavenumber tables.
Field derivative(const Field& f, int axis);
Field laplacian(const Field& f);
// divides by -|k|^2, zeroing every |k|=0 mode; a destroyed nonzero mean
// increments warnings().zero_mode_projected
Field inverse_laplacian(const Field& f);

enum class Sobolev { homogeneous, inhomogeneous };
// homogeneous: |k|^s (|k|=0 modes zeroed); inhomogeneous: (1+|k|^2)^(s/2)
Field sobolev_multiplier(const Field& f, double s, Sobolev flavor);

// 2/3-rule truncation: zero every mode with any |axis index| > n/3
Field dealias(const Field& f);
Vec3Field dealias(const Vec3Field& f);

// Norms over the box. l2 accepts either representation (Parseval);
// lp requires physical samples and accepts p = infinity.
double l2_norm(const Field& f);
double l2_norm(const Vec3Field& f);
double lp_norm(const Field& f, double p);
double lp_norm(const Vec3Field& f, double p);  // pointwise euclidean magnitude
double sobolev_norm(const Field& f, double s, Sobolev flavor);
double sobolev_norm(const Vec3Field& f, double s, Sobolev flavor);
double mean(const Field& f);

// componentwise helpers
Vec3Field apply(const Vec3Field& f, Field (*op)(const Field&));

}  // namespace acmhd
