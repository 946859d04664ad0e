#pragma once

#include <cstdint>

#include "acmhd/field.hpp"

namespace acmhd {

// Zero-mean random band-limited fields, unit L2 norm, deterministic in the
// seed. kmax bounds the |mode index| per axis (1 <= kmax <= n/2 - 1); slope
// shapes the magnitude profile |f^(k)| ~ |k|^(-slope) (0 = white).
Field random_scalar(const Grid3& g, int kmax, double slope, std::uint64_t seed);
Vec3Field random_vector(const Grid3& g, int kmax, double slope, std::uint64_t seed);
Vec3Field random_solenoidal(const Grid3& g, int kmax, double slope, std::uint64_t seed);
Vec3Field random_gradient(const Grid3& g, int kmax, double slope, std::uint64_t seed);

}  // namespace acmhd
