// Test-only reference implementations, kept independent of the library code
// they check: a quartic characteristic-polynomial root finder for the 4x4
// eigenvalue path, and random-state generators.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <complex>
#include <random>

#include "revival/channels.hpp"
#include "revival/qcore.hpp"

namespace revival::testing {

// Characteristic polynomial l^4 + c[0] l^3 + c[1] l^2 + c[2] l + c[3] of a
// 4x4 matrix via the Faddeev-LeVerrier recurrence.
inline std::array<Complex, 4> char_poly(const Mat4& a) {
  std::array<Complex, 4> c{};
  Mat4 m = a;
  c[0] = -m.trace();
  m = a * (m + c[0] * Mat4::Identity());
  c[1] = -m.trace() / 2.0;
  m = a * (m + c[1] * Mat4::Identity());
  c[2] = -m.trace() / 3.0;
  m = a * (m + c[2] * Mat4::Identity());
  c[3] = -m.trace() / 4.0;
  return c;
}

// All four roots of the quartic by Durand-Kerner iteration.
inline std::array<Complex, 4> quartic_roots(const std::array<Complex, 4>& c) {
  const auto eval = [&](Complex z) {
    return (((z + c[0]) * z + c[1]) * z + c[2]) * z + c[3];
  };
  std::array<Complex, 4> z;
  const Complex seed(0.4, 0.9);
  z[0] = seed;
  for (int i = 1; i < 4; ++i) z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i - 1)] * seed;

  for (int iter = 0; iter < 500; ++iter) {
    double shift = 0.0;
    for (int i = 0; i < 4; ++i) {
      Complex denom(1.0, 0.0);
      for (int j = 0; j < 4; ++j) {
        if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      }
      const Complex delta = eval(z[static_cast<std::size_t>(i)]) / denom;
      z[static_cast<std::size_t>(i)] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-15) break;
  }
  return z;
}

// Eigenvalue magnitudes of a 4x4 matrix, descending, clamped below 1e-12,
// entirely through the characteristic polynomial.
inline std::array<double, 4> char_poly_magnitudes(const Mat4& a) {
  const std::array<Complex, 4> roots = quartic_roots(char_poly(a));
  std::array<double, 4> mags{};
  for (int i = 0; i < 4; ++i) {
    const double v = std::abs(roots[static_cast<std::size_t>(i)]);
    mags[static_cast<std::size_t>(i)] = v < 1e-12 ? 0.0 : v;
  }
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return mags;
}

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return {normal(rng), normal(rng)};
}

// Ginibre-ensemble random density matrix.
inline DensityMatrix4 random_density(std::mt19937_64& rng) {
  Mat4 g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      g(i, j) = random_complex(rng);
    }
  }
  const Mat4 w = g * g.adjoint();
  return DensityMatrix4(w / w.trace().real());
}

// Complex value uniform on |z| <= 1.
inline Complex random_in_disk(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double radius = std::sqrt(uniform(rng));
  const double angle = 2.0 * std::numbers::pi * uniform(rng);
  return std::polar(radius, angle);
}

}  // namespace revival::testing
