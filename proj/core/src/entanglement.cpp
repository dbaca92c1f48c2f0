#include "revival/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace revival {

namespace {

const Mat4& sigma_y_pair() {
  static const Mat4 m = tensor(pauli_y(), pauli_y());
  return m;
}

}  // namespace

double StokesVector::norm() const {
  return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
}

ChiSpectrum chi_spectrum(const DensityMatrix4& rho) {
  const Mat4& y = sigma_y_pair();
  const Mat4 product = rho.matrix() * y * rho.matrix().conjugate() * y;
  return ChiSpectrum{eig_magnitudes(product)};
}

double gamma(const DensityMatrix4& rho) {
  const ChiSpectrum chi = chi_spectrum(rho);
  return std::sqrt(chi.chi[0]) - std::sqrt(chi.chi[1]) - std::sqrt(chi.chi[2]) -
         std::sqrt(chi.chi[3]);
}

double concurrence(const DensityMatrix4& rho) {
  return std::max(0.0, gamma(rho));
}

double concurrence_partial_closed(double kappa_a, double kappa_b) {
  return std::max(0.0,
                  0.5 * (kappa_a + kappa_a * kappa_b + kappa_b - 1.0));
}

StokesVector stokes_b_given_a_horizontal(const DensityMatrix4& rho) {
  const DensityMatrix2 rho_b = condition_on_a_horizontal(rho);
  StokesVector s;
  s.s1 = 2.0 * rho_b(0, 0).real() - 1.0;
  s.s2 = (rho_b(0, 1) + rho_b(1, 0)).real();
  s.s3 = (Complex(0.0, 1.0) * (rho_b(0, 1) - rho_b(1, 0))).real();
  return s;
}

double degree_of_polarization(const DensityMatrix4& rho) {
  return stokes_b_given_a_horizontal(rho).norm();
}

CrossingReport find_crossings(const std::function<double(double)>& gamma_curve,
                              double x_min, double x_max, double step) {
  if (step <= 0.0) {
    throw ConfigError("crossing scan step must be positive");
  }
  if (x_min > x_max) {
    throw ConfigError("crossing scan range is empty");
  }

  CrossingReport report;
  double prev_x = x_min;
  double prev_g = gamma_curve(x_min);
  for (double x = x_min + step; x <= x_max + 0.5 * step; x += step) {
    const double cur_x = std::min(x, x_max);
    const double cur_g = gamma_curve(cur_x);
    if (prev_g * cur_g < 0.0) {
      double lo = prev_x;
      double hi = cur_x;
      double g_lo = prev_g;
      while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = gamma_curve(mid);
        if (g_lo * g_mid <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          g_lo = g_mid;
        }
      }
      report.crossings.push_back(
          {0.5 * (lo + hi),
           prev_g > 0.0 ? CrossingKind::death : CrossingKind::revival});
    }
    prev_x = cur_x;
    prev_g = cur_g;
    if (cur_x >= x_max) break;
  }
  return report;
}

}  // namespace revival
