#pragma once

#include <array>
#include <functional>
#include <vector>

#include "revival/qcore.hpp"

namespace revival {

/// Stokes parameters of a single polarization qubit.
struct StokesVector {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  double norm() const;
};

/// Eigenvalues of rho (sy(x)sy) rho* (sy(x)sy), descending and nonnegative.
struct ChiSpectrum {
  std::array<double, 4> chi{};
};

enum class CrossingKind { death, revival };

struct Crossing {
  double x = 0.0;
  CrossingKind kind = CrossingKind::death;
};

/// Locations where a Gamma curve changes sign, in increasing x.
struct CrossingReport {
  std::vector<Crossing> crossings;
};

ChiSpectrum chi_spectrum(const DensityMatrix4& rho);

/// Gamma = sqrt(chi1) - sqrt(chi2) - sqrt(chi3) - sqrt(chi4).
double gamma(const DensityMatrix4& rho);

/// Wootters concurrence C = max(0, Gamma), in [0, 1].
double concurrence(const DensityMatrix4& rho);

/// Closed form for the partial family with real parameters in [0, 1]:
/// C = max(0, (ka + ka kb + kb - 1) / 2).
double concurrence_partial_closed(double kappa_a, double kappa_b);

/// Stokes vector of photon b conditioned on outcome H for photon a:
/// s1 = 2 <H|rho_b|H> - 1, s2 = <H|rho_b|V> + <V|rho_b|H>,
/// s3 = i (<H|rho_b|V> - <V|rho_b|H>).
StokesVector stokes_b_given_a_horizontal(const DensityMatrix4& rho);

/// Degree of polarization P = |s|; equals |kappa_b| on the partial family.
double degree_of_polarization(const DensityMatrix4& rho);

/// Scans gamma_curve on [x_min, x_max] with the given step, brackets strict
/// sign changes and bisects each to an interval below 1e-4. A +to- change is
/// a death, -to+ a revival. Touching zero without crossing is not reported.
CrossingReport find_crossings(const std::function<double(double)>& gamma_curve,
                              double x_min, double x_max, double step);

}  // namespace revival
