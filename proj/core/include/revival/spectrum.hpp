#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "revival/errors.hpp"

namespace revival {

/// One Gaussian spectral component. amplitude is the relative weight A_j,
/// sigma_nm is the width parameter of exp(-4 (lambda - center)^2 / sigma^2)
/// (not FWHM).
struct SpectralLine {
  double amplitude = 0.0;
  double center_nm = 0.0;
  double sigma_nm = 0.0;
};

/// Discrete spectrum: N >= 1 Gaussian lines whose amplitudes sum to 1
/// (within 1e-9), plus the reference wavelength lambda0.
class Spectrum {
 public:
  Spectrum(std::vector<SpectralLine> lines, double lambda0_nm);

  const std::vector<SpectralLine>& lines() const { return lines_; }
  double lambda0_nm() const { return lambda0_nm_; }

 private:
  std::vector<SpectralLine> lines_;
  double lambda0_nm_;
};

/// Fabry-Perot etalon: optical thickness n*L and mirror reflectivity R.
struct FPCavity {
  double optical_thickness_nm = 0.0;
  double reflectivity = 0.0;
};

struct GaussianEnvelope {
  double center_nm = 0.0;
  double sigma_nm = 0.0;
};

/// Birefringence data of the quartz plates. Recorded for the strict-literal
/// kernel mode; the default kernel treats the abscissa as an optical delay
/// in units of lambda0 and does not consume delta_n.
struct BirefringenceRecord {
  double delta_n = 0.0;
  std::optional<double> n_ordinary;
  std::optional<double> n_extraordinary;
};

/// Complex decoherence kernel at delay x (in units of lambda0):
///
///   kappa(x) = sum_j A_j exp(-(beta_j x)^2 / 16) exp(i 2 pi x lambda0 / lambda_j)
///
/// with beta_j = 2 pi lambda0 sigma_j / lambda_j^2. kappa(0) = 1 and
/// |kappa| <= 1 for every valid spectrum.
std::complex<double> kernel(const Spectrum& s, double x);

/// Single-Gaussian specialization of kernel with reference wavelength
/// lambda0_nm.
std::complex<double> kernel_gaussian(const GaussianEnvelope& e, double x,
                                     double lambda0_nm);

/// Strict-literal variant: the abscissa is read as a plate thickness in
/// lambda0 units and the phase alpha = x lambda0 delta_n / c, so both the
/// decay and the phase pick up a factor delta_n. Kept for comparison with
/// the default delay reading.
std::complex<double> kernel_literal(const Spectrum& s, double x, double delta_n);

/// Airy transmission T = (1-R)^2 / ((1-R)^2 + 4 R sin^2(2 pi nL / lambda)).
/// T = 1 exactly when the optical thickness is an integer number of half
/// wavelengths.
double airy_transmission(const FPCavity& c, double lambda_nm);

/// Builds the discrete spectrum transmitted by a cavity under a Gaussian
/// envelope. One candidate line per cavity resonance 2 nL / m inside
/// center +- 4 sigma: the envelope * transmission profile is sampled on a
/// 0.001 nm grid between the flanking anti-resonances, the integrated
/// profile gives the amplitude, and the width is 2 sqrt(2) times the profile
/// standard deviation. Lines below 1% of the strongest are dropped, the
/// max_lines largest are kept and renormalized to sum 1. Throws ConfigError
/// when no resonance falls inside the window.
Spectrum compose_filtered_spectrum(const GaussianEnvelope& e, const FPCavity& c,
                                   int max_lines);

}  // namespace revival
