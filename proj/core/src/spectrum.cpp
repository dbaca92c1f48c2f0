#include "revival/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace revival {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPeakGridStepNm = 1e-3;
constexpr double kPeakFloorFraction = 0.01;

std::complex<double> one_line(const SpectralLine& line, double lambda0_nm,
                              double x, double alpha_scale) {
  const double beta =
      kTwoPi * lambda0_nm * line.sigma_nm / (line.center_nm * line.center_nm);
  const double arg = alpha_scale * beta * x;
  const double decay = std::exp(-arg * arg / 16.0);
  const double phase = alpha_scale * kTwoPi * x * lambda0_nm / line.center_nm;
  return line.amplitude * decay * std::polar(1.0, phase);
}

std::complex<double> kernel_sum(const Spectrum& s, double x, double alpha_scale) {
  std::complex<double> k(0.0, 0.0);
  for (const SpectralLine& line : s.lines()) {
    k += one_line(line, s.lambda0_nm(), x, alpha_scale);
  }
  return k;
}

}  // namespace

Spectrum::Spectrum(std::vector<SpectralLine> lines, double lambda0_nm)
    : lines_(std::move(lines)), lambda0_nm_(lambda0_nm) {
  if (lines_.empty()) {
    throw ConfigError("spectrum needs at least one line");
  }
  if (lambda0_nm_ <= 0.0) {
    throw ConfigError("reference wavelength must be positive");
  }
  double total = 0.0;
  for (const SpectralLine& line : lines_) {
    if (line.amplitude <= 0.0) {
      throw ConfigError("spectral line amplitude must be positive");
    }
    if (line.center_nm <= 0.0) {
      throw ConfigError("spectral line center must be positive");
    }
    if (line.sigma_nm < 0.0) {
      throw ConfigError("spectral line width must be nonnegative");
    }
    total += line.amplitude;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("spectral line amplitudes sum to " + std::to_string(total) +
                      ", expected 1");
  }
}

std::complex<double> kernel(const Spectrum& s, double x) {
  return kernel_sum(s, x, 1.0);
}

std::complex<double> kernel_gaussian(const GaussianEnvelope& e, double x,
                                     double lambda0_nm) {
  Spectrum single({{1.0, e.center_nm, e.sigma_nm}}, lambda0_nm);
  return kernel(single, x);
}

std::complex<double> kernel_literal(const Spectrum& s, double x, double delta_n) {
  return kernel_sum(s, x, delta_n);
}

double airy_transmission(const FPCavity& c, double lambda_nm) {
  if (lambda_nm <= 0.0) {
    throw ConfigError("wavelength must be positive");
  }
  const double one_minus_r = 1.0 - c.reflectivity;
  const double s = std::sin(kTwoPi * c.optical_thickness_nm / lambda_nm);
  return one_minus_r * one_minus_r /
         (one_minus_r * one_minus_r + 4.0 * c.reflectivity * s * s);
}

Spectrum compose_filtered_spectrum(const GaussianEnvelope& e, const FPCavity& c,
                                   int max_lines) {
  if (max_lines < 1) {
    throw ConfigError("max_lines must be at least 1");
  }
  if (e.sigma_nm <= 0.0) {
    throw ConfigError("envelope width must be positive");
  }
  if (c.optical_thickness_nm <= 0.0 || c.reflectivity < 0.0 ||
      c.reflectivity >= 1.0) {
    throw ConfigError("cavity needs positive thickness and reflectivity in [0,1)");
  }

  const double lo = e.center_nm - 4.0 * e.sigma_nm;
  const double hi = e.center_nm + 4.0 * e.sigma_nm;
  const double two_nl = 2.0 * c.optical_thickness_nm;

  // Transmission peaks sit at the cavity resonances lambda = 2 nL / m. Each
  // resonance inside the window yields one candidate line, weighed by the
  // sampled envelope * transmission profile between the flanking
  // anti-resonances 2 nL / (m -+ 1/2).
  const auto m_lo = static_cast<long long>(std::ceil(two_nl / hi - 1e-12));
  const auto m_hi = static_cast<long long>(std::floor(two_nl / lo + 1e-12));

  const auto profile_at = [&](double lam) {
    const double d = lam - e.center_nm;
    const double env = std::exp(-4.0 * d * d / (e.sigma_nm * e.sigma_nm));
    return env * airy_transmission(c, lam);
  };

  std::vector<SpectralLine> found;
  for (long long m = std::max<long long>(m_lo, 1); m <= m_hi; ++m) {
    const double seg_lo =
        std::max(lo, two_nl / (static_cast<double>(m) + 0.5));
    const double seg_hi =
        std::min(hi, two_nl / (static_cast<double>(m) - 0.5));
    if (seg_hi <= seg_lo) continue;

    double mass = 0.0;
    double mean = 0.0;
    const auto steps =
        static_cast<long long>(std::floor((seg_hi - seg_lo) / kPeakGridStepNm));
    for (long long k = 0; k <= steps; ++k) {
      const double lam = seg_lo + static_cast<double>(k) * kPeakGridStepNm;
      const double p = profile_at(lam);
      mass += p;
      mean += p * lam;
    }
    if (mass <= 0.0) continue;
    mean /= mass;
    double var = 0.0;
    for (long long k = 0; k <= steps; ++k) {
      const double lam = seg_lo + static_cast<double>(k) * kPeakGridStepNm;
      var += profile_at(lam) * (lam - mean) * (lam - mean);
    }
    var /= mass;
    found.push_back({mass * kPeakGridStepNm, mean, 2.0 * std::sqrt(2.0 * var)});
  }

  if (found.empty()) {
    throw ConfigError("no transmission peak inside +-4 sigma of the envelope");
  }

  const double strongest =
      std::max_element(found.begin(), found.end(),
                       [](const auto& x, const auto& y) {
                         return x.amplitude < y.amplitude;
                       })->amplitude;
  std::erase_if(found, [&](const SpectralLine& line) {
    return line.amplitude < kPeakFloorFraction * strongest;
  });

  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.amplitude != y.amplitude) return x.amplitude > y.amplitude;
    return x.center_nm < y.center_nm;
  });
  if (found.size() > static_cast<std::size_t>(max_lines)) {
    found.resize(static_cast<std::size_t>(max_lines));
  }
  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.center_nm < y.center_nm; });

  double total = 0.0;
  for (const SpectralLine& line : found) total += line.amplitude;
  for (SpectralLine& line : found) line.amplitude /= total;

  return Spectrum(std::move(found), e.center_nm);
}

}  // namespace revival
