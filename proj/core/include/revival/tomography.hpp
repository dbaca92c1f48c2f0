#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "revival/qcore.hpp"

namespace revival {

/// Analyzer settings used per photon: H, V, D = (|H>+|V>)/sqrt(2),
/// R = (|H>+i|V>)/sqrt(2).
enum class Analyzer { H, V, D, R };

char analyzer_label(Analyzer a);
Analyzer analyzer_from_label(char label);
Eigen::Vector2cd analyzer_ket(Analyzer a);

/// One coincidence measurement: projector onto analyzer_a (x) analyzer_b.
struct MeasurementSetting {
  int id = 0;
  Analyzer analyzer_a = Analyzer::H;
  Analyzer analyzer_b = Analyzer::H;

  Mat4 projector() const;
};

/// The 16 coincidence settings {H,V,D,R} x {H,V,D,R} in row-major id order
/// (id = 4 * a + b, setting 0 = (H,H)). Informationally complete.
const std::array<MeasurementSetting, 16>& settings_16();

struct CountRecord {
  int setting_id = 0;
  long long count = 0;
};

/// Simulated coincidence counts, one record per setting in id order. The
/// expected count is n_per_setting * <projector>. With noiseless set, counts
/// are round(mu); otherwise each is one Poisson(mu) draw.
///
/// The noise stream is frozen for reproducibility: a single std::mt19937_64
/// seeded with seed, consumed in setting order; uniforms are
/// (engine() >> 11) * 2^-53 and each Poisson draw uses sequential-search
/// inversion on mu split into chunks of at most 500.
std::vector<CountRecord> simulate_counts(const DensityMatrix4& rho,
                                         long long n_per_setting,
                                         std::uint64_t seed, bool noiseless);

/// Linear inversion: the unique Hermitian matrix reproducing the measured
/// frequencies under the dual basis of the 16 projectors, trace-normalized.
/// May have negative eigenvalues. Throws ProtocolError unless every setting
/// appears exactly once and the total count is positive.
Mat4 linear_reconstruct(const std::vector<CountRecord>& counts);

/// Eigenvalue clamp to the PSD cone plus trace renormalization.
DensityMatrix4 psd_projected(const Mat4& m);

/// Poisson negative log-likelihood sum_s (mu_s - c_s ln mu_s) of a state
/// given the counts, with the per-setting exposure profiled out as
/// n = sum_s c_s / sum_s p_s.
double poisson_nll(const std::vector<CountRecord>& counts,
                   const DensityMatrix4& rho);

/// Maximum-likelihood reconstruction over rho = G'G / tr(G'G) with G lower
/// triangular (real diagonal; 16 real parameters), minimizing the profiled
/// Poisson negative log-likelihood by gradient descent with Barzilai-Borwein
/// steps and Armijo backtracking. Starts from the PSD-projected linear
/// estimate, so the achieved NLL never exceeds the starting one. Budget:
/// 1e5 NLL evaluations; exceeding it raises NumericError.
DensityMatrix4 mle_reconstruct(const std::vector<CountRecord>& counts);

}  // namespace revival
