#include "revival/bell.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace revival {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kGridPitchDeg = 3.75;
constexpr int kGridSize = 48;  // one 180-degree period

Mat2 analyzer_operator(double theta_deg) {
  const double t = theta_deg * kDegToRad;
  // |t><t| - |t+90><t+90| = cos(2t) sigma_z + sin(2t) sigma_x
  return std::cos(2.0 * t) * pauli_z() + std::sin(2.0 * t) * pauli_x();
}

// Linear analyzers only reach the (z, x) block of the correlation matrix:
// E = a . M b with a = (cos 2t1, sin 2t1), b = (cos 2t2, sin 2t2).
Eigen::Matrix2d zx_block(const CorrelationMatrix& t) {
  Eigen::Matrix2d m;
  m << t(2, 2), t(2, 0),
       t(0, 2), t(0, 0);
  return m;
}

double wrap_angle_deg(double theta_deg) {
  double wrapped = std::fmod(theta_deg, 180.0);
  if (wrapped < 0.0) wrapped += 180.0;
  return wrapped;
}

}  // namespace

CorrelationMatrix correlation_matrix(const DensityMatrix4& rho) {
  const std::array<const Mat2*, 3> paulis = {&pauli_x(), &pauli_y(), &pauli_z()};
  CorrelationMatrix t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Mat4 op = tensor(*paulis[static_cast<std::size_t>(i)],
                             *paulis[static_cast<std::size_t>(j)]);
      t(i, j) = (rho.matrix() * op).trace().real();
    }
  }
  return t;
}

double correlation(const DensityMatrix4& rho, double theta1_deg,
                   double theta2_deg) {
  const Mat4 joint =
      tensor(analyzer_operator(theta1_deg), analyzer_operator(theta2_deg));
  return (rho.matrix() * joint).trace().real();
}

double chsh_s(const DensityMatrix4& rho, const AngleSet& angles) {
  return correlation(rho, angles.theta1_deg, angles.theta2_deg) +
         correlation(rho, angles.theta1_deg, angles.theta2p_deg) +
         correlation(rho, angles.theta1p_deg, angles.theta2_deg) -
         correlation(rho, angles.theta1p_deg, angles.theta2p_deg);
}

ChshOptimum optimize_chsh_linear(const DensityMatrix4& rho) {
  const Eigen::Matrix2d m = zx_block(correlation_matrix(rho));

  std::array<Eigen::Vector2d, kGridSize> unit;
  for (int i = 0; i < kGridSize; ++i) {
    const double two_theta = 2.0 * kGridPitchDeg * i * kDegToRad;
    unit[static_cast<std::size_t>(i)] =
        Eigen::Vector2d(std::cos(two_theta), std::sin(two_theta));
  }

  // Exhaustive grid scan. For fixed (t1, t1') the optimal t2 and t2'
  // decouple: S = (a + a') . M b + (a - a') . M b', so maximizing each term
  // over its own grid reproduces the full four-angle scan, with the first
  // maximum in scan order (the lexicographically smallest tuple) winning.
  int best[4] = {0, 0, 0, 0};
  double best_s = -std::numeric_limits<double>::infinity();
  for (int i1 = 0; i1 < kGridSize; ++i1) {
    for (int i1p = 0; i1p < kGridSize; ++i1p) {
      const Eigen::Vector2d wsum =
          m.transpose() * (unit[static_cast<std::size_t>(i1)] +
                           unit[static_cast<std::size_t>(i1p)]);
      const Eigen::Vector2d wdiff =
          m.transpose() * (unit[static_cast<std::size_t>(i1)] -
                           unit[static_cast<std::size_t>(i1p)]);
      int best2 = 0;
      int best2p = 0;
      double v2 = wsum.dot(unit[0]);
      double v2p = wdiff.dot(unit[0]);
      for (int k = 1; k < kGridSize; ++k) {
        const double c2 = wsum.dot(unit[static_cast<std::size_t>(k)]);
        if (c2 > v2) {
          v2 = c2;
          best2 = k;
        }
        const double c2p = wdiff.dot(unit[static_cast<std::size_t>(k)]);
        if (c2p > v2p) {
          v2p = c2p;
          best2p = k;
        }
      }
      if (v2 + v2p > best_s) {
        best_s = v2 + v2p;
        best[0] = i1;
        best[1] = i1p;
        best[2] = best2;
        best[3] = best2p;
      }
    }
  }

  // Coordinate ascent with exact single-angle updates: each angle enters S
  // as a cos(2t) + b sin(2t), maximized at 2t = atan2(b, a).
  std::array<double, 4> two_theta;
  for (int k = 0; k < 4; ++k) {
    two_theta[static_cast<std::size_t>(k)] =
        2.0 * kGridPitchDeg * best[k] * kDegToRad;
  }
  auto vec = [](double two_t) {
    return Eigen::Vector2d(std::cos(two_t), std::sin(two_t));
  };
  double s_value = best_s;
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double before = s_value;
    {
      const Eigen::Vector2d v = m * (vec(two_theta[2]) + vec(two_theta[3]));
      two_theta[0] = std::atan2(v.y(), v.x());
    }
    {
      const Eigen::Vector2d v = m * (vec(two_theta[2]) - vec(two_theta[3]));
      two_theta[1] = std::atan2(v.y(), v.x());
    }
    {
      const Eigen::Vector2d v =
          m.transpose() * (vec(two_theta[0]) + vec(two_theta[1]));
      two_theta[2] = std::atan2(v.y(), v.x());
    }
    {
      const Eigen::Vector2d v =
          m.transpose() * (vec(two_theta[0]) - vec(two_theta[1]));
      two_theta[3] = std::atan2(v.y(), v.x());
    }
    const Eigen::Vector2d wsum =
        m.transpose() * (vec(two_theta[0]) + vec(two_theta[1]));
    const Eigen::Vector2d wdiff =
        m.transpose() * (vec(two_theta[0]) - vec(two_theta[1]));
    s_value = wsum.dot(vec(two_theta[2])) + wdiff.dot(vec(two_theta[3]));
    if (s_value - before < 1e-9) break;
  }

  ChshOptimum result;
  result.angles.theta1_deg = wrap_angle_deg(two_theta[0] / (2.0 * kDegToRad));
  result.angles.theta1p_deg = wrap_angle_deg(two_theta[1] / (2.0 * kDegToRad));
  result.angles.theta2_deg = wrap_angle_deg(two_theta[2] / (2.0 * kDegToRad));
  result.angles.theta2p_deg = wrap_angle_deg(two_theta[3] / (2.0 * kDegToRad));
  result.s = s_value;
  return result;
}

double horodecki_smax(const DensityMatrix4& rho) {
  const CorrelationMatrix t = correlation_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed in CHSH bound");
  }
  const double t1 = std::max(es.eigenvalues()(2), 0.0);
  const double t2 = std::max(es.eigenvalues()(1), 0.0);
  return 2.0 * std::sqrt(t1 + t2);
}

}  // namespace revival
