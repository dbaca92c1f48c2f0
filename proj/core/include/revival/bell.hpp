#pragma once

#include "revival/qcore.hpp"

namespace revival {

/// Linear-polarizer analyzer angles in degrees, interpreted modulo 180.
struct AngleSet {
  double theta1_deg = 0.0;
  double theta1p_deg = 0.0;
  double theta2_deg = 0.0;
  double theta2p_deg = 0.0;
};

/// T_ij = <sigma_i (x) sigma_j> with i, j in {x, y, z} (indices 0, 1, 2).
using CorrelationMatrix = Eigen::Matrix3d;

CorrelationMatrix correlation_matrix(const DensityMatrix4& rho);

/// Joint polarization correlation E = tr[rho A(t1) (x) A(t2)] with
/// A(t) = |t><t| - |t+90><t+90|, |t> = cos t |H> + sin t |V>.
double correlation(const DensityMatrix4& rho, double theta1_deg,
                   double theta2_deg);

/// S = E(t1,t2) + E(t1,t2') + E(t1',t2) - E(t1',t2').
double chsh_s(const DensityMatrix4& rho, const AngleSet& angles);

struct ChshOptimum {
  AngleSet angles;
  double s = 0.0;
};

/// Maximum of chsh_s over linear analyzer angles: an exhaustive 3.75-degree
/// grid over one period, then closed-form coordinate ascent until the gain
/// per sweep drops below 1e-9. On grid ties the lexicographically smallest
/// angle tuple wins. The returned S is within 1e-4 of the true linear
/// optimum.
ChshOptimum optimize_chsh_linear(const DensityMatrix4& rho);

/// Algebraic CHSH maximum over all qubit measurements,
/// 2 sqrt(t1 + t2) with t1, t2 the two largest eigenvalues of T^T T.
/// Upper-bounds the linear-analyzer optimum.
double horodecki_smax(const DensityMatrix4& rho);

}  // namespace revival
