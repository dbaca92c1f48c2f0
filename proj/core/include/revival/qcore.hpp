#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "revival/errors.hpp"

namespace revival {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Two-photon basis order is {|HH>, |HV>, |VH>, |VV>} throughout: photon a is
// the high bit, photon b the low bit, H = 0 and V = 1, so index = 2*a + b.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenFloor = -1e-9;

const Mat2& pauli_x();
const Mat2& pauli_y();
const Mat2& pauli_z();

/// Validated single-photon density matrix in the {|H>, |V>} basis.
class DensityMatrix2 {
 public:
  explicit DensityMatrix2(const Mat2& m);

  const Mat2& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  Mat2 m_;
};

/// Validated two-photon density matrix: Hermitian within 1e-10, unit trace
/// within 1e-10, eigenvalues >= -1e-9.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Mat4& m);

  const Mat4& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  Mat4 m_;
};

/// Kronecker product a (x) b in the fixed basis order (a is the high bit).
Mat4 tensor(const Mat2& a, const Mat2& b);

/// Eigenvalue magnitudes of a 4x4 matrix, descending, with values below
/// 1e-12 clamped to zero. Intended for products rho (sy(x)sy) rho* (sy(x)sy),
/// whose spectrum is real and nonnegative up to numerical noise.
std::array<double, 4> eig_magnitudes(const Mat4& m);

/// Normalized state of photon b given outcome H on photon a.
/// Throws NumericError when the outcome probability is below 1e-12.
DensityMatrix2 condition_on_a_horizontal(const DensityMatrix4& rho);

/// Uhlmann fidelity F = tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].
/// For a pure rho = |psi><psi| this is sqrt(<psi|sigma|psi>).
double fidelity(const DensityMatrix4& rho, const DensityMatrix4& sigma);

/// Hermitian PSD square root (negative eigenvalues clamped to zero).
Mat4 sqrt_psd(const Mat4& m);

}  // namespace revival
