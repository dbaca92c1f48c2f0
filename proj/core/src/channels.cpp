#include "revival/channels.hpp"

#include <cmath>
#include <string>

namespace revival {

namespace {

DensityMatrix4 apply_on_a(const DensityMatrix4& rho, const Mat2& u) {
  const Mat4 big = tensor(u, Mat2::Identity());
  return DensityMatrix4(big * rho.matrix() * big.adjoint());
}

// Polarization index of the selected mode: a is the high bit, b the low bit.
int mode_bit(int index, Mode m) {
  return m == Mode::a ? (index >> 1) & 1 : index & 1;
}

}  // namespace

KappaParam::KappaParam(Complex value) : value_(value) {
  if (std::abs(value_) > 1.0 + 1e-12) {
    throw NumericError("non-physical dephasing strength |kappa| = " +
                       std::to_string(std::abs(value_)));
  }
}

DensityMatrix4 bell_phi_plus() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix4(m);
}

DensityMatrix4 pauli_x_on_a(const DensityMatrix4& rho) {
  return apply_on_a(rho, pauli_x());
}

DensityMatrix4 hadamard_on_a(const DensityMatrix4& rho) {
  const Mat2 h = (pauli_x() + pauli_z()) / std::sqrt(2.0);
  return apply_on_a(rho, h);
}

DensityMatrix4 dephase(const DensityMatrix4& rho, const KappaParam& kappa, Mode m) {
  const Complex k = kappa.value();
  Mat4 out = rho.matrix();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int rb = mode_bit(r, m);
      const int cb = mode_bit(c, m);
      if (rb == 1 && cb == 0) {
        out(r, c) *= k;
      } else if (rb == 0 && cb == 1) {
        out(r, c) *= std::conj(k);
      }
    }
  }
  return DensityMatrix4(out);
}

DensityMatrix4 state_maximal(const KappaParam& kappa_b) {
  const Complex k = kappa_b.value();
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = 0.5;
  m(0, 3) = 0.5 * std::conj(k);
  m(3, 0) = 0.5 * k;
  return DensityMatrix4(m);
}

DensityMatrix4 state_partial(const KappaParam& kappa_a, const KappaParam& kappa_b) {
  const Complex ka = kappa_a.value();
  const Complex kb = kappa_b.value();
  const Complex kac = std::conj(ka);
  const Complex kbc = std::conj(kb);
  Mat4 m;
  m << 1.0, kbc, kac, -kac * kbc,
       kb, 1.0, kac * kb, -kac,
       ka, ka * kbc, 1.0, -kbc,
       -ka * kb, -ka, -kb, 1.0;
  return DensityMatrix4(0.25 * m);
}

}  // namespace revival
