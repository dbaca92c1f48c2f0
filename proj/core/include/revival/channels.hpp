#pragma once

#include "revival/qcore.hpp"

namespace revival {

/// Complex dephasing strength, |value| <= 1.
class KappaParam {
 public:
  KappaParam(Complex value);  // NOLINT: implicit by design, kappa is the value
  KappaParam(double value) : KappaParam(Complex(value, 0.0)) {}

  Complex value() const { return value_; }

 private:
  Complex value_;
};

/// Photon path selector: a is the trigger arm, b passes the environment.
enum class Mode { a, b };

/// |phi+> = (|HH> + |VV>)/sqrt(2) as a density matrix.
DensityMatrix4 bell_phi_plus();

/// (sigma_x (x) I) rho (sigma_x (x) I). Involution.
DensityMatrix4 pauli_x_on_a(const DensityMatrix4& rho);

/// Half-wave plate at 22.5 degrees in mode a, i.e. the Hadamard
/// (sigma_x + sigma_z)/sqrt(2) applied to photon a. This is the preparation
/// that turns |phi+> into the partially-entangled input family.
DensityMatrix4 hadamard_on_a(const DensityMatrix4& rho);

/// One-qubit phase damping in the H/V basis of the selected mode: every
/// element whose selected-mode indices differ as <.V| rho |.H> is scaled by
/// kappa, the conjugate orientation by kappa*. Populations are untouched.
DensityMatrix4 dephase(const DensityMatrix4& rho, const KappaParam& kappa, Mode m);

/// Maximally entangled input after mode-b dephasing:
/// (|HH><HH| + |VV><VV| + kb* |HH><VV| + kb |VV><HH|) / 2.
DensityMatrix4 state_maximal(const KappaParam& kappa_b);

/// Partially entangled input after dephasing in both arms; equals
/// dephase(dephase(hadamard_on_a(bell_phi_plus()), ka, a), kb, b).
DensityMatrix4 state_partial(const KappaParam& kappa_a, const KappaParam& kappa_b);

}  // namespace revival
