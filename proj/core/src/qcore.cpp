#include "revival/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace revival {

namespace {

void validate_density(const Eigen::MatrixXcd& m, int dim) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw NumericError("density matrix is not Hermitian (deviation " +
                       std::to_string(herm) + ")");
  }
  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > kTraceTol) {
    throw NumericError("density matrix trace differs from 1 by " +
                       std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("eigenvalue check failed for density matrix");
  }
  if (es.eigenvalues().minCoeff() < kEigenFloor) {
    throw NumericError("density matrix has eigenvalue below -1e-9: " +
                       std::to_string(es.eigenvalues().minCoeff()));
  }
  (void)dim;
}

}  // namespace

const Mat2& pauli_x() {
  static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
  return m;
}

const Mat2& pauli_y() {
  static const Mat2 m =
      (Mat2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  return m;
}

const Mat2& pauli_z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}

DensityMatrix2::DensityMatrix2(const Mat2& m) : m_(m) { validate_density(m_, 2); }

DensityMatrix4::DensityMatrix4(const Mat4& m) : m_(m) { validate_density(m_, 4); }

Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

std::array<double, 4> eig_magnitudes(const Mat4& m) {
  Eigen::ComplexEigenSolver<Mat4> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericError("4x4 eigenvalue iteration did not converge");
  }
  std::array<double, 4> mags{};
  for (int i = 0; i < 4; ++i) {
    double v = std::abs(es.eigenvalues()(i));
    mags[static_cast<std::size_t>(i)] = v < 1e-12 ? 0.0 : v;
  }
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return mags;
}

DensityMatrix2 condition_on_a_horizontal(const DensityMatrix4& rho) {
  Mat2 block = rho.matrix().topLeftCorner<2, 2>();
  const double p = block.trace().real();
  if (p <= 1e-12) {
    throw NumericError("conditioning on outcome H in mode a: probability " +
                       std::to_string(p) + " is degenerate");
  }
  return DensityMatrix2(block / p);
}

Mat4 sqrt_psd(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed in matrix square root");
  }
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    roots(i) = std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix4& rho, const DensityMatrix4& sigma) {
  const Mat4 root = sqrt_psd(rho.matrix());
  const Mat4 inner = root * sigma.matrix() * root;
  Eigen::SelfAdjointEigenSolver<Mat4> es(inner, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed in fidelity");
  }
  double f = 0.0;
  for (int i = 0; i < 4; ++i) {
    f += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace revival
