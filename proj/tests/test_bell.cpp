#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "revival/bell.hpp"
#include "revival/channels.hpp"

#include "oracles.hpp"

using namespace revival;

namespace {

constexpr double kSqrt8 = 2.8284271247461903;  // 2 sqrt(2)

double deg2(double theta_deg) { return 2.0 * theta_deg * std::numbers::pi / 180.0; }

}  // namespace

TEST_CASE("correlation of the Bell state at aligned and unbiased angles") {
  CHECK(correlation(bell_phi_plus(), 0.0, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(correlation(bell_phi_plus(), 0.0, 45.0)) <= 1e-12);
}

TEST_CASE("correlation of the maximal family matches the symbolic expansion") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double kappa = uniform(rng);
    const double t1 = angle(rng);
    const double t2 = angle(rng);
    const double expected = std::cos(deg2(t1)) * std::cos(deg2(t2)) +
                            kappa * std::sin(deg2(t1)) * std::sin(deg2(t2));
    CHECK(correlation(state_maximal(KappaParam(kappa)), t1, t2) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("correlations stay within [-1, 1]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng);
    CHECK(std::abs(correlation(rho, angle(rng), angle(rng))) <= 1.0 + 1e-12);
  }
}

TEST_CASE("chsh_s reaches the Tsirelson bound on the Bell state") {
  // Hand-derived maximizing tuples for E = cos 2(t1 - t2) under the
  // +,+,+,- combination.
  CHECK(chsh_s(bell_phi_plus(), {45.0, 0.0, 22.5, 67.5}) ==
        doctest::Approx(kSqrt8).epsilon(1e-12));
  CHECK(chsh_s(bell_phi_plus(), {0.0, 45.0, 22.5, -22.5}) ==
        doctest::Approx(kSqrt8).epsilon(1e-12));
}

TEST_CASE("product states never violate the classical bound") {
  Mat4 product = Mat4::Zero();
  product(0, 0) = 1.0;  // |HH><HH|
  const DensityMatrix4 rho(product);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  for (int trial = 0; trial < 200; ++trial) {
    const AngleSet angles{angle(rng), angle(rng), angle(rng), angle(rng)};
    CHECK(std::abs(chsh_s(rho, angles)) <= 2.0 + 1e-12);
  }
}

TEST_CASE("chsh_s is invariant under 180-degree shifts") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng);
    const AngleSet base{angle(rng), angle(rng), angle(rng), angle(rng)};
    AngleSet shifted = base;
    shifted.theta2_deg += 180.0;
    CHECK(chsh_s(rho, base) == doctest::Approx(chsh_s(rho, shifted)).epsilon(1e-12));
  }
}

TEST_CASE("optimization reaches 2 sqrt(2) on the Bell state") {
  const ChshOptimum best = optimize_chsh_linear(bell_phi_plus());
  CHECK(std::abs(best.s - kSqrt8) <= 1e-4);
  // The optimizer's claimed value must be attained by chsh_s itself.
  CHECK(chsh_s(bell_phi_plus(), best.angles) ==
        doctest::Approx(best.s).epsilon(1e-9));
}

TEST_CASE("optimization matches the analytic maximum of the maximal family") {
  for (double kappa : {0.0, 0.2, 0.354, 0.5, 0.75, 1.0}) {
    const ChshOptimum best = optimize_chsh_linear(state_maximal(KappaParam(kappa)));
    CHECK(std::abs(best.s - 2.0 * std::sqrt(1.0 + kappa * kappa)) <= 1e-3);
  }
}

TEST_CASE("optimization over the maximally mixed state returns zero") {
  const ChshOptimum best =
      optimize_chsh_linear(DensityMatrix4(Mat4::Identity() / 4.0));
  CHECK(std::abs(best.s) <= 1e-6);
}

TEST_CASE("the algebraic maximum bounds the linear optimum") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng);
    CHECK(optimize_chsh_linear(rho).s <= horodecki_smax(rho) + 1e-6);
  }
}

TEST_CASE("algebraic maximum of the canonical states") {
  CHECK(horodecki_smax(bell_phi_plus()) == doctest::Approx(kSqrt8).epsilon(1e-12));
  Mat4 product = Mat4::Zero();
  product(0, 0) = 1.0;
  CHECK(horodecki_smax(DensityMatrix4(product)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex kappa = testing::random_in_disk(rng);
    CHECK(horodecki_smax(state_maximal(KappaParam(kappa))) ==
          doctest::Approx(2.0 * std::sqrt(1.0 + std::norm(kappa)))
              .epsilon(1e-9));
  }
}

TEST_CASE("correlation matrix entries stay within [-1, 1]") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const CorrelationMatrix t = correlation_matrix(testing::random_density(rng));
    CHECK(t.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
  }
}
