#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "revival/channels.hpp"
#include "revival/entanglement.hpp"
#include "revival/spectrum.hpp"

#include "oracles.hpp"

using namespace revival;

TEST_CASE("gamma of the canonical states") {
  CHECK(gamma(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma(DensityMatrix4(Mat4::Identity() / 4.0)) ==
        doctest::Approx(-0.5).epsilon(1e-12));
  // Inside the dead zone: closed form (ka + ka kb + kb - 1)/2 = -0.075975.
  CHECK(gamma(state_partial(KappaParam(0.607), KappaParam(0.15))) ==
        doctest::Approx(-0.075975).epsilon(1e-9));
}

TEST_CASE("chi spectrum is descending and nonnegative") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const ChiSpectrum chi = chi_spectrum(testing::random_density(rng));
    CHECK(chi.chi[0] >= chi.chi[1]);
    CHECK(chi.chi[1] >= chi.chi[2]);
    CHECK(chi.chi[2] >= chi.chi[3]);
    CHECK(chi.chi[3] >= 0.0);
  }
}

TEST_CASE("concurrence of the maximal family is |kappa|") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex kappa = testing::random_in_disk(rng);
    CHECK(std::abs(concurrence(state_maximal(KappaParam(kappa))) -
                   std::abs(kappa)) <= 1e-10);
  }
}

TEST_CASE("separable states have zero concurrence") {
  CHECK(concurrence(DensityMatrix4(Mat4::Identity() / 4.0)) == 0.0);
  Mat4 product = Mat4::Zero();
  product(0, 0) = 1.0;  // |HH><HH|
  CHECK(concurrence(DensityMatrix4(product)) <= 1e-12);
}

TEST_CASE("closed form matches the numeric concurrence on a 50x50 grid") {
  double worst = 0.0;
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 50; ++j) {
      const double ka = i / 50.0;
      const double kb = j / 50.0;
      const double numeric =
          concurrence(state_partial(KappaParam(ka), KappaParam(kb)));
      const double closed = concurrence_partial_closed(ka, kb);
      worst = std::max(worst, std::abs(numeric - closed));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("concurrence_partial_closed reference points") {
  CHECK(concurrence_partial_closed(1.0, 1.0) == 1.0);
  CHECK(concurrence_partial_closed(0.607, (1.0 - 0.607) / (1.0 + 0.607)) <=
        1e-15);
  CHECK(concurrence_partial_closed(0.607, 0.385) ==
        doctest::Approx(0.1128475).epsilon(1e-12));
}

TEST_CASE("concurrence depends only on the kappa moduli") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double ka = uniform(rng);
    const double kb = uniform(rng);
    const Complex ka_rot = std::polar(ka, 2.0 * std::numbers::pi * uniform(rng));
    const Complex kb_rot = std::polar(kb, 2.0 * std::numbers::pi * uniform(rng));
    const double rotated =
        concurrence(state_partial(KappaParam(ka_rot), KappaParam(kb_rot)));
    const double plain =
        concurrence(state_partial(KappaParam(ka), KappaParam(kb)));
    CHECK(std::abs(rotated - plain) <= 1e-10);
  }
}

TEST_CASE("gamma never exceeds concurrence and both stay in range") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng);
    const double g = gamma(rho);
    const double c = concurrence(rho);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
    CHECK(g <= c + 1e-15);
    if (g >= 0.0) CHECK(c == g);
  }
}

TEST_CASE("degree of polarization equals |kappa_b| on the partial family") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex ka = testing::random_in_disk(rng);
    const Complex kb = testing::random_in_disk(rng);
    const double p =
        degree_of_polarization(state_partial(KappaParam(ka), KappaParam(kb)));
    CHECK(std::abs(p - std::abs(kb)) <= 1e-10);
  }
}

TEST_CASE("degree of polarization of pure and mixed references") {
  CHECK(degree_of_polarization(bell_phi_plus()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(degree_of_polarization(DensityMatrix4(Mat4::Identity() / 4.0)) <=
        1e-12);
}

TEST_CASE("stokes vectors stay inside the Bloch ball") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const StokesVector s =
        stokes_b_given_a_horizontal(testing::random_density(rng));
    CHECK(s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3 <= 1.0 + 1e-9);
  }
}

TEST_CASE("stokes vector of the conditioned partial state") {
  const Complex kb(0.3, 0.2);
  const StokesVector s =
      stokes_b_given_a_horizontal(state_partial(KappaParam(0.5), KappaParam(kb)));
  CHECK(s.s1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.s2 == doctest::Approx(kb.real()).epsilon(1e-12));
  CHECK(s.s3 == doctest::Approx(kb.imag()).epsilon(1e-12));
}

TEST_CASE("find_crossings locates the death and revival points") {
  const Spectrum fit({{0.37, 778.853, 0.85}, {0.44, 780.160, 0.85},
                      {0.19, 781.459, 0.85}},
                     780.0);
  const KappaParam ka(0.607);
  const auto curve = [&](double x) {
    return gamma(state_partial(ka, KappaParam(kernel(fit, x))));
  };
  const CrossingReport report = find_crossings(curve, 0.0, 800.0, 1.0);
  REQUIRE(report.crossings.size() == 3);
  CHECK(report.crossings[0].kind == CrossingKind::death);
  CHECK(report.crossings[1].kind == CrossingKind::revival);
  CHECK(report.crossings[2].kind == CrossingKind::death);
  CHECK(std::abs(report.crossings[0].x - 189.0) <= 15.0);
  CHECK(std::abs(report.crossings[1].x - 440.0) <= 20.0);
  CHECK(std::abs(report.crossings[2].x - 663.0) <= 20.0);
  CHECK(report.crossings[0].x < report.crossings[1].x);
  CHECK(report.crossings[1].x < report.crossings[2].x);
}

TEST_CASE("find_crossings on a constant curve is empty") {
  const CrossingReport report =
      find_crossings([](double) { return 0.5; }, 0.0, 100.0, 1.0);
  CHECK(report.crossings.empty());
}

TEST_CASE("the maximal-state fit never strictly dies") {
  const Spectrum fit({{0.37, 778.853, 0.9}, {0.44, 780.160, 0.9},
                      {0.19, 781.459, 0.9}},
                     780.0);
  const auto curve = [&](double x) {
    return gamma(state_maximal(KappaParam(kernel(fit, x))));
  };
  const CrossingReport report = find_crossings(curve, 0.0, 800.0, 1.0);
  CHECK(report.crossings.empty());
}

TEST_CASE("find_crossings validates its scan parameters") {
  CHECK_THROWS_AS(find_crossings([](double) { return 1.0; }, 0.0, 1.0, 0.0),
                  ConfigError);
  CHECK_THROWS_AS(find_crossings([](double) { return 1.0; }, 1.0, 0.0, 0.1),
                  ConfigError);
}
