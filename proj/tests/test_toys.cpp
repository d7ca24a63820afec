#include "doctest.h"
#include "qcascade/thermo.hpp"
#include "qcascade/toys.hpp"

using namespace qcascade;

TEST_CASE("single spin rotation converts coherence to energy as work") {
  CHECK(single_spin_rotation(0.0).simulated ==
        doctest::Approx(0.0).epsilon(1e-14));
  for (double c : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    ToyResult r = single_spin_rotation(c);
    CHECK(r.analytic == doctest::Approx(c).epsilon(1e-14));
    CHECK(r.abs_error < 1e-10);
  }
  ToyResult scaled = single_spin_rotation(0.3, 2.5);
  CHECK(scaled.analytic == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(scaled.abs_error < 1e-10);
  CHECK_THROWS_AS(single_spin_rotation(0.6), validation_error);
}

TEST_CASE("degenerate two-spin swap moves heat without work") {
  CHECK(two_spin_swap(0.0).simulated == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(two_spin_swap(0.5).simulated == doctest::Approx(0.5).epsilon(1e-12));
  for (double c : {0.05, 0.17, 0.33, 0.41}) {
    ToyResult r = two_spin_swap(c);
    CHECK(r.analytic == doctest::Approx(c).epsilon(1e-14));
    CHECK(r.abs_error < 1e-10);
  }
}

TEST_CASE("phase efficiency of the mediated cascade") {
  // orthogonal phase moves no population at all
  ToyResult orth = phase_efficiency(0.2, M_PI / 2, 0.7);
  CHECK(std::abs(orth.simulated) < 1e-12);

  ToyResult quarter = phase_efficiency(0.2, 0.0, M_PI / 4);
  CHECK(quarter.analytic ==
        doctest::Approx(0.2 * 0.707106781186547).epsilon(1e-12));
  CHECK(quarter.abs_error < 1e-10);

  // phase pi flips the sign of the alpha = 0 shift
  ToyResult plus = phase_efficiency(0.15, 0.0, 0.5);
  ToyResult minus = phase_efficiency(0.15, M_PI, 0.5);
  CHECK(plus.simulated == doctest::Approx(-minus.simulated).epsilon(1e-12));

  for (int i = 1; i <= 10; ++i) {
    double lambda = 0.03 * i;
    double alpha = 0.6 * i;
    double theta = 0.15 * i;
    ToyResult r = phase_efficiency(lambda, alpha, theta);
    CHECK(r.analytic == doctest::Approx(lambda * std::cos(alpha) *
                                        std::sin(theta) * std::sin(2 * theta))
                            .epsilon(1e-13));
    CHECK(r.abs_error < 1e-10);
  }
  CHECK_THROWS_AS(phase_efficiency(0.5, 0.0, 0.3), validation_error);
}

TEST_CASE("temperature gradient threshold") {
  // equal temperatures: threshold 0, flip located at 0
  ToyResult eq = temperature_gradient_threshold(1.0, 1.0);
  CHECK(eq.analytic == doctest::Approx(0.0));
  CHECK(eq.abs_error < 1e-6);

  // hot system against colder mediator and the mirrored arrangement
  ToyResult hot = temperature_gradient_threshold(1.0, 1.0 / 0.9);
  CHECK(hot.analytic == doctest::Approx(-0.042161252184532).epsilon(1e-12));
  CHECK(hot.abs_error < 1e-4);

  ToyResult cold = temperature_gradient_threshold(1.0 / 0.9, 1.0);
  CHECK(cold.analytic == doctest::Approx(0.046043778934942).epsilon(1e-12));
  CHECK(cold.abs_error < 1e-4);

  // sign mirrors with the temperature arrangement
  CHECK(hot.analytic < 0.0);
  CHECK(cold.analytic > 0.0);

  // small-theta toy conditions reproduce the engine-level threshold
  CHECK(hot.analytic ==
        doctest::Approx(reversal_threshold(1.0, 1.0 / 0.9, 1.0))
            .epsilon(1e-14));
  CHECK(cold.analytic ==
        doctest::Approx(reversal_threshold(1.0 / 0.9, 1.0, 1.0))
            .epsilon(1e-14));
}
