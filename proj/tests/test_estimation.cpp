#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isac/canonical.hpp"
#include "isac/estimation.hpp"
#include "oracles.hpp"

using namespace isac;

TEST_CASE("hamming metric and validation") {
  Alphabet s("S1", {"a", "b", "c"});
  DistortionMetric m = hamming_metric(s);
  CHECK(m.reconstruction_alphabet.name() == "S1_hat");
  CHECK(m.reconstruction_alphabet.symbols() == s.symbols());
  CHECK(m.at(0, 0) == 0.0);
  CHECK(m.at(0, 2) == 1.0);
  CHECK(m.at(2, 2) == 0.0);

  CHECK_THROWS(DistortionMetric(s, s, {0.0, 1.0}));  // wrong table size
  CHECK_THROWS(DistortionMetric(s, binary_alphabet("R"),
                                {0.0, -1.0, 1.0, 0.0, 1.0, 1.0}));  // negative entry
}

TEST_CASE("optimal estimator matches exhaustive search on random joints") {
  std::mt19937_64 rng(29);
  Alphabet w("W", {"w0", "w1"}), z("Z", {"z0", "z1", "z2"}), s("S", {"s0", "s1", "s2"});
  DistortionMetric hamming = hamming_metric(s);
  for (int trial = 0; trial < 25; ++trial) {
    LabeledJoint j = oracle::random_joint(rng, {w, z, s});
    Estimator est = optimal_estimator(j, "S", hamming, {"W", "Z"});
    double achieved = expected_distortion(j, est, hamming, "S");
    double best = oracle::exhaustive_best_distortion(j, "S", hamming, {"W", "Z"});
    CHECK(achieved == doctest::Approx(best).epsilon(1e-12));
    // And the reported distortion is itself computed correctly.
    CHECK(achieved == doctest::Approx(oracle::direct_expected_distortion(
                                          j, "S", hamming, {"W", "Z"}, est.map))
                          .epsilon(1e-12));
  }
}

TEST_CASE("optimal estimator with a lopsided metric") {
  std::mt19937_64 rng(31);
  Alphabet w("W", {"w0", "w1"}), s("S", {"s0", "s1"});
  // Missing a 1 costs nine times as much as a false alarm.
  DistortionMetric skewed(s, Alphabet("S_hat", {"n", "y"}), {0.0, 1.0, 9.0, 0.0});
  for (int trial = 0; trial < 25; ++trial) {
    LabeledJoint j = oracle::random_joint(rng, {w, s});
    Estimator est = optimal_estimator(j, "S", skewed, {"W"});
    CHECK(expected_distortion(j, est, skewed, "S") ==
          doctest::Approx(oracle::exhaustive_best_distortion(j, "S", skewed, {"W"}))
              .epsilon(1e-12));
  }
}

TEST_CASE("ties break to the lowest reconstruction index") {
  Alphabet w("W", {"w0"}), s("S", {"s0", "s1"});
  LabeledJoint j({w, s}, {0.5, 0.5});  // posterior exactly balanced
  Estimator est = optimal_estimator(j, "S", hamming_metric(s), {"W"});
  REQUIRE(est.map.size() == 1);
  CHECK(est.map[0] == 0);
}

TEST_CASE("zero-mass observation cells map to index 0") {
  Alphabet w("W", {"w0", "w1"}), s("S", {"s0", "s1"});
  // w1 never occurs.
  LabeledJoint j({w, s}, {0.2, 0.8, 0.0, 0.0});
  Estimator est = optimal_estimator(j, "S", hamming_metric(s), {"W"});
  REQUIRE(est.map.size() == 2);
  CHECK(est.map[0] == 1);  // P(s1 | w0) = 0.8
  CHECK(est.map[1] == 0);
}

TEST_CASE("estimator call and domain helpers") {
  Alphabet w("W", {"w0", "w1"}), z("Z", {"z0", "z1", "z2"});
  Estimator est{{w, z}, {0, 1, 0, 1, 0, 1}};
  CHECK(est.domain_cells() == 6);
  CHECK(est.domain_names() == std::vector<std::string>{"W", "Z"});
  std::size_t obs[] = {1, 2};
  CHECK(est(obs) == 1);
}

TEST_CASE("mismatched observation variables are rejected") {
  Alphabet w("W", {"w0", "w1"}), s("S", {"s0", "s1"});
  LabeledJoint j({w, s}, {0.25, 0.25, 0.25, 0.25});
  DistortionMetric m = hamming_metric(s);
  CHECK_THROWS(optimal_estimator(j, "S", m, {"Q"}));
  CHECK_THROWS(optimal_estimator(j, "Q", m, {"W"}));
  // The state itself cannot be observed.
  CHECK_THROWS(optimal_estimator(j, "S", m, {"S"}));

  Estimator alien{{Alphabet("W", {"a", "b"})}, {0, 0}};
  CHECK_THROWS(expected_distortion(j, alien, m, "S"));
}

TEST_CASE("closed-form sensing distortions of the noiseless family") {
  double q = 0.65, alpha = 0.21, p = 0.7;
  IsacChannel ch = canonical::bernoulli_noiseless_channel({q, alpha});
  LabeledJoint j = assemble_joint(ch, std::vector<double>{1.0 - p, p});
  DistortionPair metrics = hamming_distortions(ch);

  Estimator e1 = optimal_estimator(j, "S1", metrics.d1, {"X", "Y1"});
  CHECK(expected_distortion(j, e1, metrics.d1, "S1") ==
        doctest::Approx((1.0 - p) * std::min(q, 1.0 - q)).epsilon(1e-12));
  Estimator e2 = optimal_estimator(j, "S2", metrics.d2, {"X", "Y2"});
  CHECK(expected_distortion(j, e2, metrics.d2, "S2") ==
        doctest::Approx((1.0 - p) * std::min(q * alpha, 1.0 - q * alpha)).epsilon(1e-12));

  // Widening the observation set cannot help here: Y2 adds nothing about S1.
  Estimator e1w = optimal_estimator(j, "S1", metrics.d1, {"X", "Y1", "Y2"});
  CHECK(expected_distortion(j, e1w, metrics.d1, "S1") ==
        doctest::Approx(expected_distortion(j, e1, metrics.d1, "S1")).epsilon(1e-12));
}
