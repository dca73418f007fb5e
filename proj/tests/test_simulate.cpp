#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isac/canonical.hpp"
#include "isac/simulate.hpp"
#include "oracles.hpp"

using namespace isac;
using namespace isac::canonical;

namespace {

SimResult run_noiseless(double p, std::uint64_t seed, std::size_t n,
                        std::size_t repetitions = 1, std::size_t threads = 1) {
  IsacChannel ch = bernoulli_noiseless_channel({0.65, 0.21});
  SimConfig cfg;
  cfg.px = {1.0 - p, p};
  cfg.n = n;
  cfg.seed = seed;
  cfg.repetitions = repetitions;
  cfg.threads = threads;
  return simulate_distortion(ch, noiseless_proof_estimator({0.65, 0.21}, 1),
                             noiseless_proof_estimator({0.65, 0.21}, 2),
                             hamming_distortions(ch), cfg);
}

}  // namespace

TEST_CASE("per-repetition seed stream matches the reference scrambler") {
  // Known splitmix64 output for state 0; freezing it pins the whole stream.
  CHECK(splitmix64(0) == 16294208416658607535ULL);
  CHECK(splitmix64(1) != splitmix64(2));
}

TEST_CASE("identical configurations reproduce bit-identical results") {
  SimResult a = run_noiseless(0.7, 42, 20000);
  SimResult b = run_noiseless(0.7, 42, 20000);
  CHECK(a.d1 == b.d1);
  CHECK(a.d2 == b.d2);
  CHECK(a.se1 == b.se1);
  CHECK(a.total_samples == 20000);
  CHECK(a.generator == kGeneratorId);

  SimResult c = run_noiseless(0.7, 43, 20000);
  CHECK(a.d1 != c.d1);  // a different seed must actually change the draws
}

TEST_CASE("repetitions pool exactly like separately seeded runs") {
  SimResult pooled = run_noiseless(0.6, 7, 5000, 2);
  SimResult first = run_noiseless(0.6, 7, 5000, 1);
  SimResult second = run_noiseless(0.6, 8, 5000, 1);
  CHECK(pooled.total_samples == 10000);
  CHECK(pooled.d1 == doctest::Approx(0.5 * (first.d1 + second.d1)).epsilon(1e-15));
  CHECK(pooled.d2 == doctest::Approx(0.5 * (first.d2 + second.d2)).epsilon(1e-15));
}

TEST_CASE("thread count never changes the sampled values") {
  SimResult one = run_noiseless(0.55, 11, 8000, 4, 1);
  SimResult four = run_noiseless(0.55, 11, 8000, 4, 4);
  CHECK(one.d1 == four.d1);
  CHECK(one.d2 == four.d2);
  CHECK(one.se1 == four.se1);
  CHECK(one.se2 == four.se2);
}

TEST_CASE("empirical distortions concentrate on the closed forms") {
  double p = 0.7;
  ClosedFormPoint cf = lemma1_point({0.65, 0.21}, p);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    SimResult r = run_noiseless(p, seed, 200000);
    CHECK(r.se1 > 0.0);
    CHECK(r.se1 < 2e-3);
    CHECK(std::abs(r.d1 - cf.d1) < 5.0 * r.se1);
    CHECK(std::abs(r.d2 - cf.d2) < 5.0 * r.se2);
  }
}

TEST_CASE("noisy-family simulation tracks the true estimator distortion") {
  // Middle guessing branch: the closed-form d2 is deliberately looser than
  // what the estimator achieves, so the simulation must land on the latter.
  BecBscParams prm{0.65, 0.5, 0.2, 0.2};
  IsacChannel ch = bec_bsc_channel(prm);
  DistortionPair metrics = hamming_distortions(ch);
  Estimator e1 = bec_bsc_proof_estimator(prm, 1);
  Estimator e2 = bec_bsc_proof_estimator(prm, 2);
  SimConfig cfg;
  double p = 0.4;
  cfg.px = {1.0 - p, p};
  cfg.n = 200000;
  cfg.seed = 5;
  SimResult r = simulate_distortion(ch, e1, e2, metrics, cfg);

  LabeledJoint j = assemble_joint(ch, cfg.px);
  double d1_true = expected_distortion(j, e1, metrics.d1, "S1");
  double d2_true = expected_distortion(j, e2, metrics.d2, "S2");
  CHECK(std::abs(r.d1 - d1_true) < 5.0 * r.se1);
  CHECK(std::abs(r.d2 - d2_true) < 5.0 * r.se2);
  CHECK(d1_true == doctest::Approx(lemma3_point(prm, p).d1).epsilon(1e-12));
  CHECK(d2_true < lemma3_point(prm, p).d2 - 1e-3);
}

TEST_CASE("plug-in information estimate approaches the analytic value") {
  IsacChannel ch = bernoulli_noiseless_channel({0.65, 0.21});
  SimConfig cfg;
  cfg.px = {0.5, 0.5};
  cfg.n = 100000;
  cfg.seed = 9;
  double plugin = plugin_mutual_information(ch, cfg);
  LabeledJoint j = assemble_joint(ch, cfg.px);
  double exact = oracle::mutual_information_bits(j, {"X"}, {"Y1"}, {"S1"});
  CHECK(exact == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(std::abs(plugin - exact) < 0.01);
  CHECK(plugin_mutual_information(ch, cfg, LogBase::nats) ==
        doctest::Approx(plugin * std::numbers::ln2).epsilon(1e-9));
}

TEST_CASE("degenerate input masses and bad configurations") {
  IsacChannel ch = bernoulli_noiseless_channel({0.65, 0.21});
  DistortionPair metrics = hamming_distortions(ch);
  Estimator e1 = noiseless_proof_estimator({0.65, 0.21}, 1);
  Estimator e2 = noiseless_proof_estimator({0.65, 0.21}, 2);

  SimConfig cfg;
  cfg.px = {0.0, 1.0};  // a zero-mass symbol is fine, it is just never drawn
  cfg.n = 5000;
  SimResult r = simulate_distortion(ch, e1, e2, metrics, cfg);
  CHECK(r.d1 == 0.0);  // x = 1 always, so y1 reveals s1 exactly
  CHECK(r.d2 == 0.0);

  SimConfig bad = cfg;
  bad.px = {0.4, 0.7};  // not a pmf
  CHECK_THROWS(simulate_distortion(ch, e1, e2, metrics, bad));
  bad.px = {0.2, 0.3, 0.5};  // arity mismatch
  CHECK_THROWS(simulate_distortion(ch, e1, e2, metrics, bad));

  // An estimator whose domain does not belong to this channel is rejected.
  Estimator alien = e1;
  alien.domain = {binary_alphabet("X"), binary_alphabet("Z")};
  CHECK_THROWS(simulate_distortion(ch, alien, e2, metrics, cfg));

  SimConfig empty = cfg;
  empty.n = 0;
  CHECK_THROWS(simulate_distortion(ch, e1, e2, metrics, empty));
}
