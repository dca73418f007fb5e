#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isac/prob.hpp"
#include "oracles.hpp"

using namespace isac;

namespace {

const Alphabet kA = binary_alphabet("A");
const Alphabet kB = binary_alphabet("B");
const Alphabet kC("C", {"c0", "c1", "c2"});

LabeledJoint uniform_joint(std::vector<Alphabet> axes) {
  std::size_t cells = 1;
  for (const auto& a : axes) cells *= a.size();
  return LabeledJoint(std::move(axes),
                      std::vector<double>(cells, 1.0 / static_cast<double>(cells)));
}

}  // namespace

TEST_CASE("alphabet basics") {
  CHECK(kC.name() == "C");
  CHECK(kC.size() == 3);
  CHECK(kC.symbol(1) == "c1");
  CHECK(kC.index_of("c2") == 2);
  CHECK_FALSE(kC.index_of("missing").has_value());
  CHECK(binary_alphabet("Z").symbols() == std::vector<std::string>{"0", "1"});
  CHECK(kA == binary_alphabet("A"));
  CHECK(kA != kB);
  CHECK_THROWS(Alphabet("bad", {}));
  CHECK_THROWS(Alphabet("bad", {"x", "x"}));
}

TEST_CASE("labeled joint construction and validation") {
  CHECK_THROWS(LabeledJoint({kA}, {0.5, 0.6}));            // off by more than tol
  CHECK_THROWS(LabeledJoint({kA}, {1.2, -0.2}));           // negative mass
  CHECK_THROWS(LabeledJoint({kA}, {0.5, 0.5, 0.0}));       // wrong cell count
  CHECK_THROWS(LabeledJoint({kA}, {std::nan(""), 1.0}));   // non-finite
  CHECK_THROWS(LabeledJoint({kA, binary_alphabet("A")}, {0.25, 0.25, 0.25, 0.25}));

  // A tiny normalization error is absorbed exactly once.
  double eps = 2e-13;
  LabeledJoint j({kA}, {0.5 + eps, 0.5});
  CHECK(j.mass()[0] + j.mass()[1] == doctest::Approx(1.0).epsilon(1e-15));

  LabeledJoint ab({kA, kB}, {0.1, 0.2, 0.3, 0.4});
  CHECK(ab.rank() == 2);
  CHECK(ab.cell_count() == 4);
  CHECK(ab.axis_index("B") == 1);
  CHECK_THROWS(ab.axis_index("Q"));
  CHECK_FALSE(ab.find_axis("Q").has_value());
  std::size_t idx[] = {1, 0};
  CHECK(ab.flatten(idx) == 2);
  CHECK(ab.at(idx) == 0.3);
  std::size_t out[2];
  ab.unflatten(3, out);
  CHECK(out[0] == 1);
  CHECK(out[1] == 1);
}

TEST_CASE("marginal_mass matches direct summation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto j = oracle::random_joint(rng, {kA, kC, kB});
    std::size_t keep[] = {2, 1};  // (B, C), deliberately out of storage order
    auto got = j.marginal_mass(keep);
    auto want = oracle::direct_marginal(j, {"B", "C"});
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
  }
}

TEST_CASE("kernel rows validated and renormalized") {
  CHECK_THROWS(Kernel({kA}, {kB}, {0.5, 0.4, 1.0, 0.0}));  // first row sums to 0.9
  CHECK_THROWS(Kernel({kA}, {kB}, {0.5, 0.5}));            // missing a row
  Kernel k({kA}, {kB}, {0.25, 0.75, 1.0, 0.0});
  CHECK(k.from_cells() == 2);
  CHECK(k.to_cells() == 2);
  CHECK(k.prob(0, 1) == 0.75);
  CHECK(k.row(1)[0] == 1.0);

  Kernel id = Kernel::identity(kA, binary_alphabet("A2"));
  CHECK(id.prob(0, 0) == 1.0);
  CHECK(id.prob(0, 1) == 0.0);
  CHECK_THROWS(Kernel::identity(kA, kC));  // sizes differ

  Kernel c = Kernel::constant(kC, Alphabet("U", {"*"}));
  CHECK(c.prob(2, 0) == 1.0);
  CHECK_THROWS(Kernel::constant(kC, kA));  // target not a singleton
}

TEST_CASE("binary entropy anchors") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  // Independently computed: h(0.2) in bits.
  CHECK(binary_entropy(0.2) == doctest::Approx(0.7219280948873623).epsilon(1e-15));
  CHECK(binary_entropy(0.3) == binary_entropy(0.7));
  CHECK(binary_entropy(0.2, LogBase::nats) ==
        doctest::Approx(binary_entropy(0.2) * std::numbers::ln2).epsilon(1e-15));
  CHECK_THROWS(binary_entropy(-0.1));
  CHECK_THROWS(binary_entropy(1.1));
}

TEST_CASE("star and pos_part") {
  CHECK(star(0.3, 0.1) == doctest::Approx(0.34).epsilon(1e-15));
  CHECK(star(0.325, 0.2) == doctest::Approx(0.395).epsilon(1e-15));
  CHECK(star(0.7, 0.0) == 0.7);
  CHECK(star(0.7, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(star(0.7, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS(star(-0.1, 0.5));
  CHECK_THROWS(star(0.5, 1.5));
  CHECK(pos_part(3.5) == 3.5);
  CHECK(pos_part(-2.0) == 0.0);
  CHECK(pos_part(0.0) == 0.0);
}

TEST_CASE("entropy anchors") {
  CHECK(entropy(uniform_joint({kA}), {"A"}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy(uniform_joint({kA, kB}), {"A", "B"}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(entropy(uniform_joint({kC}), {"C"}) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-15));
  LabeledJoint point({kA}, {1.0, 0.0});
  CHECK(entropy(point, {"A"}) == 0.0);
  CHECK(entropy(uniform_joint({kA}), {"A"}, LogBase::nats) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK_THROWS(entropy(point, {}));
  CHECK_THROWS(entropy(point, {"A", "A"}));
  CHECK_THROWS(entropy(point, {"Q"}));
}

TEST_CASE("information measures match direct-summation oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto j = oracle::random_joint(rng, {kA, kB, kC});
    CHECK(entropy(j, {"A", "C"}) ==
          doctest::Approx(oracle::entropy_bits(j, {"A", "C"})).epsilon(1e-12));
    CHECK(conditional_entropy(j, {"A"}, {"B", "C"}) ==
          doctest::Approx(oracle::conditional_entropy_bits(j, {"A"}, {"B", "C"}))
              .epsilon(1e-12));
    CHECK(conditional_entropy(j, {"A", "B"}, {}) ==
          doctest::Approx(oracle::entropy_bits(j, {"A", "B"})).epsilon(1e-12));
    CHECK(mutual_information(j, {"A"}, {"B"}) ==
          doctest::Approx(oracle::mutual_information_bits(j, {"A"}, {"B"})).epsilon(1e-12));
    CHECK(mutual_information(j, {"A"}, {"B"}, {"C"}) ==
          doctest::Approx(oracle::mutual_information_bits(j, {"A"}, {"B"}, {"C"}))
              .epsilon(1e-12));
    // Symmetry and chain rule, each side through a different code path.
    CHECK(mutual_information(j, {"A"}, {"B"}, {"C"}) ==
          doctest::Approx(mutual_information(j, {"B"}, {"A"}, {"C"})).epsilon(1e-12));
    CHECK(entropy(j, {"A", "B"}) ==
          doctest::Approx(entropy(j, {"A"}) + conditional_entropy(j, {"B"}, {"A"}))
              .epsilon(1e-12));
    CHECK(mutual_information(j, {"A"}, {"B"}, {"C"}) >= 0.0);
  }
}

TEST_CASE("independent and deterministic extremes") {
  // Product of independent marginals: I(A;B) is nonnegative (tiny negatives
  // are clamped) and zero up to cancellation noise.
  LabeledJoint prod({kA, kB}, {0.3 * 0.6, 0.3 * 0.4, 0.7 * 0.6, 0.7 * 0.4});
  CHECK(mutual_information(prod, {"A"}, {"B"}) >= 0.0);
  CHECK(mutual_information(prod, {"A"}, {"B"}) <= 1e-12);
  // Perfect correlation: I(A;B) = H(A).
  LabeledJoint copy({kA, kB}, {0.3, 0.0, 0.0, 0.7});
  CHECK(mutual_information(copy, {"A"}, {"B"}) ==
        doctest::Approx(binary_entropy(0.3)).epsilon(1e-14));
  CHECK(conditional_entropy(copy, {"A"}, {"B"}) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("marginalize keeps the joint's axis order") {
  LabeledJoint j({kA, kB, kC}, std::vector<double>(12, 1.0 / 12));
  LabeledJoint m = marginalize(j, {"C", "A"});  // request order must not matter
  REQUIRE(m.rank() == 2);
  CHECK(m.axes()[0].name() == "A");
  CHECK(m.axes()[1].name() == "C");
  for (double v : m.mass()) CHECK(v == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK_THROWS(marginalize(j, {}));
  CHECK_THROWS(marginalize(j, {"Q"}));
}

TEST_CASE("condition slices and renormalizes") {
  // P(A,B) with P(B=1|A=0) = 0.25.
  LabeledJoint j({kA, kB}, {0.3, 0.1, 0.24, 0.36});
  auto c = condition(j, {"A"}, {"0"});
  REQUIRE(c.has_value());
  CHECK(c->rank() == 1);
  CHECK(c->axes()[0].name() == "B");
  CHECK(c->mass()[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(c->mass()[1] == doctest::Approx(0.25).epsilon(1e-14));

  LabeledJoint zero({kA, kB}, {0.5, 0.5, 0.0, 0.0});
  CHECK_FALSE(condition(zero, {"A"}, {"1"}).has_value());  // zero-mass event
  CHECK_THROWS(condition(j, {"A", "B"}, {"0", "0"}));      // nothing would remain
  CHECK_THROWS(condition(j, {"A"}, {"bogus"}));
  CHECK_THROWS(condition(j, {"A"}, {"0", "1"}));  // arity mismatch
}
