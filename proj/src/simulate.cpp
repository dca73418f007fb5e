#include "isac/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "isac/parallel.hpp"
#include "isac/prob.hpp"

namespace isac {

std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

double next_u53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(std::span<const double> pmf, double u) {
  double c = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] <= 0.0) continue;
    last_positive = i;
    c += pmf[i];
    if (u < c) return i;
  }
  return last_positive;  // u landed in the rounding sliver at the top
}

void check_input_pmf(const IsacChannel& ch, const std::vector<double>& px) {
  if (px.size() != ch.x.size())
    throw std::invalid_argument("simulation pmf length does not match the input alphabet");
  double sum = 0.0;
  for (double v : px) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("simulation pmf has an invalid entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > LabeledJoint::kNormalizationTol)
    throw std::invalid_argument("simulation pmf does not sum to 1");
}

struct Tally {
  double sum1 = 0.0, sq1 = 0.0;
  double sum2 = 0.0, sq2 = 0.0;
};

// Precomputed flat-index helpers for one estimator over samples
// (x, s1, s2, y1, y2) given by index.
struct ObsPlan {
  // 0:X 1:S1 2:S2 3:Y1 4:Y2
  std::vector<std::size_t> sources;
  std::vector<std::size_t> sizes;

  static ObsPlan build(const IsacChannel& ch, const Estimator& est) {
    ObsPlan plan;
    for (const auto& a : est.domain) {
      if (a.name() == "X" && a == ch.x) plan.sources.push_back(0);
      else if (a.name() == "S1" && a == ch.s1) plan.sources.push_back(1);
      else if (a.name() == "S2" && a == ch.s2) plan.sources.push_back(2);
      else if (a.name() == "Y1" && a == ch.y1) plan.sources.push_back(3);
      else if (a.name() == "Y2" && a == ch.y2) plan.sources.push_back(4);
      else
        throw std::invalid_argument("estimator observes '" + a.name() +
                                    "', which this channel does not produce");
      plan.sizes.push_back(a.size());
    }
    return plan;
  }

  std::size_t flat(const std::size_t* sample) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < sources.size(); ++i)
      f = f * sizes[i] + sample[sources[i]];
    return f;
  }
};

}  // namespace

SimResult simulate_distortion(const IsacChannel& ch, const Estimator& est1,
                              const Estimator& est2, const DistortionPair& metrics,
                              const SimConfig& cfg) {
  if (cfg.n == 0 || cfg.repetitions == 0)
    throw std::invalid_argument("simulate_distortion: n and repetitions must be positive");
  check_input_pmf(ch, cfg.px);
  if (metrics.d1.state_alphabet != ch.s1 || metrics.d2.state_alphabet != ch.s2)
    throw std::invalid_argument("simulate_distortion: metric/state alphabet mismatch");
  ObsPlan plan1 = ObsPlan::build(ch, est1);
  ObsPlan plan2 = ObsPlan::build(ch, est2);

  std::size_t n2 = ch.s2.size(), m2 = ch.y2.size(), nx = ch.x.size();
  const auto& prior = ch.state_prior.mass();

  std::vector<Tally> tallies(cfg.repetitions);
  parallel_for_ranges(cfg.repetitions, cfg.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t rep = lo; rep < hi; ++rep) {
      std::mt19937_64 rng(splitmix64(cfg.seed + rep));
      Tally t;
      std::size_t sample[5];
      for (std::size_t i = 0; i < cfg.n; ++i) {
        std::size_t s_pair = sample_index(prior, next_u53(rng));
        sample[1] = s_pair / n2;
        sample[2] = s_pair % n2;
        sample[0] = sample_index(cfg.px, next_u53(rng));
        std::size_t from = s_pair * nx + sample[0];
        std::size_t y_pair = sample_index(ch.kernel.row(from), next_u53(rng));
        sample[3] = y_pair / m2;
        sample[4] = y_pair % m2;

        double d1 = metrics.d1.at(sample[1], est1.map[plan1.flat(sample)]);
        double d2 = metrics.d2.at(sample[2], est2.map[plan2.flat(sample)]);
        t.sum1 += d1;
        t.sq1 += d1 * d1;
        t.sum2 += d2;
        t.sq2 += d2 * d2;
      }
      tallies[rep] = t;
    }
  });

  Tally all;
  for (const auto& t : tallies) {  // fixed order: independent of thread count
    all.sum1 += t.sum1;
    all.sq1 += t.sq1;
    all.sum2 += t.sum2;
    all.sq2 += t.sq2;
  }
  double n = static_cast<double>(cfg.n) * static_cast<double>(cfg.repetitions);
  SimResult r;
  r.total_samples = cfg.n * cfg.repetitions;
  r.d1 = all.sum1 / n;
  r.d2 = all.sum2 / n;
  if (r.total_samples > 1) {
    double v1 = pos_part(all.sq1 - n * r.d1 * r.d1) / (n - 1.0);
    double v2 = pos_part(all.sq2 - n * r.d2 * r.d2) / (n - 1.0);
    r.se1 = std::sqrt(v1 / n);
    r.se2 = std::sqrt(v2 / n);
  }
  return r;
}

double plugin_mutual_information(const IsacChannel& ch, const SimConfig& cfg, LogBase base) {
  if (cfg.n == 0) throw std::invalid_argument("plugin_mutual_information: n must be positive");
  check_input_pmf(ch, cfg.px);

  std::size_t n2 = ch.s2.size(), m1 = ch.y1.size(), m2 = ch.y2.size(), nx = ch.x.size();
  std::size_t n1 = ch.s1.size();
  const auto& prior = ch.state_prior.mass();

  std::vector<double> counts(nx * m1 * n1, 0.0);
  std::mt19937_64 rng(splitmix64(cfg.seed));
  for (std::size_t i = 0; i < cfg.n; ++i) {
    std::size_t s_pair = sample_index(prior, next_u53(rng));
    std::size_t x = sample_index(cfg.px, next_u53(rng));
    std::size_t y_pair = sample_index(ch.kernel.row(s_pair * nx + x), next_u53(rng));
    std::size_t y1 = y_pair / m2;
    std::size_t s1 = s_pair / n2;
    counts[(x * m1 + y1) * n1 + s1] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(cfg.n);
  LabeledJoint empirical({ch.x, ch.y1, ch.s1}, std::move(counts));
  return mutual_information(empirical, {"X"}, {"Y1"}, {"S1"}, base);
}

}  // namespace isac
