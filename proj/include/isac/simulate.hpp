#pragma once

#include <cstdint>
#include <string_view>

#include "isac/channel.hpp"
#include "isac/estimation.hpp"
#include "isac/regions.hpp"

namespace isac {

/// Identifier of the sampling scheme, recorded in every simulation output:
/// the standard 64-bit Mersenne engine, mapped to uniforms via the top 53
/// bits, with inverse-CDF draws on top. Fully specified, so runs reproduce
/// across platforms; per-repetition seeds come from a splitmix64 stream.
inline constexpr std::string_view kGeneratorId = "mt19937_64/u53-invcdf";

struct SimConfig {
  std::vector<double> px;
  std::size_t n = 100'000;     // samples per repetition
  std::uint64_t seed = 1;
  std::size_t repetitions = 1;
  std::size_t threads = 1;
};

struct SimResult {
  double d1 = 0.0;
  double d2 = 0.0;
  double se1 = 0.0;  // standard error of the pooled mean
  double se2 = 0.0;
  std::size_t total_samples = 0;
  std::string_view generator = kGeneratorId;
};

/// Monte-Carlo estimate of both expected distortions under the given
/// per-letter estimators. Only sensing is simulated; secrecy terms are
/// analytic elsewhere.
SimResult simulate_distortion(const IsacChannel& ch, const Estimator& est1,
                              const Estimator& est2, const DistortionPair& metrics,
                              const SimConfig& cfg);

/// Plug-in I(X;Y1|S1) computed from an empirical joint over (X, Y1, S1).
double plugin_mutual_information(const IsacChannel& ch, const SimConfig& cfg,
                                 LogBase base = LogBase::bits);

/// The deterministic per-repetition seed stream.
std::uint64_t splitmix64(std::uint64_t state);

}  // namespace isac
