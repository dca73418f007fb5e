#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isac/channel.hpp"
#include "isac/estimation.hpp"

namespace isac {

/// Which bound produced a region point. The names double as CLI selectors
/// and as the provenance column of CSV output.
enum class Provenance {
  inner_ps,    // partial secrecy, achievable
  outer_ps,    // partial secrecy, converse
  theorem1,    // partial secrecy, exact under the degraded ordering
  theorem2,    // partial secrecy, exact under the reverse ordering
  inner_full,  // full secrecy, achievable
  outer_full,  // full secrecy, converse
  theorem3,    // full secrecy, exact under the degraded ordering
  theorem4,    // full secrecy, exact under the reverse ordering
  lemma1,      // closed form, noiseless multiplicative-state family
  lemma3,      // closed form, BEC/BSC family
  separation,  // time-sharing baseline
};

std::string_view provenance_name(Provenance p);
std::optional<Provenance> provenance_from_name(std::string_view name);

/// One operating point. r1 is present only for the partial-secrecy bounds,
/// where two message rates trade off; r2_or_r then holds the second rate.
struct RegionPoint {
  std::optional<double> r1;
  double r2_or_r = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  Provenance provenance = Provenance::inner_full;
  std::vector<std::pair<std::string, double>> parameters;
};

struct DistortionPair {
  DistortionMetric d1;
  DistortionMetric d2;
};
DistortionPair hamming_distortions(const IsacChannel& ch);

/// Partial-secrecy rate bound in corner form. The two rates are coupled:
/// R2 <= min{r2_cap, iv_y1_s1 - R1}, with R1 <= r1_max.
struct PartialSecrecyBound {
  double r1_max = 0.0;
  double r2_cap = 0.0;    // the R1-independent cap
  double iv_y1_s1 = 0.0;  // I(V;Y1|S1), the coupling term
  double d1_min = 0.0;
  double d2_min = 0.0;

  double r2_at(double r1) const;
};

struct FullSecrecyBound {
  double r_max = 0.0;
  double d1_min = 0.0;
  double d2_min = 0.0;
};

PartialSecrecyBound partial_secrecy_inner(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base, const DistortionPair& metrics);
PartialSecrecyBound partial_secrecy_inner(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base = LogBase::bits);

PartialSecrecyBound partial_secrecy_outer(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base, const DistortionPair& metrics);
PartialSecrecyBound partial_secrecy_outer(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base = LogBase::bits);

FullSecrecyBound full_secrecy_inner(const IsacChannel& ch, const AuxChain& aux,
                                    LogBase base, const DistortionPair& metrics);
FullSecrecyBound full_secrecy_inner(const IsacChannel& ch, const AuxChain& aux,
                                    LogBase base = LogBase::bits);

FullSecrecyBound full_secrecy_outer(const IsacChannel& ch, const std::vector<double>& px,
                                    LogBase base, const DistortionPair& metrics);
FullSecrecyBound full_secrecy_outer(const IsacChannel& ch, const std::vector<double>& px,
                                    LogBase base = LogBase::bits);

/// Exact-region evaluators. Each one is the matching bound formula plus a
/// structural precondition on the channel ordering; a violated precondition
/// attaches a warning instead of failing, since the formula still evaluates.
template <typename Bound>
struct TheoremResult {
  Bound bound;
  std::optional<std::string> warning;
};

TheoremResult<PartialSecrecyBound> theorem1_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base, const DistortionPair& metrics);
TheoremResult<PartialSecrecyBound> theorem1_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base = LogBase::bits);
TheoremResult<PartialSecrecyBound> theorem2_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base, const DistortionPair& metrics);
TheoremResult<PartialSecrecyBound> theorem2_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base = LogBase::bits);
TheoremResult<FullSecrecyBound> theorem3_point(const IsacChannel& ch,
                                               const std::vector<double>& px, LogBase base,
                                               const DistortionPair& metrics);
TheoremResult<FullSecrecyBound> theorem3_point(const IsacChannel& ch,
                                               const std::vector<double>& px,
                                               LogBase base = LogBase::bits);
TheoremResult<FullSecrecyBound> theorem4_point(const IsacChannel& ch,
                                               const std::vector<double>& px, LogBase base,
                                               const DistortionPair& metrics);
TheoremResult<FullSecrecyBound> theorem4_point(const IsacChannel& ch,
                                               const std::vector<double>& px,
                                               LogBase base = LogBase::bits);

struct SweepSpec {
  Provenance bound = Provenance::theorem3;
  std::size_t px_resolution = 1001;
  /// Partial-secrecy bounds only: how many R1 samples per (px, aux) cell.
  std::size_t r1_resolution = 33;
  /// 1 keeps V = X; larger values sweep each row of P(V|X) over a simplex
  /// grid of this resolution.
  std::size_t aux_resolution = 1;
  std::size_t v_size = 0;  // 0 -> |X|
  /// 1 keeps U constant; larger values sweep P(U|V) likewise (partial-
  /// secrecy achievable bound only).
  std::size_t u_resolution = 1;
  std::size_t u_size = 1;
  LogBase base = LogBase::bits;
  double pareto_tol = 1e-12;
  /// Hard cap on evaluated grid points; larger sweeps are refused up front
  /// with a cost estimate (the Pareto pass is quadratic in the worst case).
  std::size_t max_points = 100'000;
  std::size_t threads = 1;
};

struct SweepResult {
  std::vector<RegionPoint> points;  // Pareto-filtered, sorted by parameters
  std::vector<std::string> warnings;
};

SweepResult sweep_region(const IsacChannel& ch, const SweepSpec& spec,
                         const DistortionPair& metrics);
SweepResult sweep_region(const IsacChannel& ch, const SweepSpec& spec);

/// Drops every point that is strictly worse in all objectives (rates high,
/// distortions low, differences beyond tol) than some other point. Points
/// that merely tie somewhere survive, so boundary corners are kept.
std::vector<RegionPoint> pareto_filter(std::vector<RegionPoint> points, double tol = 1e-12);

/// Time-sharing segment between two operating points; num_lambda >= 2 points
/// with lambda = 1 reproducing `max_rate` and lambda = 0 `min_distortion`.
std::vector<RegionPoint> separation_baseline(const RegionPoint& max_rate,
                                             const RegionPoint& min_distortion,
                                             std::size_t num_lambda);

}  // namespace isac
