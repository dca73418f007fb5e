#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isac/canonical.hpp"
#include "isac/regions.hpp"
#include "isac/spec_io.hpp"

/// The command implementations behind the `isac` executable, kept as a
/// library so they can be driven and inspected from tests without spawning
/// processes. Each run_* returns a process exit code and writes its report
/// to the supplied streams.
namespace isac::cli {

/// Where a command's channel comes from: one of the built-in families
/// (with its parameters) or a channel description file.
struct ChannelSelection {
  std::string example;  // "lemma1" | "becbsc"; empty when spec_path is used
  std::string spec_path;
  double q = 0.65;
  double alpha = 0.21;
  double gamma = 0.3;
  double beta = 0.2;
};

struct LoadedChannel {
  IsacChannel channel;
  DistortionPair metrics;
  std::string description;  // one-line provenance for reports
};
LoadedChannel resolve_channel(const ChannelSelection& sel);

struct CheckOptions {
  ChannelSelection channel;
  std::size_t resolution = 101;  // more-capable certification grid
  double tol = 1e-9;
  std::size_t threads = 1;
};
int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);

struct RegionOptions {
  ChannelSelection channel;
  SweepSpec sweep;          // sweep.bound selects the bound
  std::string output_path;  // empty -> stdout
};
int run_region(const RegionOptions& opt, std::ostream& out, std::ostream& err);

struct Figure2Options {
  double q = 0.65;
  double alpha = 0.21;
  std::size_t resolution = 1001;    // p-grid of the joint curve
  std::size_t lambda_count = 101;   // time-sharing grid
  std::string output_stem;          // empty -> report only, no CSV files
};

/// Joint-design curve vs. the time-sharing baseline, matched pointwise:
/// the baseline at weight lambda is compared against the joint curve at
/// p = 1 - lambda*(1 - p*), which reproduces the same distortion pair.
struct Figure2Report {
  double p_star = 0.0;  // argmax of the joint rate
  double rate_star = 0.0;
  double d1_star = 0.0;
  double d2_star = 0.0;
  std::size_t lambda_count = 0;
  std::size_t interior_total = 0;      // lambdas strictly between 0 and 1
  std::size_t interior_dominated = 0;  // of those, where the joint rate is higher
  double max_advantage = 0.0;          // best joint-minus-baseline rate gap
  double argmax_lambda = 0.0;
  double max_distortion_mismatch = 0.0;  // worst |joint - baseline| distortion gap
};
Figure2Report figure2_report(const Figure2Options& opt);
int run_figure2(const Figure2Options& opt, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  ChannelSelection channel;
  double p = 0.5;           // Pr[X = 1] for binary inputs
  std::vector<double> px;   // explicit input pmf; overrides p when nonempty
  std::size_t n = 100'000;
  std::uint64_t seed = 1;
  std::size_t repetitions = 1;
  std::size_t threads = 1;
  /// false: each state is estimated from (X, Yj) as in the closed forms;
  /// true: both estimators see (X, Y1, Y2).
  bool full_observations = false;
  bool mutual_information = false;  // also report plug-in vs exact I(X;Y1|S1)
  LogBase base = LogBase::bits;
};
int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

struct ExportOptions {
  ChannelSelection channel;
  std::string output_path;  // empty -> stdout
};
int run_export(const ExportOptions& opt, std::ostream& out, std::ostream& err);

/// Shared CSV schema: p_or_params,R1,R2_or_R,D1,D2,provenance. A point's
/// parameter column is its lone parameter value, or name=value pairs joined
/// with ';' when there are several. R1 stays blank for single-rate bounds.
void write_region_csv(std::ostream& out, const std::vector<RegionPoint>& points);

}  // namespace isac::cli
