#pragma once

#include <span>
#include <string>
#include <vector>

#include "isac/labeled_joint.hpp"

namespace isac {

/// Bounded per-letter distortion table d(state, reconstruction).
struct DistortionMetric {
  Alphabet state_alphabet;
  Alphabet reconstruction_alphabet;
  std::vector<double> table;  // row-major [state][reconstruction]

  DistortionMetric(Alphabet state, Alphabet reconstruction, std::vector<double> table);

  double at(std::size_t state, std::size_t reconstruction) const {
    return table[state * reconstruction_alphabet.size() + reconstruction];
  }
};

/// 0/1 loss with the reconstruction alphabet mirroring the state alphabet.
DistortionMetric hamming_metric(const Alphabet& state_alphabet);

/// Deterministic per-letter estimator: a total map from an observation cell
/// (row-major over `domain`, in order) to a reconstruction symbol index.
struct Estimator {
  std::vector<Alphabet> domain;
  std::vector<std::size_t> map;

  std::size_t operator()(std::span<const std::size_t> observation) const;
  std::vector<std::string> domain_names() const;
  std::size_t domain_cells() const;
};

/// The per-letter estimator minimizing expected distortion cell by cell:
/// argmin over reconstructions of the posterior-weighted distortion, ties to
/// the lowest reconstruction index, zero-mass observation cells to index 0.
Estimator optimal_estimator(const LabeledJoint& joint, const std::string& state_var,
                            const DistortionMetric& metric,
                            const std::vector<std::string>& observation_vars);

/// E[d(state, est(observation))] under the joint.
double expected_distortion(const LabeledJoint& joint, const Estimator& estimator,
                           const DistortionMetric& metric, const std::string& state_var);

}  // namespace isac
