#include "isac/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

DistortionMetric::DistortionMetric(Alphabet state, Alphabet reconstruction,
                                   std::vector<double> table_)
    : state_alphabet(std::move(state)), reconstruction_alphabet(std::move(reconstruction)),
      table(std::move(table_)) {
  if (table.size() != state_alphabet.size() * reconstruction_alphabet.size())
    throw std::invalid_argument("distortion table size mismatch");
  for (double v : table)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("distortion entries must be finite and nonnegative");
}

DistortionMetric hamming_metric(const Alphabet& state_alphabet) {
  std::size_t n = state_alphabet.size();
  std::vector<double> table(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) table[i * n + i] = 0.0;
  Alphabet recon(state_alphabet.name() + "_hat", state_alphabet.symbols());
  return DistortionMetric(state_alphabet, std::move(recon), std::move(table));
}

std::size_t Estimator::operator()(std::span<const std::size_t> observation) const {
  if (observation.size() != domain.size())
    throw std::invalid_argument("estimator observation rank mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (observation[i] >= domain[i].size())
      throw std::out_of_range("estimator observation index out of range");
    flat = flat * domain[i].size() + observation[i];
  }
  return map[flat];
}

std::vector<std::string> Estimator::domain_names() const {
  std::vector<std::string> names;
  names.reserve(domain.size());
  for (const auto& a : domain) names.push_back(a.name());
  return names;
}

std::size_t Estimator::domain_cells() const {
  std::size_t n = 1;
  for (const auto& a : domain) n *= a.size();
  return n;
}

namespace {

// Marginal over (observations..., state), row-major with state fastest.
std::vector<double> observation_state_mass(const LabeledJoint& joint,
                                           const std::string& state_var,
                                           const std::vector<std::string>& observation_vars,
                                           const DistortionMetric& metric) {
  std::size_t state_axis = joint.axis_index(state_var);
  if (joint.axes()[state_axis] != metric.state_alphabet)
    throw std::invalid_argument("distortion metric does not match the state alphabet");
  std::vector<std::size_t> axes;
  for (const auto& v : observation_vars) {
    std::size_t a = joint.axis_index(v);
    if (a == state_axis)
      throw std::invalid_argument("estimator cannot observe the state it reconstructs");
    axes.push_back(a);
  }
  axes.push_back(state_axis);
  return joint.marginal_mass(axes);
}

}  // namespace

Estimator optimal_estimator(const LabeledJoint& joint, const std::string& state_var,
                            const DistortionMetric& metric,
                            const std::vector<std::string>& observation_vars) {
  if (observation_vars.empty())
    throw std::invalid_argument("optimal_estimator: no observation variables");
  auto mass = observation_state_mass(joint, state_var, observation_vars, metric);

  Estimator est;
  for (const auto& v : observation_vars) est.domain.push_back(joint.axis(v));

  std::size_t ns = metric.state_alphabet.size();
  std::size_t nr = metric.reconstruction_alphabet.size();
  std::size_t cells = est.domain_cells();
  est.map.assign(cells, 0);
  for (std::size_t c = 0; c < cells; ++c) {
    const double* w = mass.data() + c * ns;
    double total = 0.0;
    for (std::size_t s = 0; s < ns; ++s) total += w[s];
    if (total < LabeledJoint::kZeroMass) continue;  // unreachable cell: index 0
    std::size_t best = 0;
    double best_cost = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
      double cost = 0.0;
      for (std::size_t s = 0; s < ns; ++s) cost += w[s] * metric.at(s, r);
      if (r == 0 || cost < best_cost) {
        best = r;
        best_cost = cost;
      }
    }
    est.map[c] = best;
  }
  return est;
}

double expected_distortion(const LabeledJoint& joint, const Estimator& estimator,
                           const DistortionMetric& metric, const std::string& state_var) {
  auto names = estimator.domain_names();
  auto mass = observation_state_mass(joint, state_var, names, metric);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (joint.axis(names[i]) != estimator.domain[i])
      throw std::invalid_argument("estimator domain does not match the joint");

  std::size_t ns = metric.state_alphabet.size();
  double d = 0.0;
  for (std::size_t c = 0; c < estimator.domain_cells(); ++c) {
    std::size_t r = estimator.map[c];
    if (r >= metric.reconstruction_alphabet.size())
      throw std::invalid_argument("estimator output outside the reconstruction alphabet");
    const double* w = mass.data() + c * ns;
    for (std::size_t s = 0; s < ns; ++s) d += w[s] * metric.at(s, r);
  }
  return d;
}

}  // namespace isac
