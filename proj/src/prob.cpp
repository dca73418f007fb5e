#include "isac/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace isac {

namespace {

double from_nats(double nats, LogBase base) {
  return base == LogBase::nats ? nats : nats / std::numbers::ln2;
}

// Resolves names to axis positions, rejecting unknowns and duplicates.
std::vector<std::size_t> resolve_axes(const LabeledJoint& joint,
                                      const std::vector<std::string>& vars,
                                      const char* what) {
  std::vector<std::size_t> axes;
  axes.reserve(vars.size());
  std::unordered_set<std::size_t> seen;
  for (const auto& v : vars) {
    std::size_t a = joint.axis_index(v);
    if (!seen.insert(a).second)
      throw std::invalid_argument(std::string(what) + " lists axis '" + v + "' twice");
    axes.push_back(a);
  }
  return axes;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

double entropy_of_mass_nats(const std::vector<double>& mass) {
  double h = 0.0;
  for (double p : mass)
    if (p > LabeledJoint::kZeroMass) h -= p * std::log(p);
  return h;
}

// Small chain-rule differences can cancel to a tiny negative; treat those as
// zero but let anything larger through untouched (it would mean a real bug).
double clamp_tiny_negative(double v) {
  return (v < 0.0 && v >= -1e-9) ? 0.0 : v;
}

}  // namespace

double binary_entropy(double x, LogBase base) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  double h = 0.0;
  if (x > LabeledJoint::kZeroMass) h -= x * std::log(x);
  if (1.0 - x > LabeledJoint::kZeroMass) h -= (1.0 - x) * std::log(1.0 - x);
  return from_nats(h, base);
}

double star(double p, double b) {
  if (!(p >= 0.0 && p <= 1.0 && b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("star: arguments outside [0, 1]");
  return p * (1.0 - b) + (1.0 - p) * b;
}

double entropy(const LabeledJoint& joint, const std::vector<std::string>& vars, LogBase base) {
  if (vars.empty()) throw std::invalid_argument("entropy: variable set is empty");
  auto axes = resolve_axes(joint, vars, "entropy");
  return from_nats(entropy_of_mass_nats(joint.marginal_mass(axes)), base);
}

double conditional_entropy(const LabeledJoint& joint,
                           const std::vector<std::string>& target_vars,
                           const std::vector<std::string>& given_vars, LogBase base) {
  if (target_vars.empty()) throw std::invalid_argument("conditional_entropy: empty target");
  auto both = resolve_axes(joint, concat(target_vars, given_vars), "conditional_entropy");
  double h_both = entropy_of_mass_nats(joint.marginal_mass(both));
  double h_given = 0.0;
  if (!given_vars.empty()) {
    std::span<const std::size_t> given_axes(both.data() + target_vars.size(), given_vars.size());
    h_given = entropy_of_mass_nats(joint.marginal_mass(given_axes));
  }
  return from_nats(clamp_tiny_negative(h_both - h_given), base);
}

double mutual_information(const LabeledJoint& joint, const std::vector<std::string>& a_vars,
                          const std::vector<std::string>& b_vars,
                          const std::vector<std::string>& given_vars, LogBase base) {
  if (a_vars.empty() || b_vars.empty())
    throw std::invalid_argument("mutual_information: empty variable set");
  resolve_axes(joint, concat(concat(a_vars, b_vars), given_vars), "mutual_information");
  double h_a_given = conditional_entropy(joint, a_vars, given_vars, LogBase::nats);
  double h_a_both = conditional_entropy(joint, a_vars, concat(b_vars, given_vars), LogBase::nats);
  return from_nats(clamp_tiny_negative(h_a_given - h_a_both), base);
}

LabeledJoint marginalize(const LabeledJoint& joint, const std::vector<std::string>& keep_vars) {
  if (keep_vars.empty()) throw std::invalid_argument("marginalize: nothing to keep");
  auto axes = resolve_axes(joint, keep_vars, "marginalize");
  std::sort(axes.begin(), axes.end());  // output keeps the joint's axis order
  std::vector<Alphabet> out_axes;
  out_axes.reserve(axes.size());
  for (std::size_t a : axes) out_axes.push_back(joint.axes()[a]);
  return LabeledJoint(std::move(out_axes), joint.marginal_mass(axes));
}

std::optional<LabeledJoint> condition(const LabeledJoint& joint,
                                      const std::vector<std::string>& given_vars,
                                      const std::vector<std::string>& given_symbols) {
  if (given_vars.empty()) throw std::invalid_argument("condition: empty conditioning set");
  if (given_vars.size() != given_symbols.size())
    throw std::invalid_argument("condition: variable/symbol count mismatch");
  auto given_axes = resolve_axes(joint, given_vars, "condition");
  if (given_axes.size() == joint.rank())
    throw std::invalid_argument("condition: no axes would remain");

  std::vector<std::size_t> fixed(joint.rank(), SIZE_MAX);
  for (std::size_t i = 0; i < given_axes.size(); ++i) {
    const Alphabet& alpha = joint.axes()[given_axes[i]];
    auto idx = alpha.index_of(given_symbols[i]);
    if (!idx)
      throw std::invalid_argument("condition: alphabet '" + alpha.name() +
                                  "' has no symbol '" + given_symbols[i] + "'");
    fixed[given_axes[i]] = *idx;
  }

  std::vector<std::size_t> rest_axes;
  for (std::size_t a = 0; a < joint.rank(); ++a)
    if (fixed[a] == SIZE_MAX) rest_axes.push_back(a);

  std::vector<Alphabet> out_axes;
  std::size_t out_cells = 1;
  for (std::size_t a : rest_axes) {
    out_axes.push_back(joint.axes()[a]);
    out_cells *= joint.axes()[a].size();
  }
  std::vector<std::size_t> out_strides(rest_axes.size(), 1);
  for (std::size_t i = rest_axes.size(); i-- > 1;)
    out_strides[i - 1] = out_strides[i] * joint.axes()[rest_axes[i]].size();

  std::vector<double> out(out_cells, 0.0);
  std::vector<std::size_t> idx(joint.rank());
  double event_mass = 0.0;
  for (std::size_t f = 0; f < joint.cell_count(); ++f) {
    joint.unflatten(f, idx);
    bool match = true;
    for (std::size_t a = 0; a < joint.rank(); ++a)
      if (fixed[a] != SIZE_MAX && idx[a] != fixed[a]) { match = false; break; }
    if (!match) continue;
    std::size_t of = 0;
    for (std::size_t i = 0; i < rest_axes.size(); ++i)
      of += idx[rest_axes[i]] * out_strides[i];
    out[of] += joint.mass()[f];
    event_mass += joint.mass()[f];
  }
  if (event_mass < LabeledJoint::kZeroMass) return std::nullopt;
  for (double& v : out) v /= event_mass;
  return LabeledJoint(std::move(out_axes), std::move(out));
}

}  // namespace isac
