#include "isac/labeled_joint.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace isac {

namespace {

std::vector<std::size_t> make_strides(const std::vector<Alphabet>& axes) {
  std::vector<std::size_t> strides(axes.size(), 1);
  for (std::size_t i = axes.size(); i-- > 1;)
    strides[i - 1] = strides[i] * axes[i].size();
  return strides;
}

std::size_t product_size(const std::vector<Alphabet>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

void check_axis_names(const std::vector<Alphabet>& axes, const char* what) {
  std::unordered_set<std::string_view> names;
  for (const auto& a : axes)
    if (!names.insert(a.name()).second)
      throw std::invalid_argument(std::string(what) + " repeats axis '" + a.name() + "'");
}

// Validates a mass block and normalizes it in place to sum exactly to 1.
void normalize_block(double* p, std::size_t n, double tol, const char* what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(p[i]))
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    if (p[i] < 0.0)
      throw std::invalid_argument(std::string(what) + ": negative entry");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument(std::string(what) + ": mass sums to " + std::to_string(sum) +
                                ", not 1 within tolerance");
  for (std::size_t i = 0; i < n; ++i) p[i] /= sum;
}

}  // namespace

LabeledJoint::LabeledJoint(std::vector<Alphabet> axes, std::vector<double> mass)
    : axes_(std::move(axes)), mass_(std::move(mass)) {
  if (axes_.empty()) throw std::invalid_argument("joint needs at least one axis");
  check_axis_names(axes_, "joint");
  if (mass_.size() != product_size(axes_))
    throw std::invalid_argument("joint mass has " + std::to_string(mass_.size()) +
                                " entries, axes imply " + std::to_string(product_size(axes_)));
  normalize_block(mass_.data(), mass_.size(), kNormalizationTol, "joint");
  strides_ = make_strides(axes_);
}

std::size_t LabeledJoint::axis_index(std::string_view name) const {
  if (auto i = find_axis(name)) return *i;
  throw std::invalid_argument("joint has no axis named '" + std::string(name) + "'");
}

std::optional<std::size_t> LabeledJoint::find_axis(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name() == name) return i;
  return std::nullopt;
}

std::size_t LabeledJoint::flatten(std::span<const std::size_t> indices) const {
  if (indices.size() != axes_.size())
    throw std::invalid_argument("index tuple rank mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= axes_[i].size()) throw std::out_of_range("axis index out of range");
    flat += indices[i] * strides_[i];
  }
  return flat;
}

void LabeledJoint::unflatten(std::size_t flat, std::span<std::size_t> out) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    out[i] = (flat / strides_[i]) % axes_[i].size();
  }
}

std::vector<double> LabeledJoint::marginal_mass(std::span<const std::size_t> kept_axes) const {
  std::size_t out_cells = 1;
  for (std::size_t a : kept_axes) {
    if (a >= axes_.size()) throw std::invalid_argument("marginal axis out of range");
    out_cells *= axes_[a].size();
  }
  // Row-major strides of the output, in the order of kept_axes.
  std::vector<std::size_t> out_strides(kept_axes.size(), 1);
  for (std::size_t i = kept_axes.size(); i-- > 1;)
    out_strides[i - 1] = out_strides[i] * axes_[kept_axes[i]].size();

  std::vector<double> out(out_cells, 0.0);
  for (std::size_t f = 0; f < mass_.size(); ++f) {
    if (mass_[f] == 0.0) continue;
    std::size_t of = 0;
    for (std::size_t i = 0; i < kept_axes.size(); ++i) {
      std::size_t a = kept_axes[i];
      of += ((f / strides_[a]) % axes_[a].size()) * out_strides[i];
    }
    out[of] += mass_[f];
  }
  return out;
}

Kernel::Kernel(std::vector<Alphabet> from_axes, std::vector<Alphabet> to_axes,
               std::vector<double> rows)
    : from_axes_(std::move(from_axes)), to_axes_(std::move(to_axes)), rows_(std::move(rows)) {
  if (from_axes_.empty() || to_axes_.empty())
    throw std::invalid_argument("kernel needs nonempty from/to axes");
  check_axis_names(from_axes_, "kernel from-side");
  check_axis_names(to_axes_, "kernel to-side");
  from_cells_ = product_size(from_axes_);
  to_cells_ = product_size(to_axes_);
  if (rows_.size() != from_cells_ * to_cells_)
    throw std::invalid_argument("kernel table size mismatch");
  for (std::size_t r = 0; r < from_cells_; ++r)
    normalize_block(rows_.data() + r * to_cells_, to_cells_,
                    LabeledJoint::kNormalizationTol, "kernel row");
}

Kernel Kernel::identity(const Alphabet& from, const Alphabet& to) {
  if (from.size() != to.size())
    throw std::invalid_argument("identity kernel needs equal alphabet sizes");
  std::vector<double> rows(from.size() * to.size(), 0.0);
  for (std::size_t i = 0; i < from.size(); ++i) rows[i * to.size() + i] = 1.0;
  return Kernel({from}, {to}, std::move(rows));
}

Kernel Kernel::constant(const Alphabet& from, const Alphabet& to) {
  if (to.size() != 1)
    throw std::invalid_argument("constant kernel needs a one-symbol target alphabet");
  return Kernel({from}, {to}, std::vector<double>(from.size(), 1.0));
}

}  // namespace isac
