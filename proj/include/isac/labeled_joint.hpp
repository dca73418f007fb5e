#pragma once

#include <span>
#include <vector>

#include "isac/alphabet.hpp"

namespace isac {

/// Probability table over a product of named alphabets.
///
/// Storage is a flat row-major vector (last axis fastest). Construction
/// validates that every entry is finite and nonnegative and that the total
/// mass is 1 within kNormalizationTol, then renormalizes exactly once;
/// derived tables are never renormalized again.
class LabeledJoint {
public:
  static constexpr double kNormalizationTol = 1e-12;
  /// Mass below this is treated as an exact zero (skipped before logs,
  /// rejected as a conditioning event).
  static constexpr double kZeroMass = 1e-15;

  LabeledJoint(std::vector<Alphabet> axes, std::vector<double> mass);

  const std::vector<Alphabet>& axes() const noexcept { return axes_; }
  std::size_t rank() const noexcept { return axes_.size(); }
  std::size_t cell_count() const noexcept { return mass_.size(); }
  const std::vector<double>& mass() const noexcept { return mass_; }

  std::size_t axis_index(std::string_view name) const;  // throws on unknown name
  std::optional<std::size_t> find_axis(std::string_view name) const;
  const Alphabet& axis(std::string_view name) const { return axes_[axis_index(name)]; }

  std::size_t flatten(std::span<const std::size_t> indices) const;
  void unflatten(std::size_t flat, std::span<std::size_t> out) const;
  double at(std::span<const std::size_t> indices) const { return mass_[flatten(indices)]; }

  /// Sums mass onto the listed axes (given by position into axes()); the
  /// result is indexed row-major over those axes in the order given.
  std::vector<double> marginal_mass(std::span<const std::size_t> kept_axes) const;

private:
  std::vector<Alphabet> axes_;
  std::vector<double> mass_;
  std::vector<std::size_t> strides_;
};

/// Conditional probability table P(to | from), one pmf row per conditioning
/// tuple. Rows are row-major over the `to` axes; the row index is row-major
/// over the `from` axes. Each row is validated and renormalized like a
/// LabeledJoint.
class Kernel {
public:
  Kernel(std::vector<Alphabet> from_axes, std::vector<Alphabet> to_axes,
         std::vector<double> rows);

  /// Deterministic copy kernel; `from` and `to` must have equal size.
  static Kernel identity(const Alphabet& from, const Alphabet& to);
  /// Kernel into a one-symbol alphabet (used for a degenerate auxiliary).
  static Kernel constant(const Alphabet& from, const Alphabet& to);

  const std::vector<Alphabet>& from_axes() const noexcept { return from_axes_; }
  const std::vector<Alphabet>& to_axes() const noexcept { return to_axes_; }
  std::size_t from_cells() const noexcept { return from_cells_; }
  std::size_t to_cells() const noexcept { return to_cells_; }

  double prob(std::size_t from_flat, std::size_t to_flat) const {
    return rows_[from_flat * to_cells_ + to_flat];
  }
  std::span<const double> row(std::size_t from_flat) const {
    return {rows_.data() + from_flat * to_cells_, to_cells_};
  }

private:
  std::vector<Alphabet> from_axes_;
  std::vector<Alphabet> to_axes_;
  std::vector<double> rows_;
  std::size_t from_cells_ = 1;
  std::size_t to_cells_ = 1;
};

}  // namespace isac
