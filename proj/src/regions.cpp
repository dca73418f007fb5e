#include "isac/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "isac/parallel.hpp"

namespace isac {

namespace {

constexpr std::array<std::pair<Provenance, std::string_view>, 11> kProvenanceNames{{
    {Provenance::inner_ps, "inner-PS"},
    {Provenance::outer_ps, "outer-PS"},
    {Provenance::theorem1, "theorem1"},
    {Provenance::theorem2, "theorem2"},
    {Provenance::inner_full, "inner-full"},
    {Provenance::outer_full, "outer-full"},
    {Provenance::theorem3, "theorem3"},
    {Provenance::theorem4, "theorem4"},
    {Provenance::lemma1, "lemma1"},
    {Provenance::lemma3, "lemma3"},
    {Provenance::separation, "separation"},
}};

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  return out;
}

void distortion_minima(const LabeledJoint& joint, const DistortionPair& metrics, double& d1,
                       double& d2) {
  const std::vector<std::string> obs{"X", "Y1", "Y2"};
  Estimator e1 = optimal_estimator(joint, "S1", metrics.d1, obs);
  Estimator e2 = optimal_estimator(joint, "S2", metrics.d2, obs);
  d1 = expected_distortion(joint, e1, metrics.d1, "S1");
  d2 = expected_distortion(joint, e2, metrics.d2, "S2");
}

std::string ordering_warning(const char* which, const OrderingVerdict& v) {
  std::ostringstream os;
  os << "channel fails the " << which << " ordering (violation " << v.max_violation
     << "); the formula was still evaluated but is not known to be tight";
  return os.str();
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  for (auto [val, name] : kProvenanceNames)
    if (val == p) return name;
  throw std::logic_error("unknown provenance");
}

std::optional<Provenance> provenance_from_name(std::string_view name) {
  std::string lower = ascii_lower(name);
  for (auto [val, nm] : kProvenanceNames)
    if (lower == ascii_lower(nm)) return val;
  return std::nullopt;
}

DistortionPair hamming_distortions(const IsacChannel& ch) {
  return {hamming_metric(ch.s1), hamming_metric(ch.s2)};
}

double PartialSecrecyBound::r2_at(double r1) const {
  if (r1 < 0.0 || r1 > r1_max + 1e-12)
    throw std::invalid_argument("r2_at: R1 outside [0, r1_max]");
  return pos_part(std::min(r2_cap, iv_y1_s1 - r1));
}

PartialSecrecyBound partial_secrecy_inner(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base, const DistortionPair& metrics) {
  validate_aux(ch, aux, VCap::partial_inner);
  LabeledJoint j = assemble_joint(ch, aux);
  PartialSecrecyBound b;
  b.r1_max = mutual_information(j, {"U"}, {"Y1"}, {"S1"}, base);
  double gain = mutual_information(j, {"V"}, {"Y1"}, {"S1", "U"}, base) -
                mutual_information(j, {"V"}, {"Y2"}, {"S2", "U"}, base);
  b.r2_cap = pos_part(gain) + conditional_entropy(j, {"Y1"}, {"Y2", "S2", "V"}, base);
  b.iv_y1_s1 = mutual_information(j, {"V"}, {"Y1"}, {"S1"}, base);
  distortion_minima(j, metrics, b.d1_min, b.d2_min);
  return b;
}

PartialSecrecyBound partial_secrecy_inner(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base) {
  return partial_secrecy_inner(ch, aux, base, hamming_distortions(ch));
}

PartialSecrecyBound partial_secrecy_outer(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base, const DistortionPair& metrics) {
  validate_aux(ch, aux, VCap::outer);
  LabeledJoint j = assemble_joint(ch, aux);
  PartialSecrecyBound b;
  b.iv_y1_s1 = mutual_information(j, {"V"}, {"Y1"}, {"S1"}, base);
  b.r1_max = b.iv_y1_s1;
  b.r2_cap = conditional_entropy(j, {"Y1", "S1"}, {"Y2", "S2"}, base) -
             conditional_entropy(j, {"S1"}, {"Y1", "Y2", "S2", "V"}, base);
  distortion_minima(j, metrics, b.d1_min, b.d2_min);
  return b;
}

PartialSecrecyBound partial_secrecy_outer(const IsacChannel& ch, const AuxChain& aux,
                                          LogBase base) {
  return partial_secrecy_outer(ch, aux, base, hamming_distortions(ch));
}

FullSecrecyBound full_secrecy_inner(const IsacChannel& ch, const AuxChain& aux, LogBase base,
                                    const DistortionPair& metrics) {
  validate_aux(ch, aux, VCap::outer);
  LabeledJoint j = assemble_joint(ch, aux);
  double iv = mutual_information(j, {"V"}, {"Y1"}, {"S1"}, base);
  double gain = iv - mutual_information(j, {"V"}, {"Y2"}, {"S2"}, base);
  double leak_free = pos_part(gain) + conditional_entropy(j, {"Y1"}, {"Y2", "S2", "V"}, base);
  FullSecrecyBound b;
  b.r_max = std::min(leak_free, iv);
  distortion_minima(j, metrics, b.d1_min, b.d2_min);
  return b;
}

FullSecrecyBound full_secrecy_inner(const IsacChannel& ch, const AuxChain& aux, LogBase base) {
  return full_secrecy_inner(ch, aux, base, hamming_distortions(ch));
}

FullSecrecyBound full_secrecy_outer(const IsacChannel& ch, const std::vector<double>& px,
                                    LogBase base, const DistortionPair& metrics) {
  LabeledJoint j = assemble_joint(ch, px);
  double cap = conditional_entropy(j, {"Y1", "S1"}, {"Y2", "S2"}, base) -
               conditional_entropy(j, {"S1"}, {"Y1", "Y2", "S2", "X"}, base);
  FullSecrecyBound b;
  b.r_max = pos_part(std::min(cap, mutual_information(j, {"X"}, {"Y1"}, {"S1"}, base)));
  distortion_minima(j, metrics, b.d1_min, b.d2_min);
  return b;
}

FullSecrecyBound full_secrecy_outer(const IsacChannel& ch, const std::vector<double>& px,
                                    LogBase base) {
  return full_secrecy_outer(ch, px, base, hamming_distortions(ch));
}

TheoremResult<PartialSecrecyBound> theorem1_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base, const DistortionPair& metrics) {
  TheoremResult<PartialSecrecyBound> r{partial_secrecy_outer(ch, aux, base, metrics), {}};
  if (auto v = check_physically_degraded(ch); !v.holds)
    r.warning = ordering_warning("degraded", v);
  return r;
}

TheoremResult<PartialSecrecyBound> theorem1_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base) {
  return theorem1_point(ch, aux, base, hamming_distortions(ch));
}

namespace {

PartialSecrecyBound theorem2_bound(const IsacChannel& ch, const AuxChain& aux, LogBase base,
                                   const DistortionPair& metrics) {
  validate_aux(ch, aux, VCap::reverse_degraded);
  LabeledJoint j = assemble_joint(ch, aux);
  PartialSecrecyBound b;
  b.iv_y1_s1 = mutual_information(j, {"V"}, {"Y1"}, {"S1"}, base);
  b.r1_max = b.iv_y1_s1;
  b.r2_cap = conditional_entropy(j, {"Y1"}, {"Y2", "S2"}, base);
  distortion_minima(j, metrics, b.d1_min, b.d2_min);
  return b;
}

FullSecrecyBound theorem4_bound(const IsacChannel& ch, const std::vector<double>& px,
                                LogBase base, const DistortionPair& metrics) {
  LabeledJoint j = assemble_joint(ch, px);
  FullSecrecyBound b;
  b.r_max = std::min(conditional_entropy(j, {"Y1"}, {"Y2", "S2"}, base),
                     mutual_information(j, {"X"}, {"Y1"}, {"S1"}, base));
  distortion_minima(j, metrics, b.d1_min, b.d2_min);
  return b;
}

}  // namespace

TheoremResult<PartialSecrecyBound> theorem2_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base, const DistortionPair& metrics) {
  TheoremResult<PartialSecrecyBound> r{theorem2_bound(ch, aux, base, metrics), {}};
  if (auto v = check_reversely_degraded(ch); !v.holds)
    r.warning = ordering_warning("reverse", v);
  return r;
}

TheoremResult<PartialSecrecyBound> theorem2_point(const IsacChannel& ch, const AuxChain& aux,
                                                  LogBase base) {
  return theorem2_point(ch, aux, base, hamming_distortions(ch));
}

TheoremResult<FullSecrecyBound> theorem3_point(const IsacChannel& ch,
                                               const std::vector<double>& px, LogBase base,
                                               const DistortionPair& metrics) {
  TheoremResult<FullSecrecyBound> r{full_secrecy_outer(ch, px, base, metrics), {}};
  if (auto v = check_physically_degraded(ch); !v.holds)
    r.warning = ordering_warning("degraded", v);
  return r;
}

TheoremResult<FullSecrecyBound> theorem3_point(const IsacChannel& ch,
                                               const std::vector<double>& px, LogBase base) {
  return theorem3_point(ch, px, base, hamming_distortions(ch));
}

TheoremResult<FullSecrecyBound> theorem4_point(const IsacChannel& ch,
                                               const std::vector<double>& px, LogBase base,
                                               const DistortionPair& metrics) {
  TheoremResult<FullSecrecyBound> r{theorem4_bound(ch, px, base, metrics), {}};
  if (auto v = check_reversely_degraded(ch); !v.holds)
    r.warning = ordering_warning("reverse", v);
  return r;
}

TheoremResult<FullSecrecyBound> theorem4_point(const IsacChannel& ch,
                                               const std::vector<double>& px, LogBase base) {
  return theorem4_point(ch, px, base, hamming_distortions(ch));
}

namespace {

bool bound_uses_v(Provenance p) {
  switch (p) {
    case Provenance::inner_ps:
    case Provenance::outer_ps:
    case Provenance::theorem1:
    case Provenance::theorem2:
    case Provenance::inner_full:
      return true;
    default:
      return false;
  }
}

bool bound_is_partial(Provenance p) {
  switch (p) {
    case Provenance::inner_ps:
    case Provenance::outer_ps:
    case Provenance::theorem1:
    case Provenance::theorem2:
      return true;
    default:
      return false;
  }
}

// All kernels from `from` to an alphabet of size `to_size` whose rows live on
// a simplex grid of the given resolution.
std::vector<Kernel> kernel_grid(const Alphabet& from, const Alphabet& to,
                                std::size_t resolution) {
  auto rows = simplex_grid(to.size(), resolution);
  std::size_t nf = from.size();
  std::vector<std::size_t> pick(nf, 0);
  std::vector<Kernel> kernels;
  while (true) {
    std::vector<double> table;
    table.reserve(nf * to.size());
    for (std::size_t r = 0; r < nf; ++r)
      table.insert(table.end(), rows[pick[r]].begin(), rows[pick[r]].end());
    kernels.emplace_back(std::vector<Alphabet>{from}, std::vector<Alphabet>{to},
                         std::move(table));
    std::size_t i = nf;
    while (i-- > 0) {
      if (++pick[i] < rows.size()) break;
      pick[i] = 0;
      if (i == 0) return kernels;
    }
  }
}

std::size_t pow_count(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / std::max<std::size_t>(base, 1)) return cap + 1;
    v *= base;
  }
  return v;
}

void append_kernel_parameters(std::vector<std::pair<std::string, double>>& params,
                              const char* prefix, const Kernel& k) {
  // Last column of each row is implied by normalization; skip it.
  for (std::size_t r = 0; r < k.from_cells(); ++r)
    for (std::size_t c = 0; c + 1 < k.to_cells(); ++c)
      params.emplace_back(prefix + std::to_string(r) + "_" + std::to_string(c), k.prob(r, c));
}

}  // namespace

SweepResult sweep_region(const IsacChannel& ch, const SweepSpec& spec,
                         const DistortionPair& metrics) {
  switch (spec.bound) {
    case Provenance::lemma1:
    case Provenance::lemma3:
    case Provenance::separation:
      throw std::invalid_argument(
          "sweep_region evaluates the generic bounds; closed forms and the "
          "time-sharing baseline have their own entry points");
    default:
      break;
  }
  if (spec.px_resolution < 2) throw std::invalid_argument("sweep: px resolution must be >= 2");
  bool partial = bound_is_partial(spec.bound);
  bool uses_v = bound_uses_v(spec.bound);
  if (partial && spec.r1_resolution < 2)
    throw std::invalid_argument("sweep: r1 resolution must be >= 2");

  auto pxs = simplex_grid(ch.x.size(), spec.px_resolution);

  std::size_t v_size = spec.v_size == 0 ? ch.x.size() : spec.v_size;
  std::vector<Kernel> v_kernels;
  Alphabet v("V", ch.x.symbols());
  if (uses_v && spec.aux_resolution > 1) {
    std::vector<std::string> syms;
    for (std::size_t i = 0; i < v_size; ++i) syms.push_back("v" + std::to_string(i));
    v = Alphabet("V", syms);
    std::size_t per_row = simplex_grid(v_size, spec.aux_resolution).size();
    if (pow_count(per_row, ch.x.size(), spec.max_points) > spec.max_points)
      throw std::invalid_argument("sweep: auxiliary kernel grid alone exceeds max_points");
    v_kernels = kernel_grid(ch.x, v, spec.aux_resolution);
  } else {
    v_kernels.push_back(Kernel::identity(ch.x, v));
  }

  std::vector<Kernel> u_kernels;
  Alphabet u("U", {"*"});
  if (spec.bound == Provenance::inner_ps && spec.u_resolution > 1) {
    std::vector<std::string> syms;
    for (std::size_t i = 0; i < spec.u_size; ++i) syms.push_back("u" + std::to_string(i));
    u = Alphabet("U", syms);
    std::size_t per_row = simplex_grid(spec.u_size, spec.u_resolution).size();
    if (pow_count(per_row, v.size(), spec.max_points) > spec.max_points)
      throw std::invalid_argument("sweep: U kernel grid alone exceeds max_points");
    u_kernels = kernel_grid(v, u, spec.u_resolution);
  } else {
    u_kernels.push_back(Kernel::constant(v, u));
  }

  std::size_t cells = pxs.size() * v_kernels.size() * u_kernels.size();
  std::size_t points_per_cell = partial ? spec.r1_resolution : 1;
  if (cells > spec.max_points / points_per_cell)
    throw std::invalid_argument(
        "sweep of " + std::to_string(cells * points_per_cell) +
        " points exceeds max_points = " + std::to_string(spec.max_points) +
        "; lower the resolutions or raise the cap (the Pareto pass is quadratic)");

  // Auxiliary cardinalities are identical across cells; validating one chain
  // up front keeps the parallel section free of throwing paths.
  if (uses_v) {
    VCap cap = spec.bound == Provenance::inner_ps ? VCap::partial_inner
               : spec.bound == Provenance::theorem2 ? VCap::reverse_degraded
                                                    : VCap::outer;
    validate_aux(ch, AuxChain{pxs[0], v_kernels[0], u_kernels[0]}, cap);
  }

  SweepResult result;
  switch (spec.bound) {
    case Provenance::theorem1:
    case Provenance::theorem3:
      if (auto v_ = check_physically_degraded(ch); !v_.holds)
        result.warnings.push_back(ordering_warning("degraded", v_));
      break;
    case Provenance::theorem2:
    case Provenance::theorem4:
      if (auto v_ = check_reversely_degraded(ch); !v_.holds)
        result.warnings.push_back(ordering_warning("reverse", v_));
      break;
    default:
      break;
  }

  std::vector<std::vector<RegionPoint>> slots(cells);
  parallel_for_ranges(cells, spec.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t cell = lo; cell < hi; ++cell) {
      std::size_t pi = cell / (v_kernels.size() * u_kernels.size());
      std::size_t rest = cell % (v_kernels.size() * u_kernels.size());
      std::size_t vi = rest / u_kernels.size();
      std::size_t ui = rest % u_kernels.size();
      const auto& px = pxs[pi];

      std::vector<std::pair<std::string, double>> params;
      if (ch.x.size() == 2) {
        params.emplace_back("p", px[1]);
      } else {
        for (std::size_t i = 0; i < px.size(); ++i)
          params.emplace_back("px" + std::to_string(i), px[i]);
      }
      if (uses_v && spec.aux_resolution > 1)
        append_kernel_parameters(params, "v", v_kernels[vi]);
      if (u_kernels.size() > 1) append_kernel_parameters(params, "u", u_kernels[ui]);

      AuxChain aux{px, v_kernels[vi], u_kernels[ui]};
      auto& out = slots[cell];

      auto emit_full = [&](const FullSecrecyBound& b) {
        RegionPoint pt;
        pt.r2_or_r = b.r_max;
        pt.d1 = b.d1_min;
        pt.d2 = b.d2_min;
        pt.provenance = spec.bound;
        pt.parameters = params;
        out.push_back(std::move(pt));
      };
      auto emit_partial = [&](const PartialSecrecyBound& b) {
        for (std::size_t i = 0; i < spec.r1_resolution; ++i) {
          double r1 = b.r1_max * static_cast<double>(i) /
                      static_cast<double>(spec.r1_resolution - 1);
          RegionPoint pt;
          pt.r1 = r1;
          pt.r2_or_r = b.r2_at(r1);
          pt.d1 = b.d1_min;
          pt.d2 = b.d2_min;
          pt.provenance = spec.bound;
          pt.parameters = params;
          out.push_back(std::move(pt));
        }
      };

      switch (spec.bound) {
        case Provenance::inner_ps:
          emit_partial(partial_secrecy_inner(ch, aux, spec.base, metrics));
          break;
        case Provenance::outer_ps:
          emit_partial(partial_secrecy_outer(ch, aux, spec.base, metrics));
          break;
        case Provenance::theorem1:
          emit_partial(partial_secrecy_outer(ch, aux, spec.base, metrics));
          break;
        case Provenance::theorem2:
          emit_partial(theorem2_bound(ch, aux, spec.base, metrics));
          break;
        case Provenance::inner_full:
          emit_full(full_secrecy_inner(ch, aux, spec.base, metrics));
          break;
        case Provenance::outer_full:
          emit_full(full_secrecy_outer(ch, px, spec.base, metrics));
          break;
        case Provenance::theorem3:
          emit_full(full_secrecy_outer(ch, px, spec.base, metrics));
          break;
        case Provenance::theorem4:
          emit_full(theorem4_bound(ch, px, spec.base, metrics));
          break;
        default:
          break;
      }
    }
  });

  std::vector<RegionPoint> flat;
  flat.reserve(cells * points_per_cell);
  for (auto& s : slots)
    for (auto& pt : s) flat.push_back(std::move(pt));

  result.points = pareto_filter(std::move(flat), spec.pareto_tol);
  std::sort(result.points.begin(), result.points.end(),
            [](const RegionPoint& a, const RegionPoint& b) {
              for (std::size_t i = 0; i < std::min(a.parameters.size(), b.parameters.size());
                   ++i) {
                if (a.parameters[i].second != b.parameters[i].second)
                  return a.parameters[i].second < b.parameters[i].second;
              }
              double ra = a.r1.value_or(-1.0), rb = b.r1.value_or(-1.0);
              return ra < rb;
            });
  // Degenerate cells (e.g. r1_max = 0 collapsing every R1 sample) produce
  // byte-identical points; the sort above makes them adjacent.
  result.points.erase(
      std::unique(result.points.begin(), result.points.end(),
                  [](const RegionPoint& a, const RegionPoint& b) {
                    return a.r1 == b.r1 && a.r2_or_r == b.r2_or_r && a.d1 == b.d1 &&
                           a.d2 == b.d2 && a.parameters == b.parameters;
                  }),
      result.points.end());
  return result;
}

SweepResult sweep_region(const IsacChannel& ch, const SweepSpec& spec) {
  return sweep_region(ch, spec, hamming_distortions(ch));
}

namespace {

// Strict domination in every present objective, beyond tol.
bool strictly_dominates(const RegionPoint& a, const RegionPoint& b, double tol) {
  if (a.r1.has_value() != b.r1.has_value()) return false;
  if (a.r1 && !(*a.r1 > *b.r1 + tol)) return false;
  return a.r2_or_r > b.r2_or_r + tol && a.d1 < b.d1 - tol && a.d2 < b.d2 - tol;
}

double sort_key(const RegionPoint& p) {
  return p.r1.value_or(0.0) + p.r2_or_r - p.d1 - p.d2;
}

}  // namespace

std::vector<RegionPoint> pareto_filter(std::vector<RegionPoint> points, double tol) {
  // A strict dominator always has a strictly larger key, so after sorting by
  // key each point only needs to be checked against already-kept points.
  std::stable_sort(points.begin(), points.end(),
                   [](const RegionPoint& a, const RegionPoint& b) {
                     return sort_key(a) > sort_key(b);
                   });
  std::vector<RegionPoint> kept;
  kept.reserve(points.size());
  for (auto& cand : points) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (strictly_dominates(k, cand, tol)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(cand));
  }
  return kept;
}

std::vector<RegionPoint> separation_baseline(const RegionPoint& max_rate,
                                             const RegionPoint& min_distortion,
                                             std::size_t num_lambda) {
  if (num_lambda < 2) throw std::invalid_argument("separation_baseline: need >= 2 samples");
  if (max_rate.r1.has_value() != min_distortion.r1.has_value())
    throw std::invalid_argument("separation_baseline: mixed point shapes");
  std::vector<RegionPoint> out;
  out.reserve(num_lambda);
  for (std::size_t i = 0; i < num_lambda; ++i) {
    double lam = static_cast<double>(i) / static_cast<double>(num_lambda - 1);
    RegionPoint pt;
    if (max_rate.r1)
      pt.r1 = lam * *max_rate.r1 + (1.0 - lam) * *min_distortion.r1;
    pt.r2_or_r = lam * max_rate.r2_or_r + (1.0 - lam) * min_distortion.r2_or_r;
    pt.d1 = lam * max_rate.d1 + (1.0 - lam) * min_distortion.d1;
    pt.d2 = lam * max_rate.d2 + (1.0 - lam) * min_distortion.d2;
    pt.provenance = Provenance::separation;
    pt.parameters = {{"lambda", lam}};
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace isac
