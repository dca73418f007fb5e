#include "isac/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/parallel.hpp"

namespace isac {

namespace {

void require_name(const Alphabet& a, const char* expected) {
  if (a.name() != expected)
    throw std::invalid_argument("channel role '" + std::string(expected) +
                                "' carries alphabet named '" + a.name() + "'");
}

void validate_pmf(const std::vector<double>& pmf, std::size_t size, const char* what) {
  if (pmf.size() != size)
    throw std::invalid_argument(std::string(what) + ": pmf length mismatch");
  double sum = 0.0;
  for (double v : pmf) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument(std::string(what) + ": invalid pmf entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > LabeledJoint::kNormalizationTol)
    throw std::invalid_argument(std::string(what) + ": pmf does not sum to 1");
}

// Largest conditional-probability gap |P(b|g,a) - P(b|g)| witnessing a
// dependence of the b-axes on the a-axis given the g-axes.
double conditional_independence_violation(const LabeledJoint& joint,
                                          const std::vector<std::string>& b_vars,
                                          const std::string& a_var,
                                          const std::vector<std::string>& g_vars) {
  std::vector<std::size_t> b_axes, g_axes;
  for (const auto& v : b_vars) b_axes.push_back(joint.axis_index(v));
  for (const auto& v : g_vars) g_axes.push_back(joint.axis_index(v));
  std::size_t a_axis = joint.axis_index(a_var);

  auto cells = [&](const std::vector<std::size_t>& axes) {
    std::size_t n = 1;
    for (std::size_t a : axes) n *= joint.axes()[a].size();
    return n;
  };

  std::vector<std::size_t> gab = g_axes;
  gab.push_back(a_axis);
  gab.insert(gab.end(), b_axes.begin(), b_axes.end());
  std::vector<std::size_t> gb = g_axes;
  gb.insert(gb.end(), b_axes.begin(), b_axes.end());
  std::vector<std::size_t> ga = g_axes;
  ga.push_back(a_axis);

  auto m_gab = joint.marginal_mass(gab);  // [g][a][b]
  auto m_gb = joint.marginal_mass(gb);    // [g][b]
  auto m_ga = joint.marginal_mass(ga);    // [g][a]
  auto m_g = joint.marginal_mass(g_axes); // [g]

  std::size_t nb = cells(b_axes);
  std::size_t na = joint.axes()[a_axis].size();
  std::size_t ng = cells(g_axes);

  double worst = 0.0;
  for (std::size_t g = 0; g < ng; ++g) {
    if (m_g[g] < LabeledJoint::kZeroMass) continue;
    for (std::size_t a = 0; a < na; ++a) {
      double pga = m_ga[g * na + a];
      if (pga < LabeledJoint::kZeroMass) continue;
      for (std::size_t b = 0; b < nb; ++b) {
        double cond_a = m_gab[(g * na + a) * nb + b] / pga;
        double cond = m_gb[g * nb + b] / m_g[g];
        worst = std::max(worst, std::abs(cond_a - cond));
      }
    }
  }
  return worst;
}

}  // namespace

IsacChannel::IsacChannel(Alphabet x_, Alphabet y1_, Alphabet y2_, Alphabet s1_, Alphabet s2_,
                         LabeledJoint state_prior_, Kernel kernel_)
    : x(std::move(x_)), y1(std::move(y1_)), y2(std::move(y2_)), s1(std::move(s1_)),
      s2(std::move(s2_)), state_prior(std::move(state_prior_)), kernel(std::move(kernel_)) {
  require_name(x, "X");
  require_name(y1, "Y1");
  require_name(y2, "Y2");
  require_name(s1, "S1");
  require_name(s2, "S2");
  const auto& pa = state_prior.axes();
  if (pa.size() != 2 || pa[0] != s1 || pa[1] != s2)
    throw std::invalid_argument("state prior must have axes (S1, S2) matching the channel");
  const auto& from = kernel.from_axes();
  const auto& to = kernel.to_axes();
  if (from.size() != 3 || from[0] != s1 || from[1] != s2 || from[2] != x)
    throw std::invalid_argument("kernel conditioning axes must be (S1, S2, X)");
  if (to.size() != 2 || to[0] != y1 || to[1] != y2)
    throw std::invalid_argument("kernel output axes must be (Y1, Y2)");
}

IsacChannel swap_roles(const IsacChannel& ch) {
  Alphabet ny1("Y1", ch.y2.symbols());
  Alphabet ny2("Y2", ch.y1.symbols());
  Alphabet ns1("S1", ch.s2.symbols());
  Alphabet ns2("S2", ch.s1.symbols());

  std::size_t n1 = ch.s1.size(), n2 = ch.s2.size();
  std::vector<double> prior(n2 * n1, 0.0);
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      prior[b * n1 + a] = ch.state_prior.mass()[a * n2 + b];

  std::size_t m1 = ch.y1.size(), m2 = ch.y2.size(), nx = ch.x.size();
  std::vector<double> rows(n2 * n1 * nx * m2 * m1, 0.0);
  for (std::size_t s1i = 0; s1i < n1; ++s1i)
    for (std::size_t s2i = 0; s2i < n2; ++s2i)
      for (std::size_t xi = 0; xi < nx; ++xi) {
        std::size_t old_from = (s1i * n2 + s2i) * nx + xi;
        std::size_t new_from = (s2i * n1 + s1i) * nx + xi;
        for (std::size_t y1i = 0; y1i < m1; ++y1i)
          for (std::size_t y2i = 0; y2i < m2; ++y2i)
            rows[new_from * (m2 * m1) + y2i * m1 + y1i] =
                ch.kernel.prob(old_from, y1i * m2 + y2i);
      }

  return IsacChannel(ch.x, ny1, ny2, ns1, ns2,
                     LabeledJoint({ns1, ns2}, std::move(prior)),
                     Kernel({ns1, ns2, ch.x}, {ny1, ny2}, std::move(rows)));
}

AuxChain identity_chain(const IsacChannel& ch, std::vector<double> px) {
  validate_pmf(px, ch.x.size(), "identity_chain");
  Alphabet v("V", ch.x.symbols());
  Alphabet u("U", {"*"});
  return AuxChain{std::move(px), Kernel::identity(ch.x, v), Kernel::constant(v, u)};
}

AuxChain v_chain(const IsacChannel& ch, std::vector<double> px, Kernel pv_given_x) {
  validate_pmf(px, ch.x.size(), "v_chain");
  if (pv_given_x.from_axes().size() != 1 || pv_given_x.from_axes()[0] != ch.x)
    throw std::invalid_argument("v_chain: kernel must condition on the channel input");
  if (pv_given_x.to_axes().size() != 1)
    throw std::invalid_argument("v_chain: kernel must map to a single axis");
  Alphabet v = pv_given_x.to_axes()[0];
  Alphabet u("U", {"*"});
  Kernel pu = Kernel::constant(v, u);
  return AuxChain{std::move(px), std::move(pv_given_x), std::move(pu)};
}

static std::size_t min_cardinality(const IsacChannel& ch) {
  return std::min({ch.x.size(), ch.y1.size() * ch.s1.size(), ch.y2.size() * ch.s2.size()});
}

std::size_t u_cardinality_cap(const IsacChannel& ch) { return min_cardinality(ch) + 2; }

std::size_t v_cardinality_cap(const IsacChannel& ch, VCap cap) {
  std::size_t m = min_cardinality(ch);
  switch (cap) {
    case VCap::partial_inner: return (m + 2) * (m + 1);
    case VCap::outer: return m + 1;
    case VCap::reverse_degraded: return m;
  }
  throw std::logic_error("unreachable");
}

void validate_aux(const IsacChannel& ch, const AuxChain& aux, VCap cap) {
  validate_pmf(aux.px, ch.x.size(), "aux chain");
  if (aux.pv_given_x.from_axes().size() != 1 || aux.pv_given_x.from_axes()[0] != ch.x)
    throw std::invalid_argument("aux chain: V kernel must condition on the channel input");
  if (aux.pu_given_v.from_axes().size() != 1 ||
      aux.pu_given_v.from_axes()[0] != aux.v_alphabet())
    throw std::invalid_argument("aux chain: U kernel must condition on V");
  if (aux.v_alphabet().size() > v_cardinality_cap(ch, cap))
    throw std::invalid_argument("aux chain: |V| exceeds the cardinality cap for this bound");
  if (aux.u_alphabet().size() > u_cardinality_cap(ch))
    throw std::invalid_argument("aux chain: |U| exceeds the cardinality cap");
}

LabeledJoint assemble_joint(const IsacChannel& ch, const AuxChain& aux) {
  validate_pmf(aux.px, ch.x.size(), "assemble_joint");
  const Alphabet& v = aux.v_alphabet();
  const Alphabet& u = aux.u_alphabet();
  std::size_t nu = u.size(), nv = v.size(), nx = ch.x.size();
  std::size_t n1 = ch.s1.size(), n2 = ch.s2.size(), m1 = ch.y1.size(), m2 = ch.y2.size();

  std::vector<double> mass(nu * nv * nx * n1 * n2 * m1 * m2);
  std::size_t f = 0;
  for (std::size_t ui = 0; ui < nu; ++ui)
    for (std::size_t vi = 0; vi < nv; ++vi)
      for (std::size_t xi = 0; xi < nx; ++xi) {
        double head = aux.pu_given_v.prob(vi, ui) * aux.pv_given_x.prob(xi, vi) * aux.px[xi];
        for (std::size_t s1i = 0; s1i < n1; ++s1i)
          for (std::size_t s2i = 0; s2i < n2; ++s2i) {
            double prior = ch.state_prior.mass()[s1i * n2 + s2i];
            std::size_t from = (s1i * n2 + s2i) * nx + xi;
            for (std::size_t y1i = 0; y1i < m1; ++y1i)
              for (std::size_t y2i = 0; y2i < m2; ++y2i)
                mass[f++] = head * prior * ch.kernel.prob(from, y1i * m2 + y2i);
          }
      }
  return LabeledJoint({u, v, ch.x, ch.s1, ch.s2, ch.y1, ch.y2}, std::move(mass));
}

LabeledJoint assemble_joint(const IsacChannel& ch, const std::vector<double>& px) {
  validate_pmf(px, ch.x.size(), "assemble_joint");
  std::size_t nx = ch.x.size(), n1 = ch.s1.size(), n2 = ch.s2.size();
  std::size_t m1 = ch.y1.size(), m2 = ch.y2.size();
  std::vector<double> mass(nx * n1 * n2 * m1 * m2);
  std::size_t f = 0;
  for (std::size_t xi = 0; xi < nx; ++xi)
    for (std::size_t s1i = 0; s1i < n1; ++s1i)
      for (std::size_t s2i = 0; s2i < n2; ++s2i) {
        double head = px[xi] * ch.state_prior.mass()[s1i * n2 + s2i];
        std::size_t from = (s1i * n2 + s2i) * nx + xi;
        for (std::size_t y1i = 0; y1i < m1; ++y1i)
          for (std::size_t y2i = 0; y2i < m2; ++y2i)
            mass[f++] = head * ch.kernel.prob(from, y1i * m2 + y2i);
      }
  return LabeledJoint({ch.x, ch.s1, ch.s2, ch.y1, ch.y2}, std::move(mass));
}

std::vector<std::vector<double>> degradedness_probe_inputs(std::size_t dim) {
  std::vector<std::vector<double>> probes;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> v(dim, 0.0);
    v[i] = 1.0;
    probes.push_back(std::move(v));
  }
  probes.emplace_back(dim, 1.0 / static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (int t = 1; t <= 9; ++t) {
      double w = t / 10.0;
      std::vector<double> v(dim, (1.0 - w) / static_cast<double>(dim));
      v[i] += w;
      probes.push_back(std::move(v));
    }
  return probes;
}

static OrderingVerdict check_ordering(const IsacChannel& ch, double tol,
                                      const std::vector<std::string>& b_vars,
                                      const std::vector<std::string>& g_vars) {
  double worst = 0.0;
  for (const auto& px : degradedness_probe_inputs(ch.x.size())) {
    LabeledJoint joint = assemble_joint(ch, px);
    worst = std::max(worst, conditional_independence_violation(joint, b_vars, "X", g_vars));
  }
  return {worst <= tol, worst};
}

OrderingVerdict check_physically_degraded(const IsacChannel& ch, double tol) {
  return check_ordering(ch, tol, {"Y2", "S2"}, {"S1", "Y1"});
}

OrderingVerdict check_reversely_degraded(const IsacChannel& ch, double tol) {
  return check_ordering(ch, tol, {"Y1", "S1"}, {"S2", "Y2"});
}

std::vector<std::vector<double>> simplex_grid(std::size_t dim, std::size_t resolution) {
  if (dim == 0) throw std::invalid_argument("simplex_grid: dimension 0");
  if (resolution < 2) throw std::invalid_argument("simplex_grid: resolution must be >= 2");
  std::size_t n = resolution - 1;
  std::vector<std::vector<double>> grid;
  // Compositions of n into dim parts, lexicographically from (n, 0, ..., 0):
  // shrink the rightmost nonzero among the first dim-1 counts and hand the
  // freed mass (plus everything to its right) to its neighbour.
  std::vector<std::size_t> counts(dim, 0);
  counts[0] = n;
  while (true) {
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = static_cast<double>(counts[i]) / n;
    grid.push_back(std::move(p));
    std::size_t j = dim - 1;
    while (j-- > 0)
      if (counts[j] > 0) break;
    if (j == SIZE_MAX) break;  // counts = (0, ..., 0, n): done
    --counts[j];
    std::size_t moved = 1;
    for (std::size_t i = j + 1; i < dim; ++i) {
      moved += counts[i];
      counts[i] = 0;
    }
    counts[j + 1] = moved;
  }
  return grid;
}

MoreCapableVerdict check_more_capable(const IsacChannel& ch, std::size_t grid_resolution,
                                      double tol, LogBase base, std::size_t threads) {
  auto grid = simplex_grid(ch.x.size(), grid_resolution);
  std::vector<double> margin(grid.size());
  parallel_for_ranges(grid.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      LabeledJoint joint = assemble_joint(ch, grid[i]);
      margin[i] = mutual_information(joint, {"X"}, {"Y1"}, {"S1"}, base) -
                  mutual_information(joint, {"X"}, {"Y2"}, {"S2"}, base);
    }
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < margin.size(); ++i)
    if (margin[i] < margin[best]) best = i;
  return {margin[best] >= -tol, margin[best], grid[best], best};
}

}  // namespace isac
