#pragma once

// Reference implementations used only by the tests. They recompute the
// quantities under test by direct summation with hand-rolled index
// arithmetic, deliberately avoiding the library's marginalization and
// chain-rule machinery so that a shared bug cannot cancel out.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "isac/channel.hpp"
#include "isac/estimation.hpp"
#include "isac/labeled_joint.hpp"

namespace oracle {

inline constexpr double kEps = 1e-15;

inline double log2_(double x) { return std::log(x) / std::log(2.0); }

inline std::vector<std::size_t> axis_positions(const isac::LabeledJoint& j,
                                               const std::vector<std::string>& vars) {
  std::vector<std::size_t> pos;
  for (const auto& v : vars) {
    bool found = false;
    for (std::size_t i = 0; i < j.axes().size(); ++i)
      if (j.axes()[i].name() == v) {
        pos.push_back(i);
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("oracle: no axis named " + v);
  }
  return pos;
}

/// Mass of every cell of the marginal over `vars`, indexed row-major in the
/// order the names are given (not the joint's own order).
inline std::vector<double> direct_marginal(const isac::LabeledJoint& j,
                                           const std::vector<std::string>& vars) {
  auto pos = axis_positions(j, vars);
  std::size_t cells = 1;
  for (auto p : pos) cells *= j.axes()[p].size();
  std::vector<double> out(cells, 0.0);
  std::vector<std::size_t> digits(j.axes().size());
  for (std::size_t f = 0; f < j.mass().size(); ++f) {
    std::size_t rem = f;
    for (std::size_t a = j.axes().size(); a-- > 0;) {
      digits[a] = rem % j.axes()[a].size();
      rem /= j.axes()[a].size();
    }
    std::size_t key = 0;
    for (auto p : pos) key = key * j.axes()[p].size() + digits[p];
    out[key] += j.mass()[f];
  }
  return out;
}

inline double entropy_bits(const isac::LabeledJoint& j, const std::vector<std::string>& vars) {
  double h = 0.0;
  for (double p : direct_marginal(j, vars))
    if (p > kEps) h -= p * log2_(p);
  return h;
}

/// H(T | G) summed directly as -sum p(t,g) log2 p(t,g)/p(g).
inline double conditional_entropy_bits(const isac::LabeledJoint& j,
                                       const std::vector<std::string>& targets,
                                       const std::vector<std::string>& given) {
  std::vector<std::string> tg = targets;
  tg.insert(tg.end(), given.begin(), given.end());
  auto ptg = direct_marginal(j, tg);
  std::size_t gc = 1;
  for (auto p : axis_positions(j, given)) gc *= j.axes()[p].size();
  std::vector<double> pg(gc, 0.0);
  for (std::size_t i = 0; i < ptg.size(); ++i) pg[i % gc] += ptg[i];
  double h = 0.0;
  for (std::size_t i = 0; i < ptg.size(); ++i)
    if (ptg[i] > kEps) h -= ptg[i] * log2_(ptg[i] / pg[i % gc]);
  return h;
}

/// I(A; B | G) summed directly as sum p log2 [p(a,b,g) p(g) / (p(a,g) p(b,g))].
inline double mutual_information_bits(const isac::LabeledJoint& j,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& given = {}) {
  std::vector<std::string> abg = a;
  abg.insert(abg.end(), b.begin(), b.end());
  abg.insert(abg.end(), given.begin(), given.end());
  auto pabg = direct_marginal(j, abg);
  std::size_t ac = 1, bc = 1, gc = 1;
  for (auto p : axis_positions(j, a)) ac *= j.axes()[p].size();
  for (auto p : axis_positions(j, b)) bc *= j.axes()[p].size();
  for (auto p : axis_positions(j, given)) gc *= j.axes()[p].size();
  std::vector<double> pag(ac * gc, 0.0), pbg(bc * gc, 0.0), pg(gc, 0.0);
  for (std::size_t i = 0; i < pabg.size(); ++i) {
    std::size_t g = i % gc, bkey = (i / gc) % bc, akey = i / (gc * bc);
    pag[akey * gc + g] += pabg[i];
    pbg[bkey * gc + g] += pabg[i];
    pg[g] += pabg[i];
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < pabg.size(); ++i) {
    if (pabg[i] <= kEps) continue;
    std::size_t g = i % gc, bkey = (i / gc) % bc, akey = i / (gc * bc);
    mi += pabg[i] * log2_(pabg[i] * pg[g] / (pag[akey * gc + g] * pbg[bkey * gc + g]));
  }
  return mi;
}

/// E[d] of an explicit observation->reconstruction map, by one pass over the
/// full joint.
inline double direct_expected_distortion(const isac::LabeledJoint& j,
                                         const std::string& state_var,
                                         const isac::DistortionMetric& metric,
                                         const std::vector<std::string>& obs,
                                         const std::vector<std::size_t>& map) {
  auto state_pos = axis_positions(j, {state_var})[0];
  auto obs_pos = axis_positions(j, obs);
  std::vector<std::size_t> digits(j.axes().size());
  double total = 0.0;
  for (std::size_t f = 0; f < j.mass().size(); ++f) {
    std::size_t rem = f;
    for (std::size_t a = j.axes().size(); a-- > 0;) {
      digits[a] = rem % j.axes()[a].size();
      rem /= j.axes()[a].size();
    }
    std::size_t key = 0;
    for (auto p : obs_pos) key = key * j.axes()[p].size() + digits[p];
    total += j.mass()[f] * metric.at(digits[state_pos], map[key]);
  }
  return total;
}

/// The exact optimum over every deterministic estimator, found by exhaustive
/// enumeration of all |reconstruction|^cells maps. Keep the domain tiny.
inline double exhaustive_best_distortion(const isac::LabeledJoint& j,
                                         const std::string& state_var,
                                         const isac::DistortionMetric& metric,
                                         const std::vector<std::string>& obs) {
  std::size_t cells = 1;
  for (auto p : axis_positions(j, obs)) cells *= j.axes()[p].size();
  std::size_t nr = metric.reconstruction_alphabet.size();
  double total_maps = std::pow(static_cast<double>(nr), static_cast<double>(cells));
  if (total_maps > 2e6) throw std::invalid_argument("oracle: estimator domain too large");
  std::vector<std::size_t> map(cells, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    best = std::min(best, direct_expected_distortion(j, state_var, metric, obs, map));
    std::size_t c = 0;
    while (c < cells && ++map[c] == nr) map[c++] = 0;
    if (c == cells) break;
  }
  return best;
}

// ---- random model generators (test-internal; fixed seeds at call sites) ----

inline std::vector<double> random_pmf(std::mt19937_64& rng, std::size_t n,
                                      double floor_mass = 0.0) {
  std::uniform_real_distribution<double> u(floor_mass, 1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& v : p) sum += (v = u(rng));
  for (auto& v : p) v /= sum;
  return p;
}

inline isac::Alphabet sized_alphabet(const std::string& name, std::size_t n) {
  std::vector<std::string> syms;
  for (std::size_t i = 0; i < n; ++i) syms.push_back(name + std::to_string(i));
  return isac::Alphabet(name, syms);
}

inline isac::LabeledJoint random_joint(std::mt19937_64& rng,
                                       const std::vector<isac::Alphabet>& axes) {
  std::size_t cells = 1;
  for (const auto& a : axes) cells *= a.size();
  return isac::LabeledJoint(axes, random_pmf(rng, cells));
}

inline isac::IsacChannel random_channel(std::mt19937_64& rng, std::size_t nx, std::size_t ny1,
                                        std::size_t ny2, std::size_t ns1, std::size_t ns2) {
  isac::Alphabet x = sized_alphabet("X", nx), y1 = sized_alphabet("Y1", ny1),
                 y2 = sized_alphabet("Y2", ny2), s1 = sized_alphabet("S1", ns1),
                 s2 = sized_alphabet("S2", ns2);
  isac::LabeledJoint prior({s1, s2}, random_pmf(rng, ns1 * ns2));
  std::vector<double> rows;
  for (std::size_t f = 0; f < ns1 * ns2 * nx; ++f) {
    auto row = random_pmf(rng, ny1 * ny2);
    rows.insert(rows.end(), row.begin(), row.end());
  }
  return isac::IsacChannel(x, y1, y2, s1, s2, std::move(prior),
                           isac::Kernel({s1, s2, x}, {y1, y2}, std::move(rows)));
}

/// Channel built from the factorization P(s1) P(s2|s1) P(y1|s1,x) P(y2|s1,y1,s2),
/// which makes (Y2, S2) conditionally independent of X given (S1, Y1) by
/// construction — a physically degraded instance whatever the draws.
inline isac::IsacChannel random_degraded_channel(std::mt19937_64& rng, std::size_t nx,
                                                 std::size_t ny1, std::size_t ny2,
                                                 std::size_t ns1, std::size_t ns2) {
  isac::Alphabet x = sized_alphabet("X", nx), y1 = sized_alphabet("Y1", ny1),
                 y2 = sized_alphabet("Y2", ny2), s1 = sized_alphabet("S1", ns1),
                 s2 = sized_alphabet("S2", ns2);
  auto ps1 = random_pmf(rng, ns1, 0.05);
  std::vector<std::vector<double>> ps2_s1;
  for (std::size_t i = 0; i < ns1; ++i) ps2_s1.push_back(random_pmf(rng, ns2, 0.05));
  std::vector<std::vector<double>> py1(ns1 * nx);
  for (auto& row : py1) row = random_pmf(rng, ny1);
  std::vector<std::vector<double>> py2(ns1 * ny1 * ns2);
  for (auto& row : py2) row = random_pmf(rng, ny2);

  std::vector<double> prior;
  for (std::size_t i1 = 0; i1 < ns1; ++i1)
    for (std::size_t i2 = 0; i2 < ns2; ++i2) prior.push_back(ps1[i1] * ps2_s1[i1][i2]);

  std::vector<double> rows;
  for (std::size_t i1 = 0; i1 < ns1; ++i1)
    for (std::size_t i2 = 0; i2 < ns2; ++i2)
      for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t o1 = 0; o1 < ny1; ++o1)
          for (std::size_t o2 = 0; o2 < ny2; ++o2)
            rows.push_back(py1[i1 * nx + ix][o1] * py2[(i1 * ny1 + o1) * ns2 + i2][o2]);
  return isac::IsacChannel(x, y1, y2, s1, s2, isac::LabeledJoint({s1, s2}, std::move(prior)),
                           isac::Kernel({s1, s2, x}, {y1, y2}, std::move(rows)));
}

/// Random U-const chain with |V| = v_size over a strictly positive px.
inline isac::AuxChain random_v_chain(std::mt19937_64& rng, const isac::IsacChannel& ch,
                                     std::size_t v_size) {
  isac::Alphabet v = sized_alphabet("V", v_size);
  std::vector<double> rows;
  for (std::size_t ix = 0; ix < ch.x.size(); ++ix) {
    auto row = random_pmf(rng, v_size);
    rows.insert(rows.end(), row.begin(), row.end());
  }
  return isac::v_chain(ch, random_pmf(rng, ch.x.size(), 0.05),
                       isac::Kernel({ch.x}, {v}, std::move(rows)));
}

}  // namespace oracle
