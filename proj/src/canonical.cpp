#include "isac/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isac::canonical {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie strictly inside (0, 1)");
}

/// Prior over (S1, S2) shared by both families: never S2 without S1.
LabeledJoint coupled_state_prior(const Alphabet& s1, const Alphabet& s2, double q,
                                 double alpha) {
  return LabeledJoint({s1, s2}, {1.0 - q, 0.0, q * (1.0 - alpha), q * alpha});
}

double log_ratio(double z, LogBase base) {
  double l = std::log((1.0 - z) / z);
  return base == LogBase::nats ? l : l / std::numbers::ln2;
}

void sort_by_parameters(std::vector<RegionPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const RegionPoint& a, const RegionPoint& b) {
    for (std::size_t i = 0; i < std::min(a.parameters.size(), b.parameters.size()); ++i)
      if (a.parameters[i].second != b.parameters[i].second)
        return a.parameters[i].second < b.parameters[i].second;
    return a.r1.value_or(-1.0) < b.r1.value_or(-1.0);
  });
}

}  // namespace

IsacChannel bernoulli_noiseless_channel(NoiselessParams prm) {
  require_unit(prm.q, "q");
  require_unit(prm.alpha, "alpha");
  Alphabet x = binary_alphabet("X");
  Alphabet y1 = binary_alphabet("Y1");
  Alphabet y2 = binary_alphabet("Y2");
  Alphabet s1 = binary_alphabet("S1");
  Alphabet s2 = binary_alphabet("S2");

  std::vector<double> rows(8 * 4, 0.0);
  for (std::size_t s1i = 0; s1i < 2; ++s1i)
    for (std::size_t s2i = 0; s2i < 2; ++s2i)
      for (std::size_t xi = 0; xi < 2; ++xi) {
        std::size_t y1i = s1i & xi, y2i = s2i & xi;
        rows[((s1i * 2 + s2i) * 2 + xi) * 4 + y1i * 2 + y2i] = 1.0;
      }
  return IsacChannel(x, y1, y2, s1, s2, coupled_state_prior(s1, s2, prm.q, prm.alpha),
                     Kernel({s1, s2, x}, {y1, y2}, std::move(rows)));
}

IsacChannel bec_bsc_channel(BecBscParams prm) {
  require_unit(prm.q, "q");
  require_unit(prm.alpha, "alpha");
  require_unit(prm.gamma, "gamma");
  require_unit(prm.beta, "beta");
  Alphabet x = binary_alphabet("X");
  Alphabet y1("Y1", {"0", "1", "e"});
  Alphabet y2 = binary_alphabet("Y2");
  Alphabet s1 = binary_alphabet("S1");
  Alphabet s2 = binary_alphabet("S2");

  std::vector<double> rows(8 * 6, 0.0);
  for (std::size_t s1i = 0; s1i < 2; ++s1i)
    for (std::size_t s2i = 0; s2i < 2; ++s2i)
      for (std::size_t xi = 0; xi < 2; ++xi) {
        std::size_t x1 = s1i & xi, x2 = s2i & xi;
        double* row = rows.data() + ((s1i * 2 + s2i) * 2 + xi) * 6;
        // Y1: erase with probability gamma, else pass S1*X through.
        // Y2: flip S2*X with probability beta.
        for (std::size_t y1i = 0; y1i < 3; ++y1i) {
          double p1 = y1i == 2 ? prm.gamma : (y1i == x1 ? 1.0 - prm.gamma : 0.0);
          if (p1 == 0.0) continue;
          for (std::size_t y2i = 0; y2i < 2; ++y2i) {
            double p2 = y2i == x2 ? 1.0 - prm.beta : prm.beta;
            row[y1i * 2 + y2i] = p1 * p2;
          }
        }
      }
  return IsacChannel(x, y1, y2, s1, s2, coupled_state_prior(s1, s2, prm.q, prm.alpha),
                     Kernel({s1, s2, x}, {y1, y2}, std::move(rows)));
}

ClosedFormPoint lemma1_point(NoiselessParams prm, double p, LogBase base) {
  require_unit(prm.q, "q");
  require_unit(prm.alpha, "alpha");
  require_unit(p, "p");
  double q = prm.q, alpha = prm.alpha, qa = q * alpha;
  ClosedFormPoint pt;
  double hb_p = binary_entropy(p, base);
  double first = q * (1.0 - alpha) * hb_p;
  if (qa >= 1.0) {
    // q*alpha = 1 empties the second term's conditional alphabet; its limit
    // is 0, which the min below then selects.
    pt.degenerate = true;
  } else {
    first += p * (1.0 - qa) * binary_entropy(q * (1.0 - alpha) / (1.0 - qa), base);
  }
  pt.rate = std::min(first, q * hb_p);
  pt.d1 = (1.0 - p) * std::min(q, 1.0 - q);
  pt.d2 = (1.0 - p) * std::min(qa, 1.0 - qa);
  return pt;
}

double more_capable_gamma_max(double alpha, double beta) {
  require_unit(alpha, "alpha");
  require_open_unit(beta, "beta");
  return 1.0 - alpha * (1.0 - binary_entropy(beta, LogBase::bits));
}

bool is_more_capable_closed_form(double gamma, double alpha, double beta) {
  require_open_unit(gamma, "gamma");
  return gamma <= more_capable_gamma_max(alpha, beta);
}

double mi_advantage(BecBscParams prm, double p, LogBase base) {
  require_unit(prm.q, "q");
  require_unit(prm.alpha, "alpha");
  require_unit(prm.gamma, "gamma");
  require_unit(prm.beta, "beta");
  require_unit(p, "p");
  return prm.q * (binary_entropy(p, base) * (1.0 - prm.gamma) +
                  prm.alpha * (binary_entropy(prm.beta, base) -
                               binary_entropy(star(p, prm.beta), base)));
}

double mi_advantage_derivative(BecBscParams prm, double p, LogBase base) {
  require_unit(prm.q, "q");
  require_unit(prm.alpha, "alpha");
  require_unit(prm.gamma, "gamma");
  require_unit(prm.beta, "beta");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("mi_advantage_derivative: p must lie inside (0, 1)");
  return prm.q * ((1.0 - prm.gamma) * log_ratio(p, base) -
                  prm.alpha * (1.0 - 2.0 * prm.beta) * log_ratio(star(p, prm.beta), base));
}

ClosedFormPoint lemma3_point(BecBscParams prm, double p, LogBase base) {
  require_unit(p, "p");
  require_open_unit(prm.gamma, "gamma");
  require_open_unit(prm.beta, "beta");
  if (!is_more_capable_closed_form(prm.gamma, prm.alpha, prm.beta))
    throw std::invalid_argument(
        "lemma3_point: the closed form requires the more-capable ordering; "
        "gamma exceeds more_capable_gamma_max(alpha, beta)");
  double q = prm.q, qa = prm.q * prm.alpha;
  double b = std::min(prm.beta, 1.0 - prm.beta);  // flip symmetry of the BSC side
  ClosedFormPoint pt;
  pt.rate = mi_advantage(prm, p, base);
  pt.d1 = (1.0 - p * (1.0 - prm.gamma)) * std::min(q, 1.0 - q);
  double guess_cost;
  if (qa <= b) {
    guess_cost = qa;
  } else if (qa <= 1.0 - b) {
    guess_cost = star(star(qa, b), qa);
  } else {
    guess_cost = 1.0 - qa;
  }
  pt.d2 = (1.0 - p) * std::min(qa, 1.0 - qa) + p * guess_cost;
  return pt;
}

Estimator noiseless_proof_estimator(NoiselessParams prm, int which_state) {
  require_unit(prm.q, "q");
  require_unit(prm.alpha, "alpha");
  if (which_state != 1 && which_state != 2)
    throw std::invalid_argument("which_state must be 1 or 2");
  double marginal_one = which_state == 1 ? prm.q : prm.q * prm.alpha;
  Alphabet x = binary_alphabet("X");
  Alphabet y = binary_alphabet(which_state == 1 ? "Y1" : "Y2");
  Estimator est;
  est.domain = {x, y};
  std::size_t guess = marginal_one > 0.5 ? 1 : 0;
  // cells (x, y) row-major: x = 0 reveals nothing, x = 1 passes S through.
  est.map = {guess, 0, 0, 1};
  return est;
}

Estimator bec_bsc_proof_estimator(BecBscParams prm, int which_state) {
  require_unit(prm.q, "q");
  require_unit(prm.alpha, "alpha");
  require_unit(prm.gamma, "gamma");
  require_unit(prm.beta, "beta");
  if (which_state != 1 && which_state != 2)
    throw std::invalid_argument("which_state must be 1 or 2");
  Estimator est;
  Alphabet x = binary_alphabet("X");
  if (which_state == 1) {
    std::size_t guess = prm.q > 0.5 ? 1 : 0;
    est.domain = {x, Alphabet("Y1", {"0", "1", "e"})};
    // (0,0) and every erasure fall back on the prior; a clean (1, y1) is S1.
    est.map = {guess, 0, guess, 0, 1, guess};
  } else {
    double qa = prm.q * prm.alpha;
    std::size_t guess = qa > 0.5 ? 1 : 0;
    est.domain = {x, binary_alphabet("Y2")};
    // x = 0 reveals nothing; under x = 1 the posterior threshold works out
    // to comparing qa against beta (y2 = 1) or 1 - beta (y2 = 0).
    est.map = {guess, guess, qa > 1.0 - prm.beta ? 1u : 0u, qa > prm.beta ? 1u : 0u};
  }
  return est;
}

std::vector<RegionPoint> sweep_lemma1(NoiselessParams prm, std::size_t resolution,
                                      LogBase base) {
  if (resolution < 2) throw std::invalid_argument("sweep_lemma1: resolution must be >= 2");
  std::vector<RegionPoint> pts;
  pts.reserve(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    double p = static_cast<double>(i) / static_cast<double>(resolution - 1);
    ClosedFormPoint c = lemma1_point(prm, p, base);
    RegionPoint pt;
    pt.r2_or_r = c.rate;
    pt.d1 = c.d1;
    pt.d2 = c.d2;
    pt.provenance = Provenance::lemma1;
    pt.parameters = {{"p", p}};
    pts.push_back(std::move(pt));
  }
  pts = pareto_filter(std::move(pts));
  sort_by_parameters(pts);
  return pts;
}

std::vector<RegionPoint> sweep_lemma3(BecBscParams prm, std::size_t resolution, LogBase base) {
  if (resolution < 2) throw std::invalid_argument("sweep_lemma3: resolution must be >= 2");
  std::vector<RegionPoint> pts;
  pts.reserve(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    double p = static_cast<double>(i) / static_cast<double>(resolution - 1);
    ClosedFormPoint c = lemma3_point(prm, p, base);
    RegionPoint pt;
    pt.r2_or_r = c.rate;
    pt.d1 = c.d1;
    pt.d2 = c.d2;
    pt.provenance = Provenance::lemma3;
    pt.parameters = {{"p", p}};
    pts.push_back(std::move(pt));
  }
  pts = pareto_filter(std::move(pts));
  sort_by_parameters(pts);
  return pts;
}

}  // namespace isac::canonical
