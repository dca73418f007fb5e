#pragma once

#include "isac/channel.hpp"
#include "isac/estimation.hpp"
#include "isac/regions.hpp"

namespace isac::canonical {

/// Parameters of the noiseless multiplicative-state family ("lemma1"):
/// Y1 = S1*X, Y2 = S2*X, with states coupled so that Pr[S1=0, S2=1] = 0,
/// Pr[S1=1] = q and Pr[S2=1 | S1=1] = alpha.
struct NoiselessParams {
  double q;
  double alpha;
};

/// Parameters of the noisy family ("becbsc"): same state coupling, but the
/// legitimate receiver sees S1*X through an erasure channel with erasure
/// probability gamma and the eavesdropper sees S2*X through a symmetric
/// bit-flip channel with crossover beta.
struct BecBscParams {
  double q;
  double alpha;
  double gamma;
  double beta;
};

IsacChannel bernoulli_noiseless_channel(NoiselessParams prm);
IsacChannel bec_bsc_channel(BecBscParams prm);

struct ClosedFormPoint {
  double rate = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  /// Set when q*alpha = 1 collapses the rate expression to its limit form.
  bool degenerate = false;
};

/// Closed-form full-secrecy boundary point of the noiseless family at
/// input bias p = Pr[X=1].
ClosedFormPoint lemma1_point(NoiselessParams prm, double p, LogBase base = LogBase::bits);

/// Largest erasure probability for which the BEC side stays the more capable
/// receiver of the noisy family, 1 - alpha*(1 - h(beta)) with h in bits.
double more_capable_gamma_max(double alpha, double beta);
bool is_more_capable_closed_form(double gamma, double alpha, double beta);

/// I(X;Y1|S1) - I(X;Y2|S2) of the noisy family at input bias p, in closed
/// form: q*(h(p)(1-gamma) + alpha*(h(beta) - h(p*beta))).
double mi_advantage(BecBscParams prm, double p, LogBase base = LogBase::bits);
/// d/dp of mi_advantage; p must lie strictly inside (0, 1).
double mi_advantage_derivative(BecBscParams prm, double p, LogBase base = LogBase::bits);

/// Closed-form full-secrecy boundary point of the noisy family. Requires the
/// more-capable condition to hold for (gamma, alpha, beta).
ClosedFormPoint lemma3_point(BecBscParams prm, double p, LogBase base = LogBase::bits);

/// The per-receiver estimators the closed forms are stated for: each state
/// is reconstructed from (X, Yj) only.
Estimator noiseless_proof_estimator(NoiselessParams prm, int which_state);
Estimator bec_bsc_proof_estimator(BecBscParams prm, int which_state);

/// Closed-form boundary sweeps over a p-grid, Pareto-filtered.
std::vector<RegionPoint> sweep_lemma1(NoiselessParams prm, std::size_t resolution,
                                      LogBase base = LogBase::bits);
std::vector<RegionPoint> sweep_lemma3(BecBscParams prm, std::size_t resolution,
                                      LogBase base = LogBase::bits);

}  // namespace isac::canonical
