#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isac/labeled_joint.hpp"
#include "isac/prob.hpp"

namespace isac {

/// State-dependent memoryless broadcast channel with i.i.d. state pairs:
/// a prior over (S1, S2) and a transition kernel (S1, S2, X) -> (Y1, Y2).
/// The five roles carry the fixed axis names "X", "Y1", "Y2", "S1", "S2".
struct IsacChannel {
  Alphabet x, y1, y2, s1, s2;
  LabeledJoint state_prior;  // axes (S1, S2)
  Kernel kernel;             // (S1, S2, X) -> (Y1, Y2)

  IsacChannel(Alphabet x_, Alphabet y1_, Alphabet y2_, Alphabet s1_, Alphabet s2_,
              LabeledJoint state_prior_, Kernel kernel_);
};

/// The same channel with the two receiver/state roles exchanged:
/// Y1 <-> Y2 and S1 <-> S2 (axis names stay canonical).
IsacChannel swap_roles(const IsacChannel& ch);

/// Auxiliary chain U - V - X: an input pmf plus the two conditional kernels.
/// The Markov structure is enforced by construction — there is no way to
/// express a direct U/X dependence.
struct AuxChain {
  std::vector<double> px;  // pmf over the channel input alphabet
  Kernel pv_given_x;       // X -> V
  Kernel pu_given_v;       // V -> U

  const Alphabet& v_alphabet() const { return pv_given_x.to_axes()[0]; }
  const Alphabet& u_alphabet() const { return pu_given_v.to_axes()[0]; }
};

/// V = X (copy kernel) with a one-symbol constant U.
AuxChain identity_chain(const IsacChannel& ch, std::vector<double> px);
/// Caller-supplied V kernel with a one-symbol constant U.
AuxChain v_chain(const IsacChannel& ch, std::vector<double> px, Kernel pv_given_x);

/// Which auxiliary-cardinality cap applies, in terms of
/// m = min{|X|, |Y1||S1|, |Y2||S2|}.
enum class VCap {
  partial_inner,     // (m + 2)(m + 1)
  outer,             // m + 1
  reverse_degraded,  // m
};
std::size_t u_cardinality_cap(const IsacChannel& ch);  // m + 2
std::size_t v_cardinality_cap(const IsacChannel& ch, VCap cap);
/// Rejects an AuxChain whose alphabets or cardinalities do not fit `ch`.
void validate_aux(const IsacChannel& ch, const AuxChain& aux, VCap cap);

/// Joint over (U, V, X, S1, S2, Y1, Y2) under the chain's factorization.
LabeledJoint assemble_joint(const IsacChannel& ch, const AuxChain& aux);
/// Joint over (X, S1, S2, Y1, Y2) for a bare input pmf.
LabeledJoint assemble_joint(const IsacChannel& ch, const std::vector<double>& px);

struct OrderingVerdict {
  bool holds = false;
  double max_violation = 0.0;  // worst conditional-probability gap over all probes
};

/// Structural test of the degraded factorization: (Y2, S2) independent of X
/// given (S1, Y1), probed over a fixed family of input pmfs (all vertices,
/// the uniform pmf, and nine interior blends per input symbol).
OrderingVerdict check_physically_degraded(const IsacChannel& ch, double tol = 1e-9);
/// Mirror image: (Y1, S1) independent of X given (S2, Y2).
OrderingVerdict check_reversely_degraded(const IsacChannel& ch, double tol = 1e-9);

struct MoreCapableVerdict {
  bool holds = false;
  double min_margin = 0.0;  // min over the grid of I(X;Y1|S1) - I(X;Y2|S2)
  std::vector<double> argmin_px;
  std::size_t argmin_index = 0;
};

/// Grid-certified check that I(X;Y1|S1) >= I(X;Y2|S2) for every input pmf:
/// the margin is minimized over a simplex lattice of the given resolution
/// (which contains all vertices). Ties take the lowest grid index.
MoreCapableVerdict check_more_capable(const IsacChannel& ch, std::size_t grid_resolution,
                                      double tol = 1e-9, LogBase base = LogBase::bits,
                                      std::size_t threads = 1);

/// Lattice {k/(resolution-1)} over the (dim-1)-simplex, lexicographic by
/// composition; resolution >= 2 so the vertices are always present.
std::vector<std::vector<double>> simplex_grid(std::size_t dim, std::size_t resolution);

/// The probe family used by the degradedness checks.
std::vector<std::vector<double>> degradedness_probe_inputs(std::size_t dim);

}  // namespace isac
