#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isac/labeled_joint.hpp"

namespace isac {

/// Unit of all information quantities. Internals accumulate in nats and
/// convert on the way out.
enum class LogBase { bits, nats };

/// max{a, 0}
inline double pos_part(double a) { return a > 0.0 ? a : 0.0; }

/// Binary entropy of x in [0, 1]; 0 log 0 = 0 at the endpoints.
double binary_entropy(double x, LogBase base = LogBase::bits);

/// Binary convolution p(1-b) + (1-p)b for p, b in [0, 1].
double star(double p, double b);

/// H(vars). `vars` must be a nonempty, duplicate-free subset of the axes.
double entropy(const LabeledJoint& joint, const std::vector<std::string>& vars,
               LogBase base = LogBase::bits);

/// H(target | given) = H(target, given) - H(given); `given` may be empty.
double conditional_entropy(const LabeledJoint& joint,
                           const std::vector<std::string>& target_vars,
                           const std::vector<std::string>& given_vars,
                           LogBase base = LogBase::bits);

/// I(a; b | given) = H(a | given) - H(a | b, given), clamped so harmless
/// cancellation noise cannot leak a negative value downstream.
double mutual_information(const LabeledJoint& joint,
                          const std::vector<std::string>& a_vars,
                          const std::vector<std::string>& b_vars,
                          const std::vector<std::string>& given_vars = {},
                          LogBase base = LogBase::bits);

/// Marginal over `keep_vars`; output axes stay in the joint's own order.
LabeledJoint marginalize(const LabeledJoint& joint, const std::vector<std::string>& keep_vars);

/// P(rest | given_vars = given_symbols): the conditioned axes are removed.
/// A conditioning event of (numerically) zero mass yields nullopt — callers
/// must decide what that means for them; nothing here guesses a default.
std::optional<LabeledJoint> condition(const LabeledJoint& joint,
                                      const std::vector<std::string>& given_vars,
                                      const std::vector<std::string>& given_symbols);

}  // namespace isac
