#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "isac/channel.hpp"
#include "isac/regions.hpp"

namespace isac {

/// Parse/validation failure for a channel description document; the message
/// carries the location (line/column or JSON path) of the offending part.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

struct ChannelSpec {
  IsacChannel channel;
  /// Absent means 0/1 loss on each state alphabet.
  std::optional<DistortionPair> distortions;

  DistortionPair metrics() const {
    return distortions ? *distortions : hamming_distortions(channel);
  }
};

/// Reads a channel description document (JSON). Unknown keys anywhere are
/// rejected; every pmf row must sum to 1 within 1e-9 and is renormalized.
ChannelSpec parse_channel_spec(const std::string& text);
ChannelSpec load_channel_spec(const std::string& path);

/// Inverse of parse_channel_spec: emits a document that parses back to a
/// table-identical channel (doubles are serialized round-trip exact).
std::string serialize_channel_spec(const IsacChannel& ch,
                                   const DistortionPair* metrics = nullptr);

}  // namespace isac
