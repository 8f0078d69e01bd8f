#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "reechme/errors.hpp"
#include "reechme/protocols.hpp"
#include "reechme/rng.hpp"

namespace reechme {

/// i.i.d. Bernoulli loss on every link into the sink.
struct DropModel {
  double drop_probability = 0.3;

  void validate() const {
    if (!(drop_probability >= 0.0 && drop_probability <= 1.0)) {
      throw ConfigError("drop_probability", "must lie in [0, 1]");
    }
  }
};

struct DropOutcome {
  std::size_t received = 0;
  std::size_t dropped = 0;
  /// true where the packet at the same manifest position was lost.
  std::vector<bool> lost;
};

/// One draw per packet in manifest order; a packet is lost iff its draw is
/// below the drop probability. The manifest must be sorted by sender id.
template <UniformSource G>
DropOutcome filter_packets(const DropModel& model, std::span<const SinkPacket> manifest, G& rng) {
  DropOutcome out;
  out.lost.reserve(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    if (i > 0 && manifest[i].sender <= manifest[i - 1].sender) {
      throw ProtocolError("packet manifest is not in ascending sender order");
    }
    const bool lost = rng.uniform() < model.drop_probability;
    out.lost.push_back(lost);
    if (lost) {
      ++out.dropped;
    } else {
      ++out.received;
    }
  }
  return out;
}

}  // namespace reechme
