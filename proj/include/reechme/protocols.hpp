#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reechme/energy_model.hpp"
#include "reechme/errors.hpp"
#include "reechme/numeric.hpp"
#include "reechme/rng.hpp"
#include "reechme/topology.hpp"

namespace reechme {

/// Destination value meaning "the base station".
inline constexpr NodeId kSink = std::numeric_limits<NodeId>::max();

struct Membership {
  NodeId node = 0;
  NodeId destination = kSink;
};

/// Who is cluster head this round and where every alive node sends its packet.
struct RoundPlan {
  std::uint64_t round = 0;
  /// Per-region heads; populated by the regional election only.
  std::array<std::optional<NodeId>, kRegionCount> region_heads{};
  /// All heads in ascending id order.
  std::vector<NodeId> heads;
  /// One entry per alive node, ascending by node id.
  std::vector<Membership> memberships;

  std::size_t ch_count() const noexcept { return heads.size(); }
};

namespace detail {

inline std::vector<Membership> compact_memberships(const std::vector<std::optional<NodeId>>& dest) {
  std::vector<Membership> out;
  for (std::size_t i = 0; i < dest.size(); ++i) {
    if (dest[i]) out.push_back({static_cast<NodeId>(i), *dest[i]});
  }
  return out;
}

}  // namespace detail

/// Regional max-energy election.
///
/// R1 nodes send straight to the sink. In every clustered region the alive
/// node with the largest residual energy becomes head, lowest id on ties. When
/// all alive nodes of a region hold exactly the same energy (the first round)
/// the head is drawn uniformly, one draw per such region in R2..R9 order. A
/// region with a single survivor makes it head without a draw.
template <UniformSource G>
RoundPlan reech_elect_chs(std::span<const NodeState> nodes, const RegionMap& map, std::uint64_t round, G& rng) {
  RoundPlan plan;
  plan.round = round;
  std::vector<std::optional<NodeId>> dest(nodes.size());

  std::array<std::vector<NodeId>, kRegionCount> alive_by_region;
  for (const NodeState& n : nodes) {
    if (n.alive()) alive_by_region[region_index(n.region)].push_back(n.id);
  }

  for (const Region& region : map) {
    const auto& members = alive_by_region[region_index(region.id)];
    if (members.empty()) continue;
    if (region.routing == RoutingMode::direct) {
      for (NodeId id : members) dest[id] = kSink;
      continue;
    }

    const Joules first = nodes[members.front()].residual_energy;
    const bool all_equal = std::all_of(members.begin(), members.end(),
                                       [&](NodeId id) { return nodes[id].residual_energy == first; });
    NodeId head = members.front();
    if (all_equal) {
      if (members.size() > 1) head = members[uniform_index(rng, members.size())];
    } else {
      for (NodeId id : members) {
        if (nodes[id].residual_energy > nodes[head].residual_energy) head = id;
      }
    }

    plan.region_heads[region_index(region.id)] = head;
    plan.heads.push_back(head);
    for (NodeId id : members) dest[id] = id == head ? kSink : head;
  }

  std::sort(plan.heads.begin(), plan.heads.end());
  plan.memberships = detail::compact_memberships(dest);
  return plan;
}

struct LeachParams {
  double ch_probability = 0.1;

  /// Rounds per election epoch; every node serves as head at most once per epoch.
  std::uint64_t epoch_length() const noexcept {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(1.0 / ch_probability)));
  }

  void validate() const {
    if (!(ch_probability > 0.0 && ch_probability < 1.0)) {
      throw ConfigError("leach_p", "must lie strictly between 0 and 1");
    }
  }
};

/// Per-node election memory for the probabilistic baseline.
class LeachState {
 public:
  explicit LeachState(std::size_t node_count) : last_epoch_served_(node_count, kNever) {}

  bool eligible(NodeId id, std::uint64_t epoch) const { return last_epoch_served_.at(id) != epoch; }
  void mark_served(NodeId id, std::uint64_t epoch) { last_epoch_served_.at(id) = epoch; }

 private:
  static constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> last_epoch_served_;
};

/// Election threshold T(n) = p / (1 - p * (r mod epoch)); zero when ineligible.
inline double leach_threshold(const LeachParams& params, std::uint64_t round, bool eligible) noexcept {
  if (!eligible) return 0.0;
  const double p = params.ch_probability;
  const auto phase = static_cast<double>(round % params.epoch_length());
  return p / (1.0 - p * phase);
}

/// Probabilistic election over the whole field. Each alive, eligible node
/// takes one draw in id order and becomes head when it falls below the
/// threshold. Others join the nearest head (lowest head id on distance
/// ties); with no head at all, every alive node goes direct.
template <UniformSource G>
RoundPlan leach_elect_chs(std::span<const NodeState> nodes, const LeachParams& params, LeachState& state,
                          std::uint64_t round, G& rng) {
  RoundPlan plan;
  plan.round = round;
  const std::uint64_t epoch = round / params.epoch_length();

  for (const NodeState& n : nodes) {
    if (!n.alive() || !state.eligible(n.id, epoch)) continue;
    const double t = leach_threshold(params, round, true);
    if (rng.uniform() < t) {
      plan.heads.push_back(n.id);
      state.mark_served(n.id, epoch);
    }
  }

  std::vector<std::optional<NodeId>> dest(nodes.size());
  for (NodeId h : plan.heads) dest[h] = kSink;
  for (const NodeState& n : nodes) {
    if (!n.alive() || dest[n.id]) continue;
    NodeId best = kSink;
    Meters best_d = std::numeric_limits<Meters>::infinity();
    for (NodeId h : plan.heads) {
      const Meters d = distance(n.position, nodes[h].position);
      if (d < best_d) {
        best_d = d;
        best = h;
      }
    }
    dest[n.id] = best;
  }
  plan.memberships = detail::compact_memberships(dest);
  return plan;
}

/// One packet offered to the sink.
struct SinkPacket {
  NodeId sender = 0;
  NodeRole kind = NodeRole::direct;
};

struct RoundOutcome {
  /// Energy actually removed from each node this round, indexed by node id.
  std::vector<Joules> debits;
  Joules consumed = 0.0;
  /// Packets offered to the sink, ascending by sender id.
  std::vector<SinkPacket> manifest;
  std::size_t ch_count = 0;
};

namespace detail {

inline void debit(NodeState& n, Joules amount) {
  const Joules left = n.residual_energy - amount;
  n.residual_energy = left > 0.0 ? left : 0.0;
}

}  // namespace detail

/// Apply one round of radio traffic to `nodes`.
///
/// Debits run in four passes: member transmissions to their head, head
/// receptions, head aggregation, then every transmission to the sink. A node
/// that cannot cover a debit still sends and is clamped to zero energy.
inline RoundOutcome execute_round(std::span<NodeState> nodes, const RoundPlan& plan, const RadioParams& radio,
                                  const FieldSpec& field) {
  const std::size_t count = nodes.size();
  std::vector<NodeId> dest(count, kSink);
  std::vector<bool> planned(count, false);
  std::vector<bool> is_head(count, false);

  for (NodeId h : plan.heads) {
    if (h >= count || !nodes[h].alive()) throw ProtocolError("cluster head " + std::to_string(h) + " is not alive");
    is_head[h] = true;
  }
  for (const Membership& m : plan.memberships) {
    if (m.node >= count) throw ProtocolError("membership for unknown node " + std::to_string(m.node));
    if (planned[m.node]) throw ProtocolError("node " + std::to_string(m.node) + " appears twice in the plan");
    if (!nodes[m.node].alive()) throw ProtocolError("dead node " + std::to_string(m.node) + " is in the plan");
    planned[m.node] = true;
    dest[m.node] = m.destination;
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (nodes[i].alive() && !planned[i]) {
      throw ProtocolError("alive node " + std::to_string(i) + " has no destination");
    }
    if (!planned[i]) continue;
    if (is_head[i] && dest[i] != kSink) throw ProtocolError("cluster head " + std::to_string(i) + " must send to sink");
    if (dest[i] != kSink && (dest[i] >= count || !is_head[dest[i]])) {
      throw ProtocolError("node " + std::to_string(i) + " points at non-head " + std::to_string(dest[i]));
    }
  }

  std::vector<Joules> before(count);
  std::vector<std::uint64_t> members(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    before[i] = nodes[i].residual_energy;
    if (planned[i] && dest[i] != kSink) ++members[dest[i]];
  }

  const BitCount k = radio.packet_bits;
  for (std::size_t i = 0; i < count; ++i) {
    if (planned[i] && dest[i] != kSink) {
      detail::debit(nodes[i], tx_energy(radio, k, distance(nodes[i].position, nodes[dest[i]].position)));
    }
  }
  for (NodeId h : plan.heads) detail::debit(nodes[h], static_cast<double>(members[h]) * rx_energy(radio, k));
  for (NodeId h : plan.heads) detail::debit(nodes[h], aggregation_energy(radio, k, members[h] + 1));

  RoundOutcome out;
  out.ch_count = plan.heads.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (planned[i] && dest[i] == kSink) {
      detail::debit(nodes[i], tx_energy(radio, k, distance(nodes[i].position, field.sink)));
      out.manifest.push_back({static_cast<NodeId>(i), is_head[i] ? NodeRole::cluster_head : NodeRole::direct});
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!planned[i]) continue;
    nodes[i].role = is_head[i] ? NodeRole::cluster_head : (dest[i] == kSink ? NodeRole::direct : NodeRole::normal);
  }

  out.debits.resize(count);
  CompensatedSum consumed;
  for (std::size_t i = 0; i < count; ++i) {
    out.debits[i] = before[i] - nodes[i].residual_energy;
    consumed.add(out.debits[i]);
  }
  out.consumed = consumed.value();
  return out;
}

}  // namespace reechme
