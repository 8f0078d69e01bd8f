#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reechme/channel.hpp"
#include "reechme/energy_model.hpp"
#include "reechme/errors.hpp"
#include "reechme/numeric.hpp"
#include "reechme/protocols.hpp"
#include "reechme/rng.hpp"
#include "reechme/topology.hpp"

namespace reechme {

enum class Protocol : std::uint8_t { reech_me, leach };

inline std::string_view to_string(Protocol p) noexcept { return p == Protocol::reech_me ? "reech" : "leach"; }

/// Everything a single run needs.
struct SimulationConfig {
  FieldSpec field;
  RegionQuotas quotas = kDefaultQuotas;
  RadioParams radio;
  DropModel drop;
  LeachParams leach;
  std::uint64_t max_rounds = 5000;

  std::uint32_t node_count() const {
    std::uint32_t n = 0;
    for (auto q : quotas) n += q;
    return n;
  }

  void validate() const {
    field.validate();
    radio.validate();
    drop.validate();
    leach.validate();
    if (node_count() == 0) throw ConfigError("region_quotas", "at least one node is required");
    if (max_rounds == 0) throw ConfigError("max_rounds", "must be > 0");
  }
};

struct RoundMetrics {
  std::uint64_t round = 0;
  std::uint32_t alive = 0;
  std::uint32_t dead = 0;
  std::uint32_t ch_count = 0;
  std::uint32_t packets_sent = 0;
  std::uint32_t packets_received = 0;
  std::uint32_t packets_dropped = 0;
  Joules total_residual_energy = 0.0;
  /// Energy drained during this round; not part of the CSV.
  Joules consumed = 0.0;
};

/// Round indices of the first and last death. A milestone that never
/// happened within the simulated horizon is censored at the series length.
struct Milestones {
  std::uint64_t stability = 0;
  std::uint64_t lifetime = 0;
  std::uint64_t instability = 0;
  bool stability_censored = false;
  bool lifetime_censored = false;
};

inline Milestones extract_milestones(std::span<const std::uint32_t> alive, std::uint32_t total) {
  for (std::size_t i = 1; i < alive.size(); ++i) {
    if (alive[i] > alive[i - 1]) {
      throw ProtocolError("alive series increases at round " + std::to_string(i));
    }
  }
  Milestones m;
  m.stability = m.lifetime = alive.size();
  m.stability_censored = m.lifetime_censored = true;
  for (std::size_t i = 0; i < alive.size(); ++i) {
    if (m.stability_censored && alive[i] < total) {
      m.stability = i;
      m.stability_censored = false;
    }
    if (alive[i] == 0) {
      m.lifetime = i;
      m.lifetime_censored = false;
      break;
    }
  }
  m.instability = m.lifetime - m.stability;
  return m;
}

struct RunSummary {
  Protocol protocol = Protocol::reech_me;
  std::uint64_t seed = 0;
  std::uint32_t node_count = 0;
  Joules initial_total_energy = 0.0;
  Joules total_consumed = 0.0;
  Milestones milestones;
  std::vector<RoundMetrics> rounds;
};

namespace detail {

struct NoObserver {
  void operator()(std::uint64_t, std::span<const NodeState>, const RoundOutcome&) const noexcept {}
};

inline Joules residual_total(std::span<const NodeState> nodes) {
  CompensatedSum s;
  for (const NodeState& n : nodes) s.add(n.residual_energy);
  return s.value();
}

}  // namespace detail

/// Deploy with the run's stream, then loop elect -> execute -> drop -> record
/// until every node is dead or max_rounds is reached. The observer sees the
/// node list after each round.
template <class Observer = detail::NoObserver>
RunSummary run_simulation(const SimulationConfig& cfg, Protocol protocol, std::uint64_t seed,
                          Observer&& observer = {}) {
  cfg.validate();
  RunRng rng(seed);
  const RegionMap map = build_regions(cfg.field, cfg.quotas);
  std::vector<NodeState> nodes = deploy_nodes(map, cfg.radio.initial_energy, rng);
  LeachState leach_state(nodes.size());

  RunSummary run;
  run.protocol = protocol;
  run.seed = seed;
  run.node_count = static_cast<std::uint32_t>(nodes.size());
  run.initial_total_energy = detail::residual_total(nodes);
  run.rounds.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(cfg.max_rounds, 1 << 16)));

  CompensatedSum consumed;
  for (std::uint64_t r = 0; r < cfg.max_rounds; ++r) {
    const RoundPlan plan = protocol == Protocol::reech_me
                               ? reech_elect_chs(nodes, map, r, rng)
                               : leach_elect_chs(nodes, cfg.leach, leach_state, r, rng);
    const RoundOutcome outcome = execute_round(nodes, plan, cfg.radio, cfg.field);
    const DropOutcome drops = filter_packets(cfg.drop, outcome.manifest, rng);

    RoundMetrics m;
    m.round = r;
    for (const NodeState& n : nodes) m.alive += n.alive() ? 1 : 0;
    m.dead = run.node_count - m.alive;
    m.ch_count = static_cast<std::uint32_t>(outcome.ch_count);
    m.packets_sent = static_cast<std::uint32_t>(outcome.manifest.size());
    m.packets_received = static_cast<std::uint32_t>(drops.received);
    m.packets_dropped = static_cast<std::uint32_t>(drops.dropped);
    m.total_residual_energy = detail::residual_total(nodes);
    m.consumed = outcome.consumed;
    consumed.add(outcome.consumed);
    run.rounds.push_back(m);

    observer(r, std::span<const NodeState>(nodes), outcome);
    if (m.alive == 0) break;
  }
  run.total_consumed = consumed.value();

  std::vector<std::uint32_t> alive;
  alive.reserve(run.rounds.size());
  for (const auto& m : run.rounds) alive.push_back(m.alive);
  run.milestones = extract_milestones(alive, run.node_count);
  return run;
}

/// Mean of per-round packet counters over the rounds before the first death.
struct StabilityThroughput {
  double sent = 0.0;
  double received = 0.0;
  double dropped = 0.0;
};

inline StabilityThroughput stability_throughput(const RunSummary& run) {
  StabilityThroughput t;
  const auto n = std::min<std::size_t>(run.milestones.stability, run.rounds.size());
  if (n == 0) return t;
  for (std::size_t i = 0; i < n; ++i) {
    t.sent += run.rounds[i].packets_sent;
    t.received += run.rounds[i].packets_received;
    t.dropped += run.rounds[i].packets_dropped;
  }
  t.sent /= static_cast<double>(n);
  t.received /= static_cast<double>(n);
  t.dropped /= static_cast<double>(n);
  return t;
}

}  // namespace reechme
