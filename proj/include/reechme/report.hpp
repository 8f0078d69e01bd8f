#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "reechme/engine.hpp"
#include "reechme/stats.hpp"
#include "reechme/topology.hpp"

namespace reechme {

namespace detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace detail

// round,alive,dead,ch_count,packets_sent,packets_received,packets_dropped,total_energy_j
inline void write_run_csv(std::ostream& out, const RunSummary& run) {
  out << "round,alive,dead,ch_count,packets_sent,packets_received,packets_dropped,total_energy_j\n";
  for (const auto& r : run.rounds) {
    out << r.round << ',' << r.alive << ',' << r.dead << ',' << r.ch_count << ',' << r.packets_sent << ','
        << r.packets_received << ',' << r.packets_dropped << ',' << detail::fixed(r.total_residual_energy, 9) << '\n';
  }
}

// round, then <metric>_mean,<metric>_ci for every metric.
inline void write_aggregate_csv(std::ostream& out, const AggregateStats& agg) {
  out << "round";
  for (Metric m : kAllMetrics) out << ',' << metric_name(m) << "_mean," << metric_name(m) << "_ci";
  out << '\n';
  for (const auto& row : agg.rows) {
    out << row.round;
    for (Metric m : kAllMetrics) {
      const int decimals = m == Metric::total_energy_j ? 9 : 6;
      out << ',' << detail::fixed(row[m].mean, decimals) << ',' << detail::fixed(row[m].half_width, decimals);
    }
    out << '\n';
  }
}

inline void write_summary_csv(std::ostream& out, const AggregateStats& agg) {
  out << "milestone,mean,ci\n";
  out << "stability," << detail::fixed(agg.stability.mean, 6) << ',' << detail::fixed(agg.stability.half_width, 6) << '\n';
  out << "lifetime," << detail::fixed(agg.lifetime.mean, 6) << ',' << detail::fixed(agg.lifetime.half_width, 6) << '\n';
  out << "instability," << detail::fixed(agg.instability.mean, 6) << ','
      << detail::fixed(agg.instability.half_width, 6) << '\n';
}

// node_id,x,y,region_id
inline void write_placement_csv(std::ostream& out, std::span<const NodeState> nodes) {
  out << "node_id,x,y,region_id\n";
  for (const auto& n : nodes) {
    out << n.id << ',' << detail::fixed(n.position.x, 6) << ',' << detail::fixed(n.position.y, 6) << ','
        << region_number(n.region) << '\n';
  }
}

}  // namespace reechme
