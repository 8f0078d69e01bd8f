#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "reechme/engine.hpp"
#include "reechme/errors.hpp"

namespace reechme {

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
};

inline void check_confidence(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence", "must lie strictly between 0 and 1");
}

/// Two-sided Student-t critical value for `confidence` with `dof` degrees of freedom.
inline double t_critical(double confidence, std::size_t dof) {
  check_confidence(confidence);
  boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, 0.5 * (1.0 + confidence));
}

namespace detail {

// Samples are summed in sorted order so the result does not depend on run order.
inline MeanCi summarize(std::vector<double> xs, double t) {
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd == 0.0 ? 0.0 : t * sd / std::sqrt(n)};
}

}  // namespace detail

/// Sample mean and t-interval half-width t * s / sqrt(n).
inline MeanCi mean_ci(std::span<const double> samples, double confidence) {
  if (samples.size() < 2) throw AggregationError("a confidence interval needs at least 2 samples");
  return detail::summarize({samples.begin(), samples.end()}, t_critical(confidence, samples.size() - 1));
}

enum class Metric : std::uint8_t {
  alive,
  dead,
  ch_count,
  packets_sent,
  packets_received,
  packets_dropped,
  total_energy_j,
};

inline constexpr std::size_t kMetricCount = 7;

inline constexpr std::array<Metric, kMetricCount> kAllMetrics{
    Metric::alive,        Metric::dead,          Metric::ch_count,       Metric::packets_sent,
    Metric::packets_received, Metric::packets_dropped, Metric::total_energy_j,
};

inline constexpr std::string_view metric_name(Metric m) noexcept {
  switch (m) {
    case Metric::alive: return "alive";
    case Metric::dead: return "dead";
    case Metric::ch_count: return "ch_count";
    case Metric::packets_sent: return "packets_sent";
    case Metric::packets_received: return "packets_received";
    case Metric::packets_dropped: return "packets_dropped";
    case Metric::total_energy_j: return "total_energy_j";
  }
  return "";
}

inline double metric_value(const RoundMetrics& r, Metric m) noexcept {
  switch (m) {
    case Metric::alive: return r.alive;
    case Metric::dead: return r.dead;
    case Metric::ch_count: return r.ch_count;
    case Metric::packets_sent: return r.packets_sent;
    case Metric::packets_received: return r.packets_received;
    case Metric::packets_dropped: return r.packets_dropped;
    case Metric::total_energy_j: return r.total_residual_energy;
  }
  return 0.0;
}

/// Row `round` of a run, or its terminal state once the run has ended:
/// population and energy hold their last values, traffic counters are zero.
inline RoundMetrics padded_round(const RunSummary& run, std::size_t round) {
  if (round < run.rounds.size()) return run.rounds[round];
  RoundMetrics r;
  r.round = round;
  if (!run.rounds.empty()) {
    const RoundMetrics& last = run.rounds.back();
    r.alive = last.alive;
    r.dead = last.dead;
    r.total_residual_energy = last.total_residual_energy;
  } else {
    r.alive = run.node_count;
    r.total_residual_energy = run.initial_total_energy;
  }
  return r;
}

struct AggregateRow {
  std::uint64_t round = 0;
  std::array<MeanCi, kMetricCount> metrics{};

  const MeanCi& operator[](Metric m) const { return metrics[static_cast<std::size_t>(m)]; }
};

struct AggregateStats {
  std::size_t runs = 0;
  double confidence = 0.95;
  std::vector<AggregateRow> rows;
  MeanCi stability;
  MeanCi lifetime;
  MeanCi instability;
};

/// Cross-run mean and t-interval per round and per milestone. Runs are
/// aligned on round index and padded to the longest one.
inline AggregateStats aggregate(std::span<const RunSummary> runs, double confidence = 0.95) {
  check_confidence(confidence);
  if (runs.size() < 2) throw AggregationError("aggregation needs at least 2 runs");

  AggregateStats out;
  out.runs = runs.size();
  out.confidence = confidence;

  std::size_t length = 0;
  for (const auto& r : runs) length = std::max(length, r.rounds.size());

  const double t = t_critical(confidence, runs.size() - 1);
  std::vector<double> samples(runs.size());
  out.rows.resize(length);
  for (std::size_t round = 0; round < length; ++round) {
    std::vector<RoundMetrics> rows;
    rows.reserve(runs.size());
    for (const auto& r : runs) rows.push_back(padded_round(r, round));
    out.rows[round].round = round;
    for (Metric m : kAllMetrics) {
      for (std::size_t i = 0; i < rows.size(); ++i) samples[i] = metric_value(rows[i], m);
      out.rows[round].metrics[static_cast<std::size_t>(m)] = detail::summarize(samples, t);
    }
  }

  auto milestone = [&](auto field) {
    for (std::size_t i = 0; i < runs.size(); ++i) samples[i] = static_cast<double>(runs[i].milestones.*field);
    return detail::summarize(samples, t);
  };
  out.stability = milestone(&Milestones::stability);
  out.lifetime = milestone(&Milestones::lifetime);
  out.instability = milestone(&Milestones::instability);
  return out;
}

}  // namespace reechme
