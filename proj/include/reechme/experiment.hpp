#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reechme/config.hpp"
#include "reechme/engine.hpp"
#include "reechme/errors.hpp"
#include "reechme/report.hpp"
#include "reechme/stats.hpp"

namespace reechme {

struct ProtocolBatch {
  Protocol protocol = Protocol::reech_me;
  std::vector<RunSummary> runs;  // in seed-list order
  AggregateStats stats;
  MeanCi stability_sent;
  MeanCi stability_received;
  MeanCi stability_dropped;
};

struct ExperimentResult {
  std::vector<ProtocolBatch> batches;

  const ProtocolBatch* find(Protocol p) const {
    for (const auto& b : batches) {
      if (b.protocol == p) return &b;
    }
    return nullptr;
  }
};

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  for (Protocol protocol : cfg.protocols) {
    ProtocolBatch batch;
    batch.protocol = protocol;
    for (auto seed : cfg.seeds) batch.runs.push_back(run_simulation(cfg.sim, protocol, seed));
    batch.stats = aggregate(batch.runs, cfg.confidence);

    std::vector<double> sent, received, dropped;
    for (const auto& run : batch.runs) {
      const auto t = stability_throughput(run);
      sent.push_back(t.sent);
      received.push_back(t.received);
      dropped.push_back(t.dropped);
    }
    batch.stability_sent = mean_ci(sent, cfg.confidence);
    batch.stability_received = mean_ci(received, cfg.confidence);
    batch.stability_dropped = mean_ci(dropped, cfg.confidence);
    result.batches.push_back(std::move(batch));
  }
  return result;
}

/// Percentage change of `value` relative to `baseline`; empty when the baseline is zero.
inline std::optional<double> percent_delta(double value, double baseline) {
  if (baseline == 0.0) return std::nullopt;
  return (value - baseline) / baseline * 100.0;
}

inline std::string comparison_report(const ExperimentConfig& cfg, const ExperimentResult& result) {
  std::ostringstream out;
  char line[256];
  out << "runs per protocol: " << cfg.seeds.size() << ", confidence: " << detail::fixed(cfg.confidence * 100.0, 1)
      << "% (Student-t)\n";
  out << "values are mean +/- half-width; rounds are 0-based\n\n";

  auto mc = [](const MeanCi& m) { return detail::fixed(m.mean, 2) + " +/- " + detail::fixed(m.half_width, 2); };
  for (const auto& b : result.batches) {
    std::size_t censored = 0;
    for (const auto& r : b.runs) censored += r.milestones.lifetime_censored ? 1 : 0;
    out << "[" << to_string(b.protocol) << "]\n";
    std::snprintf(line, sizeof line, "  %-34s %s\n", "stability period (rounds)", mc(b.stats.stability).c_str());
    out << line;
    std::snprintf(line, sizeof line, "  %-34s %s\n", "network lifetime (rounds)", mc(b.stats.lifetime).c_str());
    out << line;
    std::snprintf(line, sizeof line, "  %-34s %s\n", "instability period (rounds)", mc(b.stats.instability).c_str());
    out << line;
    std::snprintf(line, sizeof line, "  %-34s %s\n", "packets sent / round (stable)", mc(b.stability_sent).c_str());
    out << line;
    std::snprintf(line, sizeof line, "  %-34s %s\n", "packets received / round (stable)",
                  mc(b.stability_received).c_str());
    out << line;
    std::snprintf(line, sizeof line, "  %-34s %s\n", "packets dropped / round (stable)",
                  mc(b.stability_dropped).c_str());
    out << line;
    if (censored > 0) {
      out << "  note: " << censored << " run(s) reached max_rounds with survivors; lifetime is censored\n";
    }
    out << '\n';
  }

  const auto* reech = result.find(Protocol::reech_me);
  const auto* leach = result.find(Protocol::leach);
  if (reech && leach) {
    out << "[reech vs leach] (reech - leach) / leach * 100\n";
    auto delta = [&](const char* name, const MeanCi& a, const MeanCi& b) {
      const auto d = percent_delta(a.mean, b.mean);
      if (d) {
        std::snprintf(line, sizeof line, "  %-34s %+.1f%%\n", name, *d);
      } else {
        std::snprintf(line, sizeof line, "  %-34s n/a\n", name);
      }
      out << line;
    };
    delta("stability period", reech->stats.stability, leach->stats.stability);
    delta("network lifetime", reech->stats.lifetime, leach->stats.lifetime);
    delta("instability period", reech->stats.instability, leach->stats.instability);
    delta("packets received / round (stable)", reech->stability_received, leach->stability_received);
  }
  return out.str();
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

template <class Writer>
std::string render(Writer&& w) {
  std::ostringstream s;
  w(s);
  return s.str();
}

}  // namespace detail

/// Write every output file for `result` into cfg.output_dir and return the
/// paths in the order written.
///
/// Layout, per selected protocol P and seed S:
///   P_seedS.csv       per-round metrics of one run
///   P_aggregate.csv   per-round mean and CI across seeds
///   P_summary.csv     milestone mean and CI
/// plus comparison.txt, effective_config.txt and, with dump_placement,
/// nodes_seedS.csv.
inline std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());

  std::vector<fs::path> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    const fs::path p = dir / name;
    detail::write_file(p, content);
    written.push_back(p);
  };

  for (const auto& b : result.batches) {
    const std::string prefix(to_string(b.protocol));
    for (const auto& run : b.runs) {
      emit(prefix + "_seed" + std::to_string(run.seed) + ".csv",
           detail::render([&](std::ostream& o) { write_run_csv(o, run); }));
    }
    emit(prefix + "_aggregate.csv", detail::render([&](std::ostream& o) { write_aggregate_csv(o, b.stats); }));
    emit(prefix + "_summary.csv", detail::render([&](std::ostream& o) { write_summary_csv(o, b.stats); }));
  }

  if (cfg.dump_placement) {
    const RegionMap map = build_regions(cfg.sim.field, cfg.sim.quotas);
    for (auto seed : cfg.seeds) {
      RunRng rng(seed);
      const auto nodes = deploy_nodes(map, cfg.sim.radio.initial_energy, rng);
      emit("nodes_seed" + std::to_string(seed) + ".csv",
           detail::render([&](std::ostream& o) { write_placement_csv(o, nodes); }));
    }
  }

  emit("comparison.txt", comparison_report(cfg, result));
  emit("effective_config.txt", format_config(cfg));
  return written;
}

}  // namespace reechme
