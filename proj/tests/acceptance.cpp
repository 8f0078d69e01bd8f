// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reechme/reechme.hpp"

using namespace reechme;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Default experiment shared by the pipeline criteria.
const ExperimentConfig& default_config() {
  static const ExperimentConfig cfg = [] {
    ExperimentConfig c;
    c.seeds = {1, 2, 3, 4, 5};
    return c;
  }();
  return cfg;
}

const ExperimentResult& default_result() {
  static const ExperimentResult r = run_experiment(default_config());
  return r;
}

Verdict ch_count_invariant() {
  const auto* batch = default_result().find(Protocol::reech_me);
  std::size_t checked = 0;
  for (const auto& run : batch->runs) {
    if (run.milestones.stability_censored) return {false, "no death within max_rounds"};
    for (std::size_t r = 0; r < run.milestones.stability; ++r) {
      const auto& m = run.rounds[r];
      if (m.ch_count != 8 || m.packets_sent != 28) {
        return {false, "seed " + std::to_string(run.seed) + " round " + std::to_string(r) + ": ch=" +
                           std::to_string(m.ch_count) + " sent=" + std::to_string(m.packets_sent)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " stable rounds over 5 seeds"};
}

Verdict throughput_under_drop() {
  const auto* reech = default_result().find(Protocol::reech_me);
  const auto* leach = default_result().find(Protocol::leach);
  const double rr = reech->stability_received.mean, rd = reech->stability_dropped.mean;
  const double lr = leach->stability_received.mean, ld = leach->stability_dropped.mean;
  const bool ok = rr >= 18.5 && rr <= 20.7 && rd >= 7.4 && rd <= 9.4 && lr >= 6.0 && lr <= 8.0 && ld >= 2.0 &&
                  ld <= 4.0;
  return {ok, "reech recv " + fmt("%.2f", rr) + " drop " + fmt("%.2f", rd) + "; leach recv " + fmt("%.2f", lr) +
                  " drop " + fmt("%.2f", ld)};
}

Verdict lifetime_ordering() {
  const double reech = default_result().find(Protocol::reech_me)->stats.lifetime.mean;
  const double leach = default_result().find(Protocol::leach)->stats.lifetime.mean;
  const double ratio = reech / leach;
  const bool ok = ratio >= 1.4 && reech >= 1750 && reech <= 3250 && leach >= 1050 && leach <= 1950;
  return {ok, "reech " + fmt("%.1f", reech) + ", leach " + fmt("%.1f", leach) + ", ratio " + fmt("%.3f", ratio) +
                  " (need >= 1.4)"};
}

Verdict stability_ordering() {
  const double reech = default_result().find(Protocol::reech_me)->stats.stability.mean;
  const double leach = default_result().find(Protocol::leach)->stats.stability.mean;
  const double ratio = reech / leach;
  return {ratio >= 1.5, "reech " + fmt("%.1f", reech) + ", leach " + fmt("%.1f", leach) + ", ratio " +
                            fmt("%.3f", ratio) + " (need >= 1.5)"};
}

Verdict energy_conservation() {
  double worst = 0.0;
  bool per_node_ok = true;
  for (Protocol p : {Protocol::reech_me, Protocol::leach}) {
    for (auto seed : default_config().seeds) {
      std::vector<double> last;
      const auto run = run_simulation(default_config().sim, p, seed,
                                      [&](std::uint64_t, std::span<const NodeState> nodes, const RoundOutcome&) {
                                        if (last.empty()) last.assign(nodes.size(), 0.5);
                                        for (std::size_t i = 0; i < nodes.size(); ++i) {
                                          const double e = nodes[i].residual_energy;
                                          per_node_ok &= e >= 0.0 && e <= last[i];
                                          last[i] = e;
                                        }
                                      });
      const double final_residual = run.rounds.back().total_residual_energy;
      worst = std::max(worst, std::abs(run.total_consumed - (100 * 0.5 - final_residual)));
    }
  }
  return {worst <= 1e-12 && per_node_ok,
          "max |consumed - (50 J - residual)| = " + fmt("%.3e", worst) + " J" +
              (per_node_ok ? ", per-node energy monotone and >= 0" : ", per-node check FAILED")};
}

Verdict channel_oracle() {
  constexpr std::size_t kPackets = 100000;
  constexpr double p = 0.3;
  std::vector<SinkPacket> manifest(kPackets);
  for (std::size_t i = 0; i < kPackets; ++i) manifest[i] = {static_cast<NodeId>(i), NodeRole::direct};

  RunRng rng(20240601);
  const auto out = filter_packets(DropModel{p}, manifest, rng);

  // Independent counter over the identical draw sequence.
  RunRng replay(20240601);
  std::size_t brute_dropped = 0;
  bool same = true;
  for (std::size_t i = 0; i < kPackets; ++i) {
    const double u = replay.uniform();
    const bool lost = u < p;
    brute_dropped += lost;
    same &= lost == out.lost[i];
  }
  const double rate = static_cast<double>(out.dropped) / kPackets;
  const bool ok = same && brute_dropped == out.dropped && out.received + out.dropped == kPackets && rate >= 0.294 &&
                  rate <= 0.306;
  return {ok, "dropped " + std::to_string(out.dropped) + " vs oracle " + std::to_string(brute_dropped) + ", rate " +
                  fmt("%.5f", rate)};
}

Verdict radio_oracle() {
  const RadioParams r;
  const double e1 = rel_err(tx_energy(r, 4000, 50.0), 50e-9 * 4000 + 10e-12 * 4000 * 2500);
  const double e2 = rel_err(tx_energy(r, 4000, 100.0), 2.0e-4 + 1.3e-15 * 4000 * 1e8);
  const double e3 = rel_err(rx_energy(r, 4000), 2.0e-4);
  const double e4 = rel_err(aggregation_energy(r, 4000, 10), 2.0e-4);
  const double d0 = crossover_distance(r);
  const double fs = r.e_elec * 4000 + r.eps_fs * 4000 * d0 * d0;
  const double mp = r.e_elec * 4000 + r.eps_mp * 4000 * std::pow(d0, 4);
  const double e5 = rel_err(fs, mp);
  const double worst = std::max({e1, e2, e3, e4, e5});
  return {worst <= 1e-12, "max relative error " + fmt("%.3e", worst)};
}

Verdict tiling_property() {
  const RegionMap map = build_regions(FieldSpec{});
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  for (int i = 0; i < 1000000; ++i) {
    const Point pt{coord(gen), coord(gen)};
    int hits = 0;
    for (const Region& r : map) hits += r.contains(pt) ? 1 : 0;
    if (hits != 1) return {false, "point covered " + std::to_string(hits) + " times"};
    try {
      if (!map[locate_region(map, pt)].contains(pt)) return {false, "locate_region returned wrong region"};
    } catch (const std::exception& e) {
      return {false, e.what()};
    }
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RunRng rng(seed);
    const auto nodes = deploy_nodes(map, 0.5, rng);
    std::array<std::uint32_t, kRegionCount> counts{};
    for (const auto& n : nodes) counts[region_index(locate_region(map, n.position))]++;
    if (counts != kDefaultQuotas) return {false, "quota mismatch for seed " + std::to_string(seed)};
  }
  return {true, "1e6 points single-covered; quotas exact for 100 seeds"};
}

Verdict determinism() {
  ExperimentConfig cfg = default_config();
  const fs::path base = fs::temp_directory_path() / "reechme_acceptance_determinism";
  fs::remove_all(base);
  cfg.output_dir = (base / "a").string();
  const auto first = write_outputs(cfg, run_experiment(cfg));
  cfg.output_dir = (base / "b").string();
  const auto second = write_outputs(cfg, run_experiment(cfg));
  std::size_t compared = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i].extension() != ".csv") continue;
    if (slurp(first[i]) != slurp(second[i])) return {false, first[i].filename().string() + " differs"};
    ++compared;
  }
  return {compared > 0 && first.size() == second.size(), std::to_string(compared) + " CSV files byte-identical"};
}

Verdict statistics_oracle() {
  std::vector<RunSummary> runs;
  for (int v = 1; v <= 5; ++v) {
    RunSummary run;
    run.node_count = 1;
    RoundMetrics m;
    m.alive = static_cast<std::uint32_t>(v);
    run.rounds.push_back(m);
    runs.push_back(run);
  }
  const auto agg = aggregate(runs, 0.95);
  const auto& alive = agg.rows.at(0)[Metric::alive];
  const auto direct = mean_ci(std::vector<double>{1, 2, 3, 4, 5}, 0.95);
  const bool ok = alive.mean == 3.0 && std::abs(alive.half_width - 1.963) <= 1e-3 && direct.mean == 3.0 &&
                  std::abs(direct.half_width - 1.963) <= 1e-3;
  return {ok, "mean " + fmt("%.4f", alive.mean) + ", half-width " + fmt("%.5f", alive.half_width)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
      {"C1  ch-count invariant (8 heads, 28 packets while stable)", ch_count_invariant},
      {"C2  throughput under 0.3 drop", throughput_under_drop},
      {"C3  lifetime ordering and magnitude", lifetime_ordering},
      {"C4  stability ordering (ratio >= 1.5)", stability_ordering},
      {"C5  energy conservation", energy_conservation},
      {"C6  channel oracle equivalence", channel_oracle},
      {"C7  radio-model unit oracle", radio_oracle},
      {"C8  region tiling and quotas", tiling_property},
      {"C9  byte-identical reruns", determinism},
      {"C10 t-interval oracle", statistics_oracle},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %-58s %s\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str());
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
