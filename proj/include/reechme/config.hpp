#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "reechme/engine.hpp"
#include "reechme/errors.hpp"
#include "reechme/rng.hpp"
#include "reechme/stats.hpp"

namespace reechme {

/// A full experiment: simulation parameters plus the batch around them.
struct ExperimentConfig {
  SimulationConfig sim;
  std::vector<Protocol> protocols{Protocol::reech_me, Protocol::leach};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  double confidence = 0.95;
  std::string output_dir = "out";
  bool dump_placement = false;

  void validate() const {
    sim.validate();
    check_confidence(confidence);
    if (protocols.empty()) throw ConfigError("protocol", "select reech, leach or both");
    if (seeds.size() < 2) throw ConfigError("seeds", "at least 2 seeds are needed for confidence intervals");
    auto sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("seeds", "seeds must be distinct");
    }
    if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline std::vector<Protocol> parse_protocols(std::string_view text) {
  const auto t = detail::trim(text);
  if (t == "reech") return {Protocol::reech_me};
  if (t == "leach") return {Protocol::leach};
  if (t == "both") return {Protocol::reech_me, Protocol::leach};
  throw ConfigError("protocol", "expected reech, leach or both, got '" + std::string(t) + "'");
}

/// Comma-separated seeds; an item "a..b" expands to the inclusive range.
inline std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (auto item : detail::split(text, ',')) {
    if (item.empty()) continue;
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const auto lo = detail::parse_number<std::uint64_t>("seeds", item.substr(0, dots));
      const auto hi = detail::parse_number<std::uint64_t>("seeds", item.substr(dots + 2));
      if (hi < lo || hi - lo > 100000) throw ConfigError("seeds", "bad range '" + std::string(item) + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(detail::parse_number<std::uint64_t>("seeds", item));
    }
  }
  if (seeds.empty()) throw ConfigError("seeds", "no seeds given");
  return seeds;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  const auto t = detail::trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(std::string(key), "expected true or false");
}

/// Set one key. Keys match the names written by format_config.
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_number;
  auto& sim = cfg.sim;
  if (key == "field_width") sim.field.width = parse_number<double>(key, value);
  else if (key == "field_height") sim.field.height = parse_number<double>(key, value);
  else if (key == "sink_x") sim.field.sink.x = parse_number<double>(key, value);
  else if (key == "sink_y") sim.field.sink.y = parse_number<double>(key, value);
  else if (key == "region_quotas") {
    const auto parts = detail::split(value, ',');
    if (parts.size() != kRegionCount) throw ConfigError("region_quotas", "expected 9 comma-separated counts");
    for (std::size_t i = 0; i < kRegionCount; ++i) sim.quotas[i] = parse_number<std::uint32_t>(key, parts[i]);
  }
  else if (key == "initial_energy") sim.radio.initial_energy = parse_number<double>(key, value);
  else if (key == "e_elec") sim.radio.e_elec = parse_number<double>(key, value);
  else if (key == "eps_fs") sim.radio.eps_fs = parse_number<double>(key, value);
  else if (key == "eps_mp") sim.radio.eps_mp = parse_number<double>(key, value);
  else if (key == "e_da") sim.radio.e_da = parse_number<double>(key, value);
  else if (key == "packet_bits") sim.radio.packet_bits = parse_number<std::uint64_t>(key, value);
  else if (key == "drop_probability") sim.drop.drop_probability = parse_number<double>(key, value);
  else if (key == "leach_p") sim.leach.ch_probability = parse_number<double>(key, value);
  else if (key == "max_rounds") sim.max_rounds = parse_number<std::uint64_t>(key, value);
  else if (key == "protocol") cfg.protocols = parse_protocols(value);
  else if (key == "seeds") cfg.seeds = parse_seeds(value);
  else if (key == "confidence") cfg.confidence = parse_number<double>(key, value);
  else if (key == "output_dir") cfg.output_dir = std::string(detail::trim(value));
  else if (key == "dump_placement") cfg.dump_placement = parse_bool(key, value);
  else if (key == "rng") {
    if (detail::trim(value) != RunRng::kGeneratorName) {
      throw ConfigError("rng", std::string("only ") + RunRng::kGeneratorName + " is supported");
    }
  }
  else throw ConfigError(std::string(key), "unknown key");
}

/// Parse `key = value` lines on top of `base`. Blank lines and `#` comments
/// are ignored. The result is not validated.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {}) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    }
    apply_setting(base, detail::trim(view.substr(0, eq)), detail::trim(view.substr(eq + 1)));
  }
  return base;
}

inline ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  return parse_config(in, std::move(base));
}

/// Serialize every key; parse_config of the result reproduces `cfg`.
inline std::string format_config(const ExperimentConfig& cfg) {
  using detail::format_double;
  const auto& sim = cfg.sim;
  std::ostringstream out;
  out << "# effective configuration\n";
  out << "field_width = " << format_double(sim.field.width) << '\n';
  out << "field_height = " << format_double(sim.field.height) << '\n';
  out << "sink_x = " << format_double(sim.field.sink.x) << '\n';
  out << "sink_y = " << format_double(sim.field.sink.y) << '\n';
  out << "region_quotas = ";
  for (std::size_t i = 0; i < kRegionCount; ++i) out << (i ? "," : "") << sim.quotas[i];
  out << '\n';
  out << "initial_energy = " << format_double(sim.radio.initial_energy) << '\n';
  out << "e_elec = " << format_double(sim.radio.e_elec) << '\n';
  out << "eps_fs = " << format_double(sim.radio.eps_fs) << '\n';
  out << "eps_mp = " << format_double(sim.radio.eps_mp) << '\n';
  out << "e_da = " << format_double(sim.radio.e_da) << '\n';
  out << "packet_bits = " << sim.radio.packet_bits << '\n';
  out << "drop_probability = " << format_double(sim.drop.drop_probability) << '\n';
  out << "leach_p = " << format_double(sim.leach.ch_probability) << '\n';
  out << "max_rounds = " << sim.max_rounds << '\n';
  const bool both = cfg.protocols.size() == 2;
  out << "protocol = " << (both ? std::string_view("both") : to_string(cfg.protocols.front())) << '\n';
  out << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) out << (i ? "," : "") << cfg.seeds[i];
  out << '\n';
  out << "confidence = " << format_double(cfg.confidence) << '\n';
  out << "output_dir = " << cfg.output_dir << '\n';
  out << "dump_placement = " << (cfg.dump_placement ? "true" : "false") << '\n';
  out << "rng = " << RunRng::kGeneratorName << '\n';
  return out.str();
}

}  // namespace reechme
