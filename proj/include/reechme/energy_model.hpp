#pragma once

#include <cmath>
#include <cstdint>

#include "reechme/errors.hpp"

namespace reechme {

using Joules = double;
using Meters = double;
using BitCount = std::uint64_t;

/// First-order radio constants. Energies are per bit; the amplifier
/// coefficients are per bit per m^2 (free space) and per m^4 (multipath).
struct RadioParams {
  Joules e_elec = 50e-9;
  double eps_fs = 10e-12;
  double eps_mp = 0.0013e-12;
  Joules e_da = 5e-9;
  BitCount packet_bits = 4000;
  Joules initial_energy = 0.5;

  void validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(e_elec)) throw ConfigError("e_elec", "must be finite and > 0");
    if (!positive(eps_fs)) throw ConfigError("eps_fs", "must be finite and > 0");
    if (!positive(eps_mp)) throw ConfigError("eps_mp", "must be finite and > 0");
    if (!positive(e_da)) throw ConfigError("e_da", "must be finite and > 0");
    if (packet_bits == 0) throw ConfigError("packet_bits", "must be > 0");
    if (!positive(initial_energy)) throw ConfigError("initial_energy", "must be finite and > 0");
  }
};

/// Distance at which the amplifier switches from the d^2 to the d^4 regime.
inline Meters crossover_distance(const RadioParams& p) noexcept {
  return std::sqrt(p.eps_fs / p.eps_mp);
}

/// Energy to transmit `bits` over `distance`. At exactly d0 the multipath
/// branch is taken; both branches agree there up to rounding.
inline Joules tx_energy(const RadioParams& p, BitCount bits, Meters distance) noexcept {
  const double k = static_cast<double>(bits);
  const double d2 = distance * distance;
  if (distance < crossover_distance(p)) {
    return p.e_elec * k + p.eps_fs * k * d2;
  }
  return p.e_elec * k + p.eps_mp * k * d2 * d2;
}

inline Joules rx_energy(const RadioParams& p, BitCount bits) noexcept {
  return p.e_elec * static_cast<double>(bits);
}

/// Aggregation cost at a cluster head. `signals` counts every packet fused,
/// including the head's own reading.
inline Joules aggregation_energy(const RadioParams& p, BitCount bits, std::uint64_t signals) noexcept {
  return p.e_da * static_cast<double>(bits) * static_cast<double>(signals);
}

}  // namespace reechme
