#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "reechme/energy_model.hpp"

using namespace reechme;

namespace {

// Relative closeness for values computed by hand from the radio equations.
::testing::AssertionResult RelClose(double actual, double expected, double rel = 1e-12) {
  const double err = std::abs(actual - expected) / std::abs(expected);
  if (err <= rel) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << actual << " vs " << expected << " (rel err " << err << ")";
}

}  // namespace

TEST(RadioParams, DefaultsMatchSimulationTable) {
  RadioParams p;
  EXPECT_DOUBLE_EQ(p.e_elec, 50e-9);
  EXPECT_DOUBLE_EQ(p.e_da, 5e-9);
  EXPECT_EQ(p.packet_bits, 4000u);
  EXPECT_DOUBLE_EQ(p.initial_energy, 0.5);
  EXPECT_NO_THROW(p.validate());
}

TEST(RadioParams, RejectsNonPositiveFields) {
  RadioParams p;
  p.eps_mp = 0.0;
  try {
    p.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "eps_mp");
  }
  RadioParams q;
  q.packet_bits = 0;
  EXPECT_THROW(q.validate(), ConfigError);
}

TEST(CrossoverDistance, DefaultCoefficients) {
  EXPECT_NEAR(crossover_distance(RadioParams{}), 87.70580193070292, 1e-9);
}

TEST(CrossoverDistance, TrivialRatios) {
  RadioParams p;
  p.eps_fs = p.eps_mp = 3e-13;
  EXPECT_DOUBLE_EQ(crossover_distance(p), 1.0);
  p.eps_fs = 4e-12;
  p.eps_mp = 1e-12;
  EXPECT_DOUBLE_EQ(crossover_distance(p), 2.0);
}

TEST(TxEnergy, FreeSpaceBelowCrossover) {
  EXPECT_TRUE(RelClose(tx_energy(RadioParams{}, 4000, 50.0), 3.0e-4));
}

TEST(TxEnergy, MultipathBeyondCrossover) {
  EXPECT_TRUE(RelClose(tx_energy(RadioParams{}, 4000, 100.0), 7.2e-4));
}

TEST(TxEnergy, ZeroBitsCostNothing) {
  EXPECT_EQ(tx_energy(RadioParams{}, 0, 0.0), 0.0);
  EXPECT_EQ(tx_energy(RadioParams{}, 0, 250.0), 0.0);
}

TEST(TxEnergy, BranchesAgreeAtCrossover) {
  RadioParams p;
  const double d0 = crossover_distance(p);
  const double k = 4000.0;
  const double d2 = d0 * d0;
  const double free_space = p.e_elec * k + p.eps_fs * k * d2;
  const double multipath = p.e_elec * k + p.eps_mp * k * d2 * d2;
  EXPECT_TRUE(RelClose(free_space, multipath));
  // At d == d0 the multipath form is the one evaluated.
  EXPECT_EQ(tx_energy(p, 4000, d0), multipath);
  EXPECT_TRUE(RelClose(tx_energy(p, 4000, std::nextafter(d0, 0.0)), free_space));
}

TEST(RxEnergy, Values) {
  RadioParams p;
  EXPECT_TRUE(RelClose(rx_energy(p, 4000), 2.0e-4));
  EXPECT_EQ(rx_energy(p, 0), 0.0);
  EXPECT_TRUE(RelClose(rx_energy(p, 1), 5.0e-8));
}

TEST(AggregationEnergy, Values) {
  RadioParams p;
  EXPECT_TRUE(RelClose(aggregation_energy(p, 4000, 10), 2.0e-4));
  EXPECT_EQ(aggregation_energy(p, 4000, 0), 0.0);
  EXPECT_TRUE(RelClose(aggregation_energy(p, 4000, 1), 2.0e-5));
}

TEST(EnergyProperties, MonotoneInDistanceWithinRegime) {
  RadioParams p;
  const double d0 = crossover_distance(p);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> below(0.0, d0), above(d0, 4 * d0);
  for (int i = 0; i < 2000; ++i) {
    double a = below(gen), b = below(gen);
    if (a > b) std::swap(a, b);
    EXPECT_LE(tx_energy(p, 4000, a), tx_energy(p, 4000, b));
    double c = above(gen), d = above(gen);
    if (c > d) std::swap(c, d);
    EXPECT_LE(tx_energy(p, 4000, c), tx_energy(p, 4000, d));
  }
}

TEST(EnergyProperties, TransmitNeverCheaperThanReceive) {
  RadioParams p;
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dist(0.0, 300.0);
  std::uniform_int_distribution<BitCount> bits(0, 100000);
  for (int i = 0; i < 2000; ++i) {
    const BitCount k = bits(gen);
    EXPECT_GE(tx_energy(p, k, dist(gen)), rx_energy(p, k));
  }
}

TEST(EnergyProperties, LinearInBits) {
  RadioParams p;
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> dist(0.0, 300.0);
  for (int i = 0; i < 500; ++i) {
    const double d = dist(gen);
    for (BitCount c : {2u, 3u, 17u}) {
      EXPECT_TRUE(RelClose(tx_energy(p, c * 4000, d), c * tx_energy(p, 4000, d)));
      EXPECT_TRUE(RelClose(rx_energy(p, c * 4000), c * rx_energy(p, 4000)));
      EXPECT_TRUE(RelClose(aggregation_energy(p, c * 4000, 5), c * aggregation_energy(p, 4000, 5)));
    }
  }
}
