#include "qtst/io/reference.hpp"
#include "qtst/kie.hpp"
#include "support.hpp"

using namespace qtst;
using qtst::test::lin_grid;
using qtst::test::rel_near;

namespace {
constexpr Isotope H = Isotope::H, D = Isotope::D, T = Isotope::T;
}

TEST(Kie, SpotValues) {
  // mpmath evaluation, tests/oracles/oracles.py
  EXPECT_TRUE(rel_near(kie_qtst(3000.0, 1000.0, 300.0, H, D).ratio, 17.047042665710686, 1e-13));
  EXPECT_TRUE(rel_near(kie_qtst(3000.0, 1000.0, 300.0, H, T).ratio, 52.600212604025088, 1e-13));
}

TEST(Kie, SameIsotopeIsOne) {
  for (Isotope i : {H, D, T}) EXPECT_DOUBLE_EQ(kie_qtst(3000.0, 1000.0, 300.0, i, i).ratio, 1.0);
}

TEST(Kie, ZeroFrequencyLimit) {
  // Both sinh and sin ratios reduce to mass ratios that cancel, leaving sqrt(mH/mL).
  EXPECT_TRUE(rel_near(kie_qtst(0.0, 0.0, 300.0, H, D).ratio, std::sqrt(2.0), 1e-15));
  EXPECT_TRUE(rel_near(kie_qtst(1e-6, 1e-6, 300.0, H, D).ratio, std::sqrt(2.0), 1e-9));
}

TEST(Kie, BelowCrossoverNamesIsotope) {
  try {
    kie_qtst(3000.0, 1000.0, 200.0, H, D);
    FAIL() << "expected below_crossover_error";
  } catch (const below_crossover_error& e) {
    EXPECT_NE(std::string(e.what()).find("isotope H"), std::string::npos);
    EXPECT_TRUE(rel_near(e.crossover(), crossover_temperature(1000.0), 1e-15));
  }
  // The D crossover is lower, so D:T is valid at 200 K.
  EXPECT_NO_THROW(kie_qtst(3000.0, 1000.0, 200.0, D, T));
  EXPECT_THROW(kie_qtst(3000.0, 1000.0, 300.0, T, H), domain_error);
}

TEST(Kie, RatioChain) {
  for (double temp : {260.0, 300.0, 350.0}) {
    const double ht = kie_qtst(3000.0, 1000.0, temp, H, T).ratio;
    const double hd = kie_qtst(3000.0, 1000.0, temp, H, D).ratio;
    const double dt = kie_qtst(3000.0, 1000.0, temp, D, T).ratio;
    EXPECT_TRUE(rel_near(ht, hd * dt, 1e-13));
  }
}

TEST(Kie, DecreasingInTemperature) {
  for (double w0 : {2000.0, 3000.0}) {
    for (double wb : {500.0, 1000.0, 1200.0}) {
      const double lo = 1.1 * crossover_temperature(wb);
      double prev = std::numeric_limits<double>::infinity();
      for (double temp : lin_grid(lo, 400.0, 40)) {
        const double k = kie_qtst(w0, wb, temp, H, D).ratio;
        EXPECT_GE(k, 1.0);
        EXPECT_LT(k, prev);
        prev = k;
      }
    }
  }
}

TEST(Kie, ApparentArrheniusTableValues) {
  const auto ht = apparent_arrhenius(3000.0, 1000.0, 288.0, H, T);
  EXPECT_NEAR(ht.dE, 16.0, 0.5);
  EXPECT_NEAR(ht.prefactor_ratio, 0.08, 0.015);
  const auto dt = apparent_arrhenius(3000.0, 1000.0, 288.0, D, T);
  EXPECT_NEAR(dt.dE, 3.6, 0.2);
  EXPECT_NEAR(dt.prefactor_ratio, 0.70, 0.05);
  EXPECT_FALSE(ht.expansion_dubious);
}

TEST(Kie, ApparentArrheniusAgainstNumericalSlope) {
  // Numerical d ln KIE / d(1/T) from a 40-digit oracle; the expansion drops
  // exp(-hbar w0/k_B T) corrections, so agreement is at the 1e-3 level.
  const auto ht = apparent_arrhenius(3000.0, 1000.0, 288.0, H, T);
  EXPECT_TRUE(rel_near(ht.dE, 15.998670971289165, 1e-3));
  EXPECT_TRUE(rel_near(ht.prefactor_ratio, 0.085235232294708706, 3e-3));
  const auto dt = apparent_arrhenius(3000.0, 1000.0, 288.0, D, T);
  EXPECT_TRUE(rel_near(dt.dE, 3.6095063954268999, 1e-3));
  EXPECT_TRUE(rel_near(dt.prefactor_ratio, 0.72526665668398188, 3e-3));
}

TEST(Kie, ApparentArrheniusSelfConsistency) {
  for (double tr : lin_grid(280.0, 320.0, 9)) {
    for (auto [l, h] : {std::pair{H, D}, std::pair{H, T}, std::pair{D, T}}) {
      const double u = 1.0 / tr, du = 1e-4 * u;
      const double slope = (std::log(kie_qtst(3000.0, 1000.0, 1.0 / (u + du), l, h).ratio) -
                            std::log(kie_qtst(3000.0, 1000.0, 1.0 / (u - du), l, h).ratio)) /
                           (2.0 * du);
      const double dE = slope * constants::gas_constant;
      EXPECT_TRUE(rel_near(apparent_arrhenius(3000.0, 1000.0, tr, l, h).dE, dE, 0.02)) << tr;
    }
  }
}

TEST(Kie, ApparentArrheniusContinuousAndTrivial) {
  const auto same = apparent_arrhenius(3000.0, 1000.0, 300.0, D, D);
  EXPECT_EQ(same.prefactor_ratio, 1.0);
  EXPECT_EQ(same.dE, 0.0);
  const auto a = apparent_arrhenius(3000.0, 1000.0, 300.0, H, D);
  const auto b = apparent_arrhenius(3000.0, 1000.0, 300.0 + 1e-6, H, D);
  EXPECT_TRUE(rel_near(a.dE, b.dE, 1e-6));
  EXPECT_TRUE(rel_near(a.prefactor_ratio, b.prefactor_ratio, 1e-6));
  EXPECT_TRUE(apparent_arrhenius(500.0, 100.0, 300.0, H, D).expansion_dubious);
  EXPECT_THROW(apparent_arrhenius(3000.0, 1000.0, 200.0, H, D), below_crossover_error);
}

TEST(Kie, SwainSchaad) {
  EXPECT_TRUE(rel_near(semiclassical_swain_schaad(), 3.2572525594738616, 1e-15));
  EXPECT_NEAR(semiclassical_swain_schaad(), 3.26, 0.01);
  EXPECT_TRUE(rel_near(swain_schaad(81.0, 3.85, 1.0), 3.2598002268757451, 1e-14));
  const double e = std::exp(1.0);
  EXPECT_DOUBLE_EQ(swain_schaad(e, e, 1.0), 1.0);
  EXPECT_THROW(swain_schaad(2.0, 1.0, 1.0), domain_error);
  EXPECT_THROW(swain_schaad(-2.0, 1.0, 1.0), domain_error);
}

TEST(Kie, ClassifyTableRows) {
  const auto limits = io::load_limits();
  const auto mcm = classify(35.6, 0.082, 14.3, {H, D}, limits);
  EXPECT_TRUE(mcm.kim_kreevoy_applicable);
  EXPECT_TRUE(mcm.all_kim_kreevoy());
  const auto inside = classify(5.0, 1.0, 2.0, {H, D}, limits);
  EXPECT_FALSE(inside.kie_exceeds);
  EXPECT_FALSE(inside.dE_exceeds);
  EXPECT_FALSE(inside.A_ratio_below);
  EXPECT_FALSE(inside.outside_bell());
  const auto slo = classify(81.0, 18.0, 3.8, {H, D}, limits);
  EXPECT_TRUE(slo.bell_above);
  EXPECT_FALSE(slo.bell_below);
}

TEST(Kie, ClassifyOtherPairs) {
  const auto limits = io::load_limits();
  const auto ht = classify(20.0, 0.13, 13.0, {H, T}, limits);
  EXPECT_FALSE(ht.kim_kreevoy_applicable);
  EXPECT_FALSE(ht.kie_exceeds);
  EXPECT_TRUE(ht.bell_below);
  EXPECT_DOUBLE_EQ(ht.bell_range.low, 0.3);
  EXPECT_THROW(classify(2.0, 1.0, 1.0, {H, H}, limits), domain_error);
}
