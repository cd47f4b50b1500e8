#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "ciso/reward.hpp"
#include "oracles.hpp"

using namespace ciso;
using namespace ciso::reward;
using boost::multiprecision::cpp_int;

namespace {

// Rounded 25 BTC * (624/625)^j in satoshis, by direct power.
Satoshis direct_proposed(unsigned j) {
    const cpp_int num = cpp_int(2'500'000'000ull) * boost::multiprecision::pow(cpp_int(624), j);
    const cpp_int den = boost::multiprecision::pow(cpp_int(625), j);
    const cpp_int q = num / den, r = num % den;
    return static_cast<Satoshis>(2 * r >= den ? q + 1 : q);
}

}  // namespace

TEST(Original, HalvingsAndRounding) {
    EXPECT_EQ(reward_original(0), 5'000'000'000u);
    EXPECT_EQ(reward_original(209'999), 5'000'000'000u);
    EXPECT_EQ(reward_original(210'000), 2'500'000'000u);
    EXPECT_EQ(reward_original(630'000), 625'000'000u);
    // 50 BTC / 2^10 = 4882812.5 satoshi: half rounds up, floor drops it.
    EXPECT_EQ(reward_original(2'100'000), 4'882'813u);
    EXPECT_EQ(reward_original(2'100'000, OriginalRounding::floor_integer), 4'882'812u);
    EXPECT_EQ(reward_original(210'000 * 64, OriginalRounding::floor_integer), 0u);
    EXPECT_EQ(reward_original(210'000 * 34), 0u);
    EXPECT_EQ(reward_original_exact(210'000 * 3), Rational(5'000'000'000ull, 8));
}

TEST(Proposed, MatchesDirectPower) {
    for (unsigned j : {0u, 1u, 2u, 100u, 433u, 1000u, 5000u, 13946u, 13947u}) {
        EXPECT_EQ(reward_proposed(kReformHeight + j * kDecrementPeriod), direct_proposed(j)) << j;
        EXPECT_EQ(reward_proposed(kReformHeight + j * kDecrementPeriod + 335), direct_proposed(j)) << j;
    }
}

TEST(Proposed, PublishedComparisonHeights) {
    EXPECT_EQ(reward_proposed(419'999), 2'500'000'000u);
    EXPECT_EQ(reward_proposed(420'000), 2'500'000'000u);
    EXPECT_EQ(reward_proposed(420'336), 2'496'000'000u);
    EXPECT_EQ(reward_proposed(525'000), 1'516'933'625u);
    EXPECT_EQ(reward_proposed(630'000), 918'962'353u);
    EXPECT_EQ(reward_proposed(840'000), 337'796'723u);
    EXPECT_EQ(reward_proposed(1'050'000), 124'168'988u);
    const auto rows = schedule_table();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].height, kComparisonHeights[i]);
        EXPECT_EQ(rows[i].old_btc(), kPublishedOld[i]);
        if (rows[i].height != 420'336) {
            EXPECT_NEAR(rows[i].new_btc(), kPublishedNew[i], 0.01);
        }
    }
}

TEST(Proposed, EarlyErasFollowOriginal) {
    for (Height t : {0ull, 100ull, 209'999ull, 210'000ull, 419'999ull}) {
        EXPECT_EQ(reward::reward(t, ScheduleKind::proposed), reward::reward(t, ScheduleKind::original)) << t;
    }
}

TEST(Supply, ClosedFormsAreExact) {
    EXPECT_EQ(original_closed_form(), Rational(21'000'000));
    EXPECT_EQ(proposed_closed_form(), Rational(21'000'000));
    EXPECT_EQ(Rational(15'750'000) + Rational(336 * 25 * 625), Rational(21'000'000));
}

TEST(Supply, IteratedTotals) {
    const auto orig = total_emission(ScheduleKind::original);
    EXPECT_EQ(orig.iterated_satoshis, cpp_int(2'100'000'000'000'000ull));
    EXPECT_EQ(orig.delta_satoshis, 0);
    const auto floor = total_emission(ScheduleKind::original, OriginalRounding::floor_integer);
    EXPECT_EQ(floor.delta_satoshis, -2'310'000);
    const auto prop = total_emission(ScheduleKind::proposed);
    EXPECT_EQ(prop.delta_satoshis, -60'144);
    EXPECT_LE(abs(prop.delta_satoshis), cpp_int(5'000'000));
}

TEST(Supply, CumulativeAgreesWithBlockSum) {
    for (Height t : {0ull, 1ull, 210'000ull, 420'000ull, 420'337ull, 500'001ull}) {
        cpp_int sum = 0;
        Height h = 0;
        // Sum in runs of equal reward.
        while (h < t) {
            const Height end = std::min<Height>(t, h < kReformHeight ? (h / kHalvingInterval + 1) * kHalvingInterval
                                                                     : (h / kDecrementPeriod + 1) * kDecrementPeriod);
            sum += cpp_int(reward_proposed(h)) * (end - h);
            h = end;
        }
        const SupplyReport r = cumulative_supply(t, ScheduleKind::proposed);
        EXPECT_EQ(r.cumulative_satoshis, sum) << t;
        EXPECT_EQ(r.cap_delta_satoshis, sum - cpp_int(kCapSatoshis)) << t;
    }
}

TEST(Supply, CrossoverHeight) {
    const Height x = first_crossover();
    EXPECT_EQ(x, 565'488u);
    EXPECT_LT(reward_proposed(x), reward_original(x));
    EXPECT_GE(reward_proposed(x - 1), reward_original(x - 1));
}

TEST(Retarget, ScalesAndClamps) {
    const Target256 t = decode_nbits(0x1b0404cb);
    const std::int64_t expected = kRetargetInterval * kTargetSpacing;
    EXPECT_EQ(retarget(t, expected, expected), t);
    EXPECT_EQ(retarget(t, expected / 2, expected), t / 2);
    EXPECT_EQ(retarget(t, expected * 10, expected), t * 4);
    EXPECT_EQ(retarget(t, expected / 10, expected), t / 4);
    EXPECT_EQ(retarget(t, expected * 10, expected, std::nullopt), t * 10);
    const Target256 huge = pow2_target(255);
    EXPECT_EQ(retarget(huge, expected * 4, expected), ~Target256(0));
}

TEST(Retarget, SimulationIsSeededAndTracksHashrate) {
    RetargetSimulation sim;
    sim.initial_target = decode_nbits(0x1d00ffff);
    sim.seed = oracle::kSeed;
    const double base = 1.0 / (probability_of(sim.initial_target) * kTargetSpacing);
    for (int i = 0; i < 8; ++i) sim.hashrates.push_back(base * 3.0);
    const auto a = simulate_retargets(sim);
    const auto b = simulate_retargets(sim);
    ASSERT_EQ(a.size(), 8u);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].target, b[i].target);
    // Blocks run fast at first, then difficulty catches up with a constant 3x rate.
    EXPECT_LT(a[0].mean_block_time, 300.0);
    EXPECT_NEAR(a.back().mean_block_time, 600.0, 60.0);
    EXPECT_NEAR(difficulty_of(a.back().target) / difficulty_of(a[0].target), 3.0, 0.3);
}
