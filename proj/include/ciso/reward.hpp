#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ciso/header.hpp"

namespace ciso::reward {

using boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Height = std::uint64_t;
using Satoshis = std::uint64_t;

inline constexpr Satoshis kSatoshisPerBtc = 100'000'000;
inline constexpr Satoshis kInitialReward = 50 * kSatoshisPerBtc;
inline constexpr Height kHalvingInterval = 210'000;
inline constexpr Height kDecrementPeriod = 336;  // gcd(210000, 2016)
inline constexpr Height kReformHeight = 420'000;
inline constexpr Height kReformPeriodIndex = kReformHeight / kDecrementPeriod;  // 1250
inline constexpr Satoshis kReformBaseReward = 25 * kSatoshisPerBtc;
inline constexpr Satoshis kCapSatoshis = 21'000'000 * kSatoshisPerBtc;
inline constexpr std::int64_t kDecayNumerator = 624;
inline constexpr std::int64_t kDecayDenominator = 625;

static_assert(kHalvingInterval % kDecrementPeriod == 0 && kHalvingInterval / kDecrementPeriod == 625);
static_assert(kReformHeight % kDecrementPeriod == 0);

// Past this many decrement periods 25 * (624/625)^j is far below half a satoshi.
inline constexpr Height kProposedZeroPeriods = 20'000;

enum class ScheduleKind { original, proposed };

enum class OriginalRounding {
    exact_dyadic,   // 50 * 2^-f rounded to the nearest satoshi, zero once f > 33
    floor_integer,  // integer right shift, as deployed
};

inline std::string to_string(ScheduleKind k) { return k == ScheduleKind::original ? "original" : "proposed"; }

inline ScheduleKind parse_schedule(std::string_view s) {
    if (s == "original" || s == "old") return ScheduleKind::original;
    if (s == "proposed" || s == "new") return ScheduleKind::proposed;
    throw std::invalid_argument("unknown schedule '" + std::string(s) + "'");
}

/// Nearest integer to num/den, ties rounded up.
inline cpp_int round_half_up(const cpp_int& num, const cpp_int& den) { return (2 * num + den) / (2 * den); }

inline Rational btc(const Rational& satoshis) { return satoshis / kSatoshisPerBtc; }

inline double to_btc_double(Satoshis s) { return static_cast<double>(s) / static_cast<double>(kSatoshisPerBtc); }

// ---------------------------------------------------------------------------
// Original halving schedule

inline Rational reward_original_exact(Height t) {
    const Height f = t / kHalvingInterval;
    return Rational(cpp_int(kInitialReward), cpp_int(1) << f);
}

inline Satoshis reward_original(Height t, OriginalRounding mode = OriginalRounding::exact_dyadic) {
    const Height f = t / kHalvingInterval;
    if (mode == OriginalRounding::floor_integer) return f >= 64 ? 0 : kInitialReward >> f;
    if (f > 33) return 0;
    return static_cast<Satoshis>(round_half_up(cpp_int(kInitialReward), cpp_int(1) << f));
}

// ---------------------------------------------------------------------------
// Proposed geometric schedule

/// Satoshi value of period j after the reform, as an unnormalized fraction.
/// gcd(624, 625) = 1, so stepping j is one multiply on each side.
class ProposedPeriods {
public:
    explicit ProposedPeriods(Height first_period = 0)
        : num_(cpp_int(kReformBaseReward) * boost::multiprecision::pow(cpp_int(kDecayNumerator), static_cast<unsigned>(first_period))),
          den_(boost::multiprecision::pow(cpp_int(kDecayDenominator), static_cast<unsigned>(first_period))),
          period_(first_period) {}

    Height period() const { return period_; }
    Satoshis rounded() const { return static_cast<Satoshis>(round_half_up(num_, den_)); }
    Rational exact() const { return Rational(num_, den_); }
    const cpp_int& numerator() const { return num_; }
    const cpp_int& denominator() const { return den_; }

    void advance() {
        num_ *= kDecayNumerator;
        den_ *= kDecayDenominator;
        ++period_;
    }

private:
    cpp_int num_;
    cpp_int den_;
    Height period_;
};

inline Rational reward_proposed_exact(Height t) {
    if (t < kReformHeight) return Rational(t < kHalvingInterval ? kInitialReward : kReformBaseReward);
    const Height j = t / kDecrementPeriod - kReformPeriodIndex;
    if (j > kProposedZeroPeriods * 4) throw std::out_of_range("height too far past the reform for exact evaluation");
    return ProposedPeriods(j).exact();
}

inline Satoshis reward_proposed(Height t) {
    if (t < kHalvingInterval) return kInitialReward;
    if (t < kReformHeight) return kReformBaseReward;
    const Height j = t / kDecrementPeriod - kReformPeriodIndex;
    if (j > kProposedZeroPeriods) return 0;
    return ProposedPeriods(j).rounded();
}

inline Satoshis reward(Height t, ScheduleKind kind, OriginalRounding mode = OriginalRounding::exact_dyadic) {
    return kind == ScheduleKind::original ? reward_original(t, mode) : reward_proposed(t);
}

// ---------------------------------------------------------------------------
// Supply

struct SupplyReport {
    Height height = 0;
    cpp_int cumulative_satoshis;       // sum of rounded per-block rewards, heights 0..t-1
    std::optional<Rational> exact_btc;  // sum of unrounded rewards; absent when too far out
    cpp_int cap_delta_satoshis;        // cumulative - 21M BTC
};

namespace detail {

// Heights [0, min(t, reform)) are identical for both schedules.
inline void add_halving_eras(Height t, Height era_limit, OriginalRounding mode, cpp_int& rounded, Rational& exact) {
    for (Height f = 0;; ++f) {
        const Height start = f * kHalvingInterval;
        if (start >= t || start >= era_limit) break;
        const Height end = std::min({t, era_limit, start + kHalvingInterval});
        const Height blocks = end - start;
        rounded += cpp_int(blocks) * reward_original(start, mode);
        exact += Rational(blocks) * reward_original_exact(start);
        if (f > 80) break;
    }
}

}  // namespace detail

inline SupplyReport cumulative_supply(Height t, ScheduleKind kind,
                                      OriginalRounding mode = OriginalRounding::exact_dyadic) {
    SupplyReport r;
    r.height = t;
    Rational exact = 0;
    if (kind == ScheduleKind::original) {
        detail::add_halving_eras(t, ~Height{0}, mode, r.cumulative_satoshis, exact);
        r.exact_btc = btc(exact);
    } else {
        detail::add_halving_eras(t, kReformHeight, mode, r.cumulative_satoshis, exact);
        if (t > kReformHeight) {
            const Height blocks_after = t - kReformHeight;
            const Height full_periods = blocks_after / kDecrementPeriod;
            const Height partial = blocks_after % kDecrementPeriod;
            for (ProposedPeriods p; p.period() <= full_periods; p.advance()) {
                const Satoshis each = p.rounded();
                if (each == 0) break;
                const Height blocks = p.period() < full_periods ? kDecrementPeriod : partial;
                r.cumulative_satoshis += cpp_int(blocks) * each;
            }
            if (full_periods <= kProposedZeroPeriods * 4) {
                // 336 * 25 * sum_{j<J} q^j = 336 * 25 * 625 * (1 - q^J), plus the partial window.
                const ProposedPeriods tail(full_periods);
                const Rational qj = tail.exact() / kReformBaseReward;
                exact += Rational(kDecrementPeriod * kReformBaseReward * kDecayDenominator) * (1 - qj);
                exact += Rational(partial) * tail.exact();
                r.exact_btc = btc(exact);
            }
        } else {
            r.exact_btc = btc(exact);
        }
    }
    r.cap_delta_satoshis = r.cumulative_satoshis - cpp_int(kCapSatoshis);
    return r;
}

struct EmissionTotals {
    Rational closed_form_btc;
    cpp_int iterated_satoshis;
    cpp_int delta_satoshis;  // iterated - 21M BTC
    Height last_rewarded_height = 0;
};

/// Closed-form limit of the 210000-block geometric series: 210000 * 50 * 1/(1 - 1/2).
inline Rational original_closed_form() { return Rational(kHalvingInterval * 50) / (1 - Rational(1, 2)); }

/// 15.75M up to the reform, then 336 * 25 * 1/(1 - 624/625).
inline Rational proposed_closed_form() {
    const Rational before = Rational(kHalvingInterval * 50) + Rational(kHalvingInterval * 25);
    return before + Rational(kDecrementPeriod * 25) / (1 - Rational(kDecayNumerator, kDecayDenominator));
}

inline EmissionTotals total_emission(ScheduleKind kind, OriginalRounding mode = OriginalRounding::exact_dyadic) {
    EmissionTotals e;
    if (kind == ScheduleKind::original) {
        e.closed_form_btc = original_closed_form();
        for (Height f = 0; f < 80; ++f) {
            const Satoshis r = reward_original(f * kHalvingInterval, mode);
            if (r == 0) break;
            e.iterated_satoshis += cpp_int(kHalvingInterval) * r;
            e.last_rewarded_height = (f + 1) * kHalvingInterval - 1;
        }
    } else {
        e.closed_form_btc = proposed_closed_form();
        e.iterated_satoshis = cpp_int(kHalvingInterval) * kInitialReward + cpp_int(kHalvingInterval) * kReformBaseReward;
        for (ProposedPeriods p;; p.advance()) {
            const Satoshis r = p.rounded();
            if (r == 0) break;
            e.iterated_satoshis += cpp_int(kDecrementPeriod) * r;
            e.last_rewarded_height = kReformHeight + (p.period() + 1) * kDecrementPeriod - 1;
        }
    }
    e.delta_satoshis = e.iterated_satoshis - cpp_int(kCapSatoshis);
    return e;
}

/// First height where the proposed reward (before rounding) drops below the original one.
inline Height first_crossover() {
    for (ProposedPeriods p;; p.advance()) {
        const Height t = kReformHeight + p.period() * kDecrementPeriod;
        const Height f = t / kHalvingInterval;
        // num/den < 5e9 / 2^f  <=>  num * 2^f < 5e9 * den
        if ((p.numerator() << f) < cpp_int(kInitialReward) * p.denominator()) return t;
        if (p.period() > kProposedZeroPeriods) throw std::logic_error("no crossover found");
    }
}

// ---------------------------------------------------------------------------
// Comparison table

struct TableRow {
    Height height = 0;
    Satoshis old_sat = 0;
    Satoshis new_sat = 0;
    double old_btc() const { return to_btc_double(old_sat); }
    double new_btc() const { return to_btc_double(new_sat); }
};

inline constexpr std::array<Height, 8> kComparisonHeights = {105000, 210000, 420000, 420336,
                                                             525000, 630000, 840000, 1050000};

/// Values as originally published for kComparisonHeights, shown next to the computed ones.
inline constexpr std::array<double, 8> kPublishedOld = {50.0, 25.0, 12.5, 12.5, 12.5, 6.25, 3.125, 1.5625};
inline constexpr std::array<double, 8> kPublishedNew = {50.0, 25.0, 25.0, 24.97, 15.16, 9.18, 3.378, 1.2417};

inline std::vector<TableRow> schedule_table(std::span<const Height> heights = kComparisonHeights,
                                            OriginalRounding mode = OriginalRounding::exact_dyadic) {
    std::vector<TableRow> rows;
    rows.reserve(heights.size());
    for (Height t : heights) rows.push_back({t, reward_original(t, mode), reward_proposed(t)});
    return rows;
}

// ---------------------------------------------------------------------------
// Difficulty retargeting

inline constexpr std::int64_t kRetargetInterval = 2016;
inline constexpr std::int64_t kTargetSpacing = 600;
inline constexpr std::uint32_t kDefaultClamp = 4;

/// new = old * actual / expected, optionally kept within [old / clamp, old * clamp],
/// saturated at 2^256 - 1.
inline Target256 retarget(const Target256& old_target, std::int64_t actual_span, std::int64_t expected_span,
                          std::optional<std::uint32_t> clamp = kDefaultClamp) {
    if (actual_span <= 0 || expected_span <= 0) throw std::invalid_argument("retarget spans must be positive");
    if (clamp && *clamp == 0) throw std::invalid_argument("clamp factor must be positive");
    const cpp_int old = old_target;
    cpp_int next = old * actual_span / expected_span;
    if (clamp) {
        const cpp_int lo = old / *clamp;
        const cpp_int hi = old * *clamp;
        if (next < lo) next = lo;
        if (next > hi) next = hi;
    }
    const cpp_int max = (cpp_int(1) << 256) - 1;
    if (next > max) next = max;
    if (next == 0) next = 1;
    return static_cast<Target256>(next);
}

struct EpochRecord {
    int epoch = 0;
    Target256 target;
    double hashrate = 0;         // hashes per second during this epoch
    double actual_span = 0;      // seconds for the epoch's blocks
    double mean_block_time = 0;
};

struct RetargetSimulation {
    Target256 initial_target;
    std::vector<double> hashrates;  // one entry per epoch, hashes per second
    std::uint64_t seed = 0;
    std::optional<std::uint32_t> clamp = kDefaultClamp;
};

/// Block times are exponential with rate hashrate * target / 2^256; an
/// epoch's span is their sum, drawn as a single gamma variate.
inline std::vector<EpochRecord> simulate_retargets(const RetargetSimulation& sim) {
    if (sim.initial_target == 0) throw std::domain_error("zero target");
    std::mt19937_64 rng(sim.seed);
    std::vector<EpochRecord> out;
    Target256 target = sim.initial_target;
    for (std::size_t i = 0; i < sim.hashrates.size(); ++i) {
        const double rate = sim.hashrates[i];
        if (!(rate > 0)) throw std::invalid_argument("hash rate must be positive");
        const double blocks_per_second = rate * probability_of(target);
        std::gamma_distribution<double> span_dist(static_cast<double>(kRetargetInterval), 1.0 / blocks_per_second);
        const double span = span_dist(rng);
        out.push_back({static_cast<int>(i), target, rate, span, span / kRetargetInterval});
        const auto span_seconds = std::max<std::int64_t>(1, static_cast<std::int64_t>(span + 0.5));
        target = retarget(target, span_seconds, kRetargetInterval * kTargetSpacing, sim.clamp);
    }
    return out;
}

}  // namespace ciso::reward
