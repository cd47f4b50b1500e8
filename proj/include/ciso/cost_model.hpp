#pragma once

#include <array>
#include <bitset>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ciso::cost {

using Rational = boost::multiprecision::cpp_rational;

enum class Improvement : unsigned {
    midstate = 0,         // 1: first compression computed once per 2^32 nonces
    early_reject = 1,     // 2: stop the outer compression after round 60/61
    skip_first_rounds = 2,  // 3: rounds 0..2 of the inner compression shared
    incremental_round3 = 3,  // 4: round 3 becomes two increments
    constant_keys = 4,    // 5: zero and 0x80000000 message words
    hardcoded_kw = 5,     // 6: the two length words folded into K
    precomputed_w16_w17 = 6,  // 7
    incremental_w19 = 7,  // 8
    csa_rounds = 8,       // X: carry-save adders inside the round
    csa_schedule = 9,     // X2: carry-save adders in the message expansion
};

inline constexpr std::size_t kImprovementCount = 10;

inline constexpr std::array<std::string_view, kImprovementCount> kImprovementNames = {
    "1", "2", "3", "4", "5", "6", "7", "8", "X", "X2",
};

/// A dependency-closed set of improvements: 4 needs 3, 8 needs 7.
class ImprovementSet {
public:
    ImprovementSet() = default;

    ImprovementSet(std::initializer_list<Improvement> items) {
        for (Improvement i : items) bits_.set(static_cast<unsigned>(i));
        validate();
    }

    static ImprovementSet from_mask(unsigned mask) {
        ImprovementSet s;
        s.bits_ = std::bitset<kImprovementCount>(mask);
        s.validate();
        return s;
    }

    static bool mask_is_valid(unsigned mask) {
        const std::bitset<kImprovementCount> b(mask);
        return !(b[3] && !b[2]) && !(b[7] && !b[6]);
    }

    static ImprovementSet none() { return {}; }
    static ImprovementSet full() { return from_mask((1u << kImprovementCount) - 1); }

    /// Accepts "none", "full"/"all", or a comma list such as "1,2,3,X".
    static ImprovementSet parse(std::string_view text) {
        if (text == "none" || text.empty()) return none();
        if (text == "full" || text == "all") return full();
        ImprovementSet s;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t comma = text.find(',', pos);
            const std::string_view token = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
            bool matched = false;
            for (std::size_t i = 0; i < kImprovementCount; ++i) {
                if (token == kImprovementNames[i] || (token == "x" && i == 8) || (token == "x2" && i == 9)) {
                    s.bits_.set(i);
                    matched = true;
                }
            }
            if (!matched) throw std::invalid_argument("unknown improvement '" + std::string(token) + "'");
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        s.validate();
        return s;
    }

    bool has(Improvement i) const { return bits_[static_cast<unsigned>(i)]; }
    unsigned mask() const { return static_cast<unsigned>(bits_.to_ulong()); }
    bool is_subset_of(const ImprovementSet& other) const { return (bits_ & ~other.bits_).none(); }

    std::string to_string() const {
        if (bits_.none()) return "none";
        std::string out;
        for (std::size_t i = 0; i < kImprovementCount; ++i) {
            if (!bits_[i]) continue;
            if (!out.empty()) out += ',';
            out += kImprovementNames[i];
        }
        return out;
    }

    friend bool operator==(const ImprovementSet&, const ImprovementSet&) = default;

private:
    void validate() const {
        if (has(Improvement::incremental_round3) && !has(Improvement::skip_first_rounds)) {
            throw std::invalid_argument("improvement 4 requires improvement 3");
        }
        if (has(Improvement::incremental_w19) && !has(Improvement::precomputed_w16_w17)) {
            throw std::invalid_argument("improvement 8 requires improvement 7");
        }
    }

    std::bitset<kImprovementCount> bits_;
};

// ---------------------------------------------------------------------------
// Carry-save adder

template <std::unsigned_integral T>
struct CsaPair {
    T ps;  // partial sum
    T sc;  // shifted carry, already moved up one bit
    friend constexpr bool operator==(const CsaPair&, const CsaPair&) = default;
};

/// 3-to-2 reduction. The carry out of the top bit is dropped, as in
/// arithmetic modulo 2^k, so ps + sc == a + b + c (mod 2^k).
template <std::unsigned_integral T>
constexpr CsaPair<T> csa(T a, T b, T c) {
    const T ps = static_cast<T>(a ^ b ^ c);
    const T majority = static_cast<T>((a & b) | (a & c) | (b & c));
    return {ps, static_cast<T>(majority << 1)};
}

// ---------------------------------------------------------------------------
// Round accounting shared by both models.

struct CompressionWork {
    unsigned full_rounds = 0;        // rounds paying the whole round cost
    unsigned incremental_rounds = 0;  // rounds replaced by two increments
    unsigned schedule_words = 0;     // computed W_t, t >= 16
    unsigned feedforwards = 0;
};

struct NonceWork {
    CompressionWork first, inner, outer;
};

inline NonceWork nonce_work(const ImprovementSet& s) {
    NonceWork w;
    if (!s.has(Improvement::midstate)) w.first = {64, 0, 48, 1};

    w.inner = {64, 0, 48, 1};
    if (s.has(Improvement::skip_first_rounds)) w.inner.full_rounds -= 3;
    if (s.has(Improvement::incremental_round3)) {
        w.inner.full_rounds -= 1;
        w.inner.incremental_rounds = 1;
    }

    w.outer = {64, 0, 48, 1};
    if (s.has(Improvement::early_reject)) {
        w.outer.full_rounds -= 3;
        w.outer.schedule_words -= 3;
    }
    return w;
}

/// Compression-function equivalents per nonce, exact. The 2^-32 amortized
/// midstate cost is reported by amortized_midstate_cost().
inline Rational compression_equivalents(const ImprovementSet& s) {
    const NonceWork w = nonce_work(s);
    const unsigned rounds = w.first.full_rounds + w.inner.full_rounds + w.outer.full_rounds;
    return Rational(rounds, 64);
}

inline Rational amortized_midstate_cost(const ImprovementSet& s) {
    if (!s.has(Improvement::midstate)) return Rational(0);
    return Rational(boost::multiprecision::cpp_int(1), boost::multiprecision::cpp_int(1) << 32);
}

inline Rational savings_fraction_exact(const ImprovementSet& s) { return 1 - compression_equivalents(s) / 3; }

inline double savings_fraction(const ImprovementSet& s) { return savings_fraction_exact(s).convert_to<double>(); }

// ---------------------------------------------------------------------------
// Full-adder model

struct AdderModel {
    unsigned per_round = 7;
    unsigned per_round_csa = 2;
    unsigned per_incremental_round = 0;  // two +1 incrementers: half adders only
    unsigned per_schedule_word = 3;
    unsigned per_schedule_word_csa = 1;
    unsigned per_feedforward = 8;
    unsigned saved_constant_keys = 18;
    unsigned saved_hardcoded_kw = 2;
    unsigned saved_w16_w17 = 2;
    unsigned saved_w19 = 1;
};

inline std::int64_t adder_count(const ImprovementSet& s, const AdderModel& m = {}) {
    const unsigned round_cost = s.has(Improvement::csa_rounds) ? m.per_round_csa : m.per_round;
    const unsigned word_cost = s.has(Improvement::csa_schedule) ? m.per_schedule_word_csa : m.per_schedule_word;
    const NonceWork w = nonce_work(s);

    std::int64_t total = 0;
    for (const CompressionWork& c : {w.first, w.inner, w.outer}) {
        total += std::int64_t{c.full_rounds} * round_cost;
        total += std::int64_t{c.incremental_rounds} * m.per_incremental_round;
        total += std::int64_t{c.schedule_words} * word_cost;
        total += std::int64_t{c.feedforwards} * m.per_feedforward;
    }
    if (s.has(Improvement::constant_keys)) total -= m.saved_constant_keys;
    if (s.has(Improvement::hardcoded_kw)) total -= m.saved_hardcoded_kw;
    if (s.has(Improvement::precomputed_w16_w17)) total -= m.saved_w16_w17;
    if (s.has(Improvement::incremental_w19)) total -= m.saved_w19;
    return total;
}

// ---------------------------------------------------------------------------
// Reports

struct CostReport {
    ImprovementSet improvements;
    Rational compressions_per_nonce;
    Rational amortized_extra;
    std::int64_t adders_per_nonce = 0;
    double savings_fraction = 0.0;
};

inline CostReport cost_report(const ImprovementSet& s) {
    return {s, compression_equivalents(s), amortized_midstate_cost(s), adder_count(s), savings_fraction(s)};
}

inline std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

inline std::string fixed6(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << v;
    return os.str();
}

/// key=value lines, one per field.
inline std::string to_kv(const CostReport& r) {
    std::ostringstream os;
    os << "improvements=" << r.improvements.to_string() << '\n';
    for (std::size_t i = 0; i < kImprovementCount; ++i) {
        os << "improvement_" << kImprovementNames[i] << '='
           << (r.improvements.has(static_cast<Improvement>(i)) ? 1 : 0) << '\n';
    }
    os << "compressions_per_nonce=" << rational_string(r.compressions_per_nonce) << '\n';
    os << "compressions_per_nonce_decimal=" << fixed6(r.compressions_per_nonce.convert_to<double>()) << '\n';
    os << "amortized_extra=" << rational_string(r.amortized_extra) << '\n';
    os << "adders_per_nonce=" << r.adders_per_nonce << '\n';
    os << "savings_fraction=" << fixed6(r.savings_fraction) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Energy

struct EnergyReport {
    double power_mw = 0;
    double mwh_per_day = 0;
    double cost_per_day = 0;
    double savings_per_day = 0;
    double savings_mwh_per_day = 0;
};

namespace detail {
inline void require_positive(double v, const char* what) {
    if (!(v > 0)) throw std::invalid_argument(std::string(what) + " must be positive");
}
inline void require_fraction(double f) {
    if (!(f >= 0 && f < 1)) throw std::invalid_argument("savings fraction must lie in [0, 1)");
}
}  // namespace detail

/// Daily consumption scenario from a fleet hash rate. Power is in watts per GH/s.
inline EnergyReport energy_savings(double watts_per_ghs, double network_rate_ghs, double price_per_kwh,
                                   double fraction) {
    detail::require_positive(watts_per_ghs, "power per GH/s");
    detail::require_positive(network_rate_ghs, "network rate");
    detail::require_positive(price_per_kwh, "electricity price");
    detail::require_fraction(fraction);
    EnergyReport r;
    r.power_mw = watts_per_ghs * network_rate_ghs / 1e6;
    r.mwh_per_day = r.power_mw * 24.0;
    r.cost_per_day = r.mwh_per_day * 1000.0 * price_per_kwh;
    r.savings_per_day = r.cost_per_day * fraction;
    r.savings_mwh_per_day = r.mwh_per_day * fraction;
    return r;
}

/// Same estimate starting from a reported daily consumption.
inline EnergyReport energy_savings_from_daily(double mwh_per_day, double price_per_kwh, double fraction) {
    detail::require_positive(mwh_per_day, "daily consumption");
    detail::require_positive(price_per_kwh, "electricity price");
    detail::require_fraction(fraction);
    EnergyReport r;
    r.mwh_per_day = mwh_per_day;
    r.power_mw = mwh_per_day / 24.0;
    r.cost_per_day = mwh_per_day * 1000.0 * price_per_kwh;
    r.savings_per_day = r.cost_per_day * fraction;
    r.savings_mwh_per_day = mwh_per_day * fraction;
    return r;
}

/// Published scenarios; the quoted savings are kept alongside the derived ones.
struct DailyScenario {
    std::string_view name;
    double mwh_per_day;
    double cost_per_day;
    double quoted_savings_mwh;
    double quoted_savings_usd;
    double price_per_kwh() const { return cost_per_day / (mwh_per_day * 1000.0); }
};

inline constexpr DailyScenario kApril2013{"april-2013", 982.0, 150000.0, 50.0, 75000.0};

struct FleetScenario {
    std::string_view name;
    double network_rate_ghs;
    double watts_per_ghs;
};

inline constexpr FleetScenario kOctober2013{"october-2013", 3.0e6, 3.2};

}  // namespace ciso::cost
