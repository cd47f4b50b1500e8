#pragma once

#include <cstdint>

#include "ciso/cost_model.hpp"

namespace tally {

// Round-by-round full-adder tally: list what each compression executes, then price it.
inline std::int64_t adders(const ciso::cost::ImprovementSet& s) {
    using I = ciso::cost::Improvement;
    const int round = s.has(I::csa_rounds) ? 2 : 7;
    const int word = s.has(I::csa_schedule) ? 1 : 3;
    std::int64_t total = 0;
    auto compression = [&](int first_round, int last_round, int last_word, bool incremental_r3) {
        for (int t = first_round; t <= last_round; ++t) {
            if (!(incremental_r3 && t == 3)) total += round;
        }
        for (int t = 16; t <= last_word; ++t) total += word;
        total += 8;
    };
    if (!s.has(I::midstate)) compression(0, 63, 63, false);
    compression(s.has(I::skip_first_rounds) ? 3 : 0, 63, 63, s.has(I::incremental_round3));
    compression(0, s.has(I::early_reject) ? 60 : 63, s.has(I::early_reject) ? 60 : 63, false);
    if (s.has(I::constant_keys)) total -= 18;
    if (s.has(I::hardcoded_kw)) total -= 2;
    if (s.has(I::precomputed_w16_w17)) total -= 2;
    if (s.has(I::incremental_w19)) total -= 1;
    return total;
}

}  // namespace tally
