#pragma once

// Optimized double-SHA-256 nonce scanner.
//
// Throughout this header "nonce" means the value of message word 3 of the
// second compression, i.e. the big-endian reading of header bytes 76..79.
// The little-endian header field is word_to_nonce(nonce). Scanning in word
// order is what makes the round-3 and W19 updates a plain +1.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ciso/header.hpp"
#include "ciso/sha256.hpp"

namespace ciso::kernel {

using sha256::State;

inline constexpr Word32 kPaddingWord = 0x80000000;
inline constexpr Word32 kHeaderTailLengthBits = 640;  // block 2 of the 80-byte header
inline constexpr Word32 kDigestLengthBits = 256;      // the single block of the outer hash

/// 2^32-complements of IV words 7 and 6: the E-register values at rounds 60
/// and 61 that turn into zero digest words 7 and 6 after the feedforward.
inline constexpr Word32 kRejectE60 = 0u - sha256::kInitialState[7];
inline constexpr Word32 kRejectE61 = 0u - sha256::kInitialState[6];
static_assert(kRejectE60 == 0xA41F32E7 && kRejectE61 == 0xE07C2655);

constexpr std::pair<Word32, Word32> rejection_constants() { return {kRejectE60, kRejectE61}; }

struct Midstate {
    State state;
    friend bool operator==(const Midstate&, const Midstate&) = default;
};

inline Midstate compute_midstate(std::span<const std::uint8_t> header_prefix) {
    if (header_prefix.size() != 64) {
        throw std::invalid_argument("midstate needs exactly 64 header bytes, got " +
                                    std::to_string(header_prefix.size()));
    }
    return {sha256::compress(sha256::kInitialState, sha256::load_block(header_prefix.first<64>()))};
}

/// Why a round's K+W sum could be hard-coded.
enum class FoldKind {
    zero_word,       // W_t = 0, so KW_t = K_t
    padding_word,    // W_t = 0x80000000, a single bit flip
    length_word,     // the constant bit-length word
    schedule_word,   // W16/W17, nonce independent
};

struct KwFold {
    int compression;  // 2 = nonce-bearing inner compression, 3 = outer hash
    int round;
    FoldKind kind;
    Word32 value;
};

/// Everything about a work item that does not depend on the nonce.
struct PreparedWork {
    Midstate midstate;
    sha256::MessageBlock block{};  // second-compression message, word 3 left at zero
    State state_r3_base;           // after rounds 0, 1, 2
    State round3_base;             // after round 3 with nonce word 0
    Word32 w16 = 0;
    Word32 w17 = 0;
    Word32 w19_base = 0;  // W19 with nonce word 0
    std::array<Word32, 64> kw_second{};
    std::array<Word32, 16> kw_third{};
    std::vector<KwFold> kw_folded;
    Word32 reject_e60 = kRejectE60;
    Word32 reject_e61 = kRejectE61;
    Target256 target;
    Hash32 target_bytes{};  // target in digest byte order, for the byte-wise compare

    bool early_exit_sound() const { return target < pow2_target(224); }
    bool second_stage_sound() const { return target < pow2_target(192); }
};

namespace detail {

// The round as it runs in the kernel: K_t + W_t arrives pre-added.
inline void round_kw(State& s, Word32 kw) {
    const Word32 t1 = s[7] + sha256::big_sigma1(s[4]) + sha256::ch(s[4], s[5], s[6]) + kw;
    const Word32 t2 = sha256::big_sigma0(s[0]) + sha256::maj(s[0], s[1], s[2]);
    s[7] = s[6];
    s[6] = s[5];
    s[5] = s[4];
    s[4] = s[3] + t1;
    s[3] = s[2];
    s[2] = s[1];
    s[1] = s[0];
    s[0] = t1 + t2;
}

inline constexpr std::array<Word32, 16> third_block_tail() {
    std::array<Word32, 16> w{};
    w[8] = kPaddingWord;
    w[15] = kDigestLengthBits;
    return w;
}

// Rounds 8..15 of the outer compression only ever see constant words.
inline constexpr std::array<Word32, 16> third_kw() {
    std::array<Word32, 16> kw{};
    constexpr auto tail = third_block_tail();
    for (int t = 8; t < 16; ++t) kw[t] = sha256::kRoundConstants[t] + tail[t];
    return kw;
}

// hash_to_int(digest) < target, compared most significant byte first.
inline bool below_target(const Hash32& digest, const Hash32& target_bytes) {
    for (std::size_t i = digest.size(); i-- > 0;) {
        if (digest[i] != target_bytes[i]) return digest[i] < target_bytes[i];
    }
    return false;
}

}  // namespace detail

/// `header_tail` is header bytes 64..75: merkle-root tail, timestamp, nbits.
inline PreparedWork prepare_work(const Midstate& midstate, std::span<const std::uint8_t> header_tail,
                                 const Target256& target) {
    using namespace sha256;
    if (header_tail.size() != 12) {
        throw std::invalid_argument("header tail must be 12 bytes, got " + std::to_string(header_tail.size()));
    }
    if (target == 0) throw std::domain_error("zero target");

    PreparedWork w;
    w.midstate = midstate;
    w.target = target;
    w.target_bytes = int_to_hash(target);

    w.block[0] = load_be32(header_tail.data());
    w.block[1] = load_be32(header_tail.data() + 4);
    w.block[2] = load_be32(header_tail.data() + 8);
    w.block[3] = 0;
    w.block[4] = kPaddingWord;
    w.block[15] = kHeaderTailLengthBits;

    State s = midstate.state;
    for (int t = 0; t < 3; ++t) s = round(s, w.block[t], kRoundConstants[t]);
    w.state_r3_base = s;
    w.round3_base = round(s, 0, kRoundConstants[3]);

    // W14 = W9 = 0 and W15 = W10 = 0, so both collapse to two terms.
    w.w16 = sigma1(w.block[14]) + w.block[9] + sigma0(w.block[1]) + w.block[0];
    w.w17 = sigma1(w.block[15]) + w.block[10] + sigma0(w.block[2]) + w.block[1];
    w.w19_base = sigma1(w.w17) + w.block[12] + sigma0(w.block[4]);

    for (int t = 4; t < 16; ++t) {
        w.kw_second[t] = kRoundConstants[t] + w.block[t];
        const FoldKind kind = t == 4 ? FoldKind::padding_word : t == 15 ? FoldKind::length_word : FoldKind::zero_word;
        w.kw_folded.push_back({2, t, kind, w.kw_second[t]});
    }
    w.kw_second[16] = kRoundConstants[16] + w.w16;
    w.kw_second[17] = kRoundConstants[17] + w.w17;
    w.kw_folded.push_back({2, 16, FoldKind::schedule_word, w.kw_second[16]});
    w.kw_folded.push_back({2, 17, FoldKind::schedule_word, w.kw_second[17]});

    w.kw_third = detail::third_kw();
    for (int t = 8; t < 16; ++t) {
        const FoldKind kind = t == 8 ? FoldKind::padding_word : t == 15 ? FoldKind::length_word : FoldKind::zero_word;
        w.kw_folded.push_back({3, t, kind, w.kw_third[t]});
    }
    return w;
}

inline PreparedWork prepare_work(const BlockHeader& header, const Target256& target) {
    const HeaderBytes bytes = serialize_header(header);
    const std::span<const std::uint8_t> all{bytes};
    return prepare_work(compute_midstate(all.first(64)), all.subspan(64, 12), target);
}

/// Per-scanner mutable state: nonce, post-round-3 registers and W19.
struct NonceCursor {
    Word32 nonce = 0;
    State after_round3;
    Word32 w19 = 0;
};

inline NonceCursor start_cursor(const PreparedWork& work, Word32 nonce) {
    NonceCursor c{nonce, work.round3_base, work.w19_base + nonce};
    // Nonce word enters T1 exactly once, which feeds both A and E.
    c.after_round3[0] += nonce;
    c.after_round3[4] += nonce;
    return c;
}

enum class StepStatus { advanced, range_exhausted };

/// Advances to the next nonce with three 32-bit increments. At 0xFFFFFFFF
/// the cursor is left unchanged: new work (another merkle root) is needed.
inline StepStatus step_nonce(NonceCursor& c) {
    if (c.nonce == 0xFFFFFFFFu) return StepStatus::range_exhausted;
    ++c.nonce;
    ++c.after_round3[0];
    ++c.after_round3[4];
    ++c.w19;
    return StepStatus::advanced;
}

/// Rounds 4..63 plus feedforward of the inner compression: the first hash H1.
inline State inner_hash(const PreparedWork& work, const NonceCursor& c) {
    using namespace sha256;
    std::array<Word32, 64> w;
    for (int t = 0; t < 16; ++t) w[t] = work.block[t];
    w[3] = c.nonce;
    w[16] = work.w16;
    w[17] = work.w17;
    w[18] = sigma1(w[16]) + w[11] + sigma0(w[3]) + w[2];
    w[19] = c.w19;
    for (int t = 20; t < 64; ++t) w[t] = sigma1(w[t - 2]) + w[t - 7] + sigma0(w[t - 15]) + w[t - 16];

    State s = c.after_round3;
    for (int t = 4; t < 18; ++t) detail::round_kw(s, work.kw_second[t]);
    for (int t = 18; t < 64; ++t) detail::round_kw(s, kRoundConstants[t] + w[t]);
    for (int i = 0; i < 8; ++i) s[i] += work.midstate.state[i];
    return s;
}

/// Outer compression state for the early-exit path; rounds run on demand.
class OuterCompression {
public:
    explicit OuterCompression(const PreparedWork& work, const State& inner) : work_(work) {
        constexpr auto tail = detail::third_block_tail();
        for (int t = 0; t < 8; ++t) w_[t] = inner[t];
        for (int t = 8; t < 16; ++t) w_[t] = tail[t];
        s_ = sha256::kInitialState;
    }

    /// Runs rounds up to and including `last`.
    void run_through(int last) {
        using namespace sha256;
        for (; next_ <= last; ++next_) {
            const int t = next_;
            Word32 kw;
            if (t < 8) {
                kw = kRoundConstants[t] + w_[t];
            } else if (t < 16) {
                kw = work_.kw_third[t];
            } else {
                w_[t] = sigma1(w_[t - 2]) + w_[t - 7] + sigma0(w_[t - 15]) + w_[t - 16];
                kw = kRoundConstants[t] + w_[t];
            }
            detail::round_kw(s_, kw);
        }
    }

    Word32 e() const { return s_[4]; }

    Hash32 finish() {
        run_through(63);
        State out = s_;
        for (int i = 0; i < 8; ++i) out[i] += sha256::kInitialState[i];
        return sha256::to_digest(out);
    }

private:
    const PreparedWork& work_;
    std::array<Word32, 64> w_{};
    State s_;
    int next_ = 0;
};

/// Full double hash of one nonce through the optimized inner path.
inline Hash32 kernel_digest(const PreparedWork& work, Word32 nonce) {
    const NonceCursor c = start_cursor(work, nonce);
    OuterCompression outer(work, inner_hash(work, c));
    return outer.finish();
}

enum class ScanMode {
    automatic,   // early exit whenever the target allows it
    early_exit,  // round-60/61 rejection; target must be below 2^224
    generic,     // all 64 outer rounds, any target
};

struct Solution {
    Word32 nonce = 0;
    Hash32 digest{};
    std::uint32_t header_nonce() const { return word_to_nonce(nonce); }
};

struct ScanResult {
    std::optional<Solution> found;
    std::uint64_t nonces_tried = 0;
    std::uint64_t rounds_executed = 0;
    std::uint64_t stage1_survivors = 0;  // E after round 60 matched
    std::uint64_t stage2_survivors = 0;  // went on to rounds 62..63 and the full compare
    bool early_exit = false;

    double compressions_equivalent() const {
        return nonces_tried == 0 ? 0.0 : static_cast<double>(rounds_executed) / 64.0 / static_cast<double>(nonces_tried);
    }

    /// Folds another subrange's result in; the smaller nonce wins.
    void merge(const ScanResult& other) {
        if (other.found && (!found || other.found->nonce < found->nonce)) found = other.found;
        nonces_tried += other.nonces_tried;
        rounds_executed += other.rounds_executed;
        stage1_survivors += other.stage1_survivors;
        stage2_survivors += other.stage2_survivors;
        early_exit = early_exit || other.early_exit;
    }
};

// Per-nonce round accounting. Round 3 of the inner compression is the
// incremental update; it is charged as a round so the inner cost is 61.
inline constexpr std::uint64_t kInnerRounds = 61;
inline constexpr std::uint64_t kOuterEarlyRounds = 61;  // rounds 0..60
inline constexpr std::uint64_t kOuterFullRounds = 64;

/// Scans nonces lo..hi inclusive and stops at the first (smallest) hit.
inline ScanResult scan(const PreparedWork& work, Word32 nonce_lo, Word32 nonce_hi,
                       ScanMode mode = ScanMode::automatic) {
    if (nonce_lo > nonce_hi) throw std::invalid_argument("empty nonce range");
    const bool early = mode == ScanMode::early_exit || (mode == ScanMode::automatic && work.early_exit_sound());
    if (early && !work.early_exit_sound()) throw std::domain_error("filter unsound for target");
    const bool second_stage = early && work.second_stage_sound();

    ScanResult r;
    r.early_exit = early;
    NonceCursor c = start_cursor(work, nonce_lo);
    for (;;) {
        ++r.nonces_tried;
        OuterCompression outer(work, inner_hash(work, c));
        bool complete = true;
        if (early) {
            outer.run_through(60);
            r.rounds_executed += kInnerRounds + kOuterEarlyRounds;
            if (outer.e() != work.reject_e60) {
                complete = false;
            } else {
                ++r.stage1_survivors;
                outer.run_through(61);
                r.rounds_executed += 1;
                if (second_stage && outer.e() != work.reject_e61) complete = false;
            }
            if (complete) {
                ++r.stage2_survivors;
                r.rounds_executed += 2;
            }
        } else {
            r.rounds_executed += kInnerRounds + kOuterFullRounds;
        }
        if (complete) {
            const Hash32 digest = outer.finish();
            if (detail::below_target(digest, work.target_bytes)) {
                r.found = Solution{c.nonce, digest};
                return r;
            }
        }
        if (c.nonce == nonce_hi || step_nonce(c) == StepStatus::range_exhausted) break;
    }
    return r;
}

}  // namespace ciso::kernel
