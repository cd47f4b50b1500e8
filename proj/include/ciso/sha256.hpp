#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ciso {

using Word32 = std::uint32_t;

namespace sha256 {

/// Chaining state, registers a..h in round-column order.
struct State {
    std::array<Word32, 8> w{};

    constexpr Word32& operator[](std::size_t i) { return w[i]; }
    constexpr Word32 operator[](std::size_t i) const { return w[i]; }
    friend constexpr bool operator==(const State&, const State&) = default;
};

using MessageBlock = std::array<Word32, 16>;
using MessageSchedule = std::array<Word32, 64>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr std::array<Word32, 64> kRoundConstants = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
};

inline constexpr State kInitialState{{
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19,
}};

// Message-schedule functions.
constexpr Word32 sigma0(Word32 x) { return std::rotr(x, 7) ^ std::rotr(x, 18) ^ (x >> 3); }
constexpr Word32 sigma1(Word32 x) { return std::rotr(x, 17) ^ std::rotr(x, 19) ^ (x >> 10); }

// Round functions.
constexpr Word32 big_sigma0(Word32 x) { return std::rotr(x, 2) ^ std::rotr(x, 13) ^ std::rotr(x, 22); }
constexpr Word32 big_sigma1(Word32 x) { return std::rotr(x, 6) ^ std::rotr(x, 11) ^ std::rotr(x, 25); }
constexpr Word32 ch(Word32 e, Word32 f, Word32 g) { return (e & f) ^ (~e & g); }
constexpr Word32 maj(Word32 a, Word32 b, Word32 c) { return (a & b) ^ (a & c) ^ (b & c); }

constexpr Word32 load_be32(const std::uint8_t* p) {
    return (Word32{p[0]} << 24) | (Word32{p[1]} << 16) | (Word32{p[2]} << 8) | Word32{p[3]};
}

constexpr void store_be32(std::uint8_t* p, Word32 v) {
    p[0] = static_cast<std::uint8_t>(v >> 24);
    p[1] = static_cast<std::uint8_t>(v >> 16);
    p[2] = static_cast<std::uint8_t>(v >> 8);
    p[3] = static_cast<std::uint8_t>(v);
}

constexpr MessageBlock load_block(std::span<const std::uint8_t, 64> bytes) {
    MessageBlock block{};
    for (std::size_t i = 0; i < 16; ++i) block[i] = load_be32(bytes.data() + 4 * i);
    return block;
}

/**
 * Standard Merkle-Damgard padding: a single 1 bit, zeros up to 448 mod 512,
 * then the 64-bit big-endian bit length. Produces ceil((8*len + 65) / 512)
 * blocks.
 */
inline std::vector<MessageBlock> pad_message(std::span<const std::uint8_t> input) {
    const std::uint64_t bit_len = static_cast<std::uint64_t>(input.size()) * 8;
    const std::size_t nblocks = static_cast<std::size_t>((bit_len + 65 + 511) / 512);
    std::vector<std::uint8_t> buf(nblocks * 64, 0);
    for (std::size_t i = 0; i < input.size(); ++i) buf[i] = input[i];
    buf[input.size()] = 0x80;
    for (std::size_t i = 0; i < 8; ++i) buf[buf.size() - 1 - i] = static_cast<std::uint8_t>(bit_len >> (8 * i));

    std::vector<MessageBlock> blocks(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
        for (std::size_t i = 0; i < 16; ++i) blocks[b][i] = load_be32(buf.data() + 64 * b + 4 * i);
    }
    return blocks;
}

constexpr Word32 schedule_word(const MessageSchedule& w, std::size_t t) {
    return sigma1(w[t - 2]) + w[t - 7] + sigma0(w[t - 15]) + w[t - 16];
}

constexpr MessageSchedule expand_schedule(const MessageBlock& block) {
    MessageSchedule w{};
    for (std::size_t t = 0; t < 16; ++t) w[t] = block[t];
    for (std::size_t t = 16; t < 64; ++t) w[t] = schedule_word(w, t);
    return w;
}

/// One cipher round with message word `w_t` and round constant `k_t`.
constexpr State round(const State& s, Word32 w_t, Word32 k_t) {
    const Word32 t1 = s[7] + big_sigma1(s[4]) + ch(s[4], s[5], s[6]) + k_t + w_t;
    const Word32 t2 = big_sigma0(s[0]) + maj(s[0], s[1], s[2]);
    return State{{t1 + t2, s[0], s[1], s[2], s[3] + t1, s[4], s[5], s[6]}};
}

/// The 64-round block cipher without the feedforward.
constexpr State encrypt(const State& in, const MessageBlock& block) {
    const MessageSchedule w = expand_schedule(block);
    State s = in;
    for (std::size_t t = 0; t < 64; ++t) s = round(s, w[t], kRoundConstants[t]);
    return s;
}

/// Davies-Meyer compression: cipher output plus the input chaining value.
constexpr State compress(const State& in, const MessageBlock& block) {
    State out = encrypt(in, block);
    for (std::size_t i = 0; i < 8; ++i) out[i] += in[i];
    return out;
}

constexpr Digest to_digest(const State& s) {
    Digest d{};
    for (std::size_t i = 0; i < 8; ++i) store_be32(d.data() + 4 * i, s[i]);
    return d;
}

inline Digest hash(std::span<const std::uint8_t> input) {
    State s = kInitialState;
    for (const MessageBlock& block : pad_message(input)) s = compress(s, block);
    return to_digest(s);
}

inline Digest hash_double(std::span<const std::uint8_t> input) {
    const Digest first = hash(input);
    return hash(first);
}

inline Digest hash(std::string_view text) {
    return hash(std::span{reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

namespace detail {
constexpr bool abc_vector_matches() {
    // "abc" padded by hand into one block.
    constexpr MessageBlock block{0x61626380, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0x18};
    constexpr State expected{{0xba7816bf, 0x8f01cfea, 0x414140de, 0x5dae2223, 0xb00361a3, 0x96177a9c,
                              0xb410ff61, 0xf20015ad}};
    return compress(kInitialState, block) == expected;
}
}  // namespace detail

static_assert(detail::abc_vector_matches(), "SHA-256 constant tables are corrupt");

/// Runtime check through the padding path; tools call it at startup.
inline bool self_test() {
    constexpr State expected{{0xba7816bf, 0x8f01cfea, 0x414140de, 0x5dae2223, 0xb00361a3, 0x96177a9c,
                              0xb410ff61, 0xf20015ad}};
    return hash("abc") == to_digest(expected);
}

}  // namespace sha256
}  // namespace ciso
