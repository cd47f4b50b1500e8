#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ciso/sha256.hpp"

namespace ciso {

using Target256 = boost::multiprecision::uint256_t;
using Hash32 = std::array<std::uint8_t, 32>;
using Difficulty = double;

/// Raised for malformed encodings: bad hex, wrong lengths, invalid compact targets.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Hex

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

inline std::vector<std::uint8_t> from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw DecodeError("hex string has odd length " + std::to_string(hex.size()));
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = nibble(hex[2 * i]);
        const int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw DecodeError("invalid hex digit near offset " + std::to_string(2 * i));
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> from_hex_fixed(std::string_view hex) {
    if (hex.size() != 2 * N) {
        throw DecodeError("expected " + std::to_string(2 * N) + " hex chars, got " + std::to_string(hex.size()));
    }
    const auto bytes = from_hex(hex);
    std::array<std::uint8_t, N> out{};
    std::copy(bytes.begin(), bytes.end(), out.begin());
    return out;
}

/// Block-explorer rendering: bytes reversed, so leading zero bits show first.
inline std::string display_hex(const Hash32& digest) {
    Hash32 rev = digest;
    std::reverse(rev.begin(), rev.end());
    return to_hex(rev);
}

inline Hash32 parse_display_hex(std::string_view hex) {
    Hash32 h = from_hex_fixed<32>(hex);
    std::reverse(h.begin(), h.end());
    return h;
}

constexpr std::uint32_t byteswap32(std::uint32_t v) {
    return (v >> 24) | ((v >> 8) & 0x0000ff00u) | ((v << 8) & 0x00ff0000u) | (v << 24);
}

// ---------------------------------------------------------------------------
// Block header

inline constexpr std::size_t kHeaderSize = 80;
using HeaderBytes = std::array<std::uint8_t, kHeaderSize>;

struct BlockHeader {
    std::int32_t version = 0;
    Hash32 prev_block{};
    Hash32 merkle_root{};
    std::uint32_t timestamp = 0;
    std::uint32_t nbits = 0;
    std::uint32_t nonce = 0;

    friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

namespace detail {
constexpr void store_le32(std::uint8_t* p, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}
constexpr std::uint32_t load_le32(const std::uint8_t* p) {
    return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
}
}  // namespace detail

inline HeaderBytes serialize_header(const BlockHeader& h) {
    HeaderBytes out{};
    detail::store_le32(out.data(), static_cast<std::uint32_t>(h.version));
    std::copy(h.prev_block.begin(), h.prev_block.end(), out.begin() + 4);
    std::copy(h.merkle_root.begin(), h.merkle_root.end(), out.begin() + 36);
    detail::store_le32(out.data() + 68, h.timestamp);
    detail::store_le32(out.data() + 72, h.nbits);
    detail::store_le32(out.data() + 76, h.nonce);
    return out;
}

inline BlockHeader deserialize_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kHeaderSize) {
        throw DecodeError("block header must be 80 bytes, got " + std::to_string(bytes.size()));
    }
    BlockHeader h;
    h.version = static_cast<std::int32_t>(detail::load_le32(bytes.data()));
    std::copy_n(bytes.begin() + 4, 32, h.prev_block.begin());
    std::copy_n(bytes.begin() + 36, 32, h.merkle_root.begin());
    h.timestamp = detail::load_le32(bytes.data() + 68);
    h.nbits = detail::load_le32(bytes.data() + 72);
    h.nonce = detail::load_le32(bytes.data() + 76);
    return h;
}

inline std::string header_to_hex(const BlockHeader& h) { return to_hex(serialize_header(h)); }

inline BlockHeader header_from_hex(std::string_view hex) {
    if (hex.size() != 2 * kHeaderSize) {
        throw DecodeError("header hex must be 160 chars, got " + std::to_string(hex.size()));
    }
    return deserialize_header(from_hex(hex));
}

/// The nonce as it appears in message word 3 of the second compression.
constexpr Word32 nonce_to_word(std::uint32_t header_nonce) { return byteswap32(header_nonce); }
constexpr std::uint32_t word_to_nonce(Word32 word) { return byteswap32(word); }

// ---------------------------------------------------------------------------
// Compact target (nBits)

inline constexpr std::uint32_t kCompactSignBit = 0x00800000;

inline Target256 decode_nbits(std::uint32_t compact) {
    using boost::multiprecision::cpp_int;
    if (compact & kCompactSignBit) throw DecodeError("compact target has sign bit set");
    const unsigned exponent = compact >> 24;
    const std::uint32_t mantissa = compact & 0x007fffff;
    if (mantissa == 0) throw DecodeError("zero target");
    cpp_int value = mantissa;
    if (exponent <= 3) {
        value >>= 8 * (3 - exponent);
    } else {
        value <<= 8 * (exponent - 3);
    }
    if (value == 0) throw DecodeError("zero target");
    if (boost::multiprecision::msb(value) >= 256) throw DecodeError("compact target overflows 256 bits");
    return static_cast<Target256>(value);
}

inline std::uint32_t encode_nbits(const Target256& target) {
    if (target == 0) throw DecodeError("zero target");
    unsigned size = (boost::multiprecision::msb(target) + 8) / 8;
    std::uint32_t mantissa = 0;
    if (size <= 3) {
        mantissa = static_cast<std::uint32_t>(target) << (8 * (3 - size));
    } else {
        mantissa = static_cast<std::uint32_t>(target >> (8 * (size - 3)));
    }
    if (mantissa & kCompactSignBit) {
        mantissa >>= 8;
        ++size;
    }
    return mantissa | (size << 24);
}

// ---------------------------------------------------------------------------
// Difficulty

/// 2^224 / target. Real network difficulty is at least one.
inline Difficulty difficulty_of(const Target256& target) {
    if (target == 0) throw std::domain_error("zero target");
    return std::ldexp(1.0, 224) / target.convert_to<double>();
}

/// Chance that one uniformly random hash meets the target: target / 2^256.
inline double probability_of(const Target256& target) {
    if (target == 0) throw std::domain_error("zero target");
    return std::ldexp(target.convert_to<double>(), -256);
}

inline Target256 target_from_difficulty(double difficulty) {
    if (!(difficulty > 0)) throw std::domain_error("difficulty must be positive");
    using Float = boost::multiprecision::cpp_bin_float_50;
    Float t = boost::multiprecision::ldexp(Float{1}, 224) / Float{difficulty};
    return static_cast<Target256>(t.convert_to<boost::multiprecision::cpp_int>());
}

inline Target256 pow2_target(unsigned exponent) {
    if (exponent >= 256) throw std::domain_error("2^" + std::to_string(exponent) + " does not fit 256 bits");
    return Target256{1} << exponent;
}

// ---------------------------------------------------------------------------
// Hash comparison

/// Digest bytes read in reversed order as a big-endian integer.
inline Target256 hash_to_int(const Hash32& digest) {
    Target256 v = 0;
    for (std::size_t i = digest.size(); i-- > 0;) v = (v << 8) | digest[i];
    return v;
}

inline Hash32 int_to_hash(const Target256& value) {
    Hash32 out{};
    Target256 v = value;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

inline bool meets_target(const Hash32& digest, const Target256& target) { return hash_to_int(digest) < target; }

// ---------------------------------------------------------------------------
// Merkle tree

inline Hash32 merkle_root(std::span<const Hash32> txids) {
    if (txids.empty()) throw std::invalid_argument("merkle root of an empty transaction list");
    std::vector<Hash32> level(txids.begin(), txids.end());
    while (level.size() > 1) {
        if (level.size() % 2 != 0) level.push_back(level.back());
        std::vector<Hash32> next(level.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            std::array<std::uint8_t, 64> pair{};
            std::copy(level[2 * i].begin(), level[2 * i].end(), pair.begin());
            std::copy(level[2 * i + 1].begin(), level[2 * i + 1].end(), pair.begin() + 32);
            next[i] = sha256::hash_double(pair);
        }
        level = std::move(next);
    }
    return level.front();
}

}  // namespace ciso
