#pragma once

// Work template: a key=value document describing a header minus its nonce.
//
//   # comment
//   version = 2
//   prev_block = <64 hex, stored byte order>
//   merkle_root = <64 hex, stored byte order>
//   timestamp = 1231006505
//   nbits = 1d00ffff
//   target = <64 hex, big-endian integer>   (optional override)

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "ciso/header.hpp"

namespace ciso {

struct WorkTemplate {
    BlockHeader header;  // nonce stays zero
    std::optional<Target256> target_override;

    Target256 target() const { return target_override ? *target_override : decode_nbits(header.nbits); }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <typename Int>
Int parse_integer(const std::string& key, const std::string& text, int base = 10) {
    Int value{};
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (base == 16 && text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) begin += 2;
    const auto [ptr, ec] = std::from_chars(begin, end, value, base);
    if (ec != std::errc{} || ptr != end || begin == end) throw DecodeError("bad value for '" + key + "': " + text);
    return value;
}

}  // namespace detail

inline Target256 parse_target_hex(std::string_view hex) {
    if (hex.size() != 64) throw DecodeError("target must be 64 hex chars, got " + std::to_string(hex.size()));
    Target256 t = 0;
    for (std::uint8_t b : from_hex(hex)) t = (t << 8) | b;
    return t;
}

inline std::string target_to_hex(const Target256& t) {
    Hash32 bytes = int_to_hash(t);
    std::reverse(bytes.begin(), bytes.end());
    return to_hex(bytes);
}

inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = detail::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw DecodeError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(std::string_view(body).substr(0, eq));
        std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw DecodeError("line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second) throw DecodeError("duplicate key '" + key + "'");
    }
    return kv;
}

inline WorkTemplate parse_work_template(std::istream& in) {
    auto kv = parse_key_values(in);
    auto take = [&](const char* key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw DecodeError(std::string("missing field '") + key + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    WorkTemplate w;
    w.header.version = detail::parse_integer<std::int32_t>("version", take("version"));
    w.header.prev_block = from_hex_fixed<32>(take("prev_block"));
    w.header.merkle_root = from_hex_fixed<32>(take("merkle_root"));
    w.header.timestamp = detail::parse_integer<std::uint32_t>("timestamp", take("timestamp"));
    w.header.nbits = detail::parse_integer<std::uint32_t>("nbits", take("nbits"), 16);
    if (kv.contains("target")) w.target_override = parse_target_hex(take("target"));
    if (kv.contains("nonce")) throw DecodeError("work template must not carry a nonce");
    if (!kv.empty()) throw DecodeError("unknown field '" + kv.begin()->first + "'");
    if (!w.target_override) decode_nbits(w.header.nbits);  // reject unusable nbits early
    return w;
}

inline WorkTemplate load_work_template(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DecodeError("cannot open work template '" + path + "'");
    return parse_work_template(in);
}

inline std::string to_template_text(const WorkTemplate& w) {
    std::ostringstream os;
    os << "version = " << w.header.version << '\n';
    os << "prev_block = " << to_hex(w.header.prev_block) << '\n';
    os << "merkle_root = " << to_hex(w.header.merkle_root) << '\n';
    os << "timestamp = " << w.header.timestamp << '\n';
    char nbits[9];
    std::snprintf(nbits, sizeof nbits, "%08x", w.header.nbits);
    os << "nbits = " << nbits << '\n';
    if (w.target_override) os << "target = " << target_to_hex(*w.target_override) << '\n';
    return os.str();
}

}  // namespace ciso
