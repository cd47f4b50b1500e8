#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ciso/header.hpp"
#include "ciso/kernel.hpp"

namespace ciso {

/// The reference-only check: plain sha256d of the serialized header.
inline bool verify_header(const BlockHeader& header, const Target256& target) {
    return meets_target(sha256::hash_double(serialize_header(header)), target);
}

inline Target256 header_target(const BlockHeader& header) { return decode_nbits(header.nbits); }

struct MineRequest {
    BlockHeader header;  // nonce field ignored
    Target256 target;
    Word32 nonce_start = 0;       // nonce word, see kernel.hpp
    std::uint64_t nonce_count = 0;  // 0 is an empty range
    unsigned threads = 1;
    kernel::ScanMode mode = kernel::ScanMode::automatic;
};

struct MineOutcome {
    kernel::ScanResult scan;
    std::optional<BlockHeader> solved;  // only set after the reference path agreed
    double seconds = 0.0;
};

inline unsigned default_thread_count() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Contiguous equal chunks of [start, start + count); the last chunk takes the remainder.
inline std::vector<std::pair<Word32, Word32>> partition_range(Word32 start, std::uint64_t count, unsigned parts) {
    if (count == 0) return {};
    if (start + count - 1 > 0xFFFFFFFFull) throw std::invalid_argument("nonce range runs past 0xffffffff");
    parts = static_cast<unsigned>(std::clamp<std::uint64_t>(parts, 1, count));
    std::vector<std::pair<Word32, Word32>> chunks;
    const std::uint64_t base = count / parts;
    std::uint64_t lo = start;
    for (unsigned i = 0; i < parts; ++i) {
        const std::uint64_t len = i + 1 == parts ? count - base * (parts - 1) : base;
        chunks.emplace_back(static_cast<Word32>(lo), static_cast<Word32>(lo + len - 1));
        lo += len;
    }
    return chunks;
}

/// Parallel scan with a minimum-nonce merge; the winner is re-checked on the
/// reference path before it is reported.
inline MineOutcome mine(const MineRequest& req) {
    const auto t0 = std::chrono::steady_clock::now();
    const kernel::PreparedWork work = kernel::prepare_work(req.header, req.target);
    const auto chunks = partition_range(req.nonce_start, req.nonce_count, req.threads);

    std::vector<kernel::ScanResult> partial(chunks.size());
    {
        std::vector<std::jthread> workers;
        std::vector<std::exception_ptr> errors(chunks.size());
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            workers.emplace_back([&, i] {
                try {
                    partial[i] = kernel::scan(work, chunks[i].first, chunks[i].second, req.mode);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        workers.clear();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    MineOutcome out;
    for (const auto& p : partial) out.scan.merge(p);
    if (out.scan.found) {
        BlockHeader solved = req.header;
        solved.nonce = out.scan.found->header_nonce();
        if (verify_header(solved, req.target) &&
            sha256::hash_double(serialize_header(solved)) == out.scan.found->digest) {
            out.solved = solved;
        } else {
            throw std::logic_error("kernel solution rejected by the reference path");
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

struct NaiveScanResult {
    std::optional<Word32> found;
    std::uint64_t nonces_tried = 0;
    std::uint64_t compressions = 0;
    double compressions_per_nonce() const {
        return nonces_tried == 0 ? 0.0 : static_cast<double>(compressions) / static_cast<double>(nonces_tried);
    }
};

/// Baseline: serialize and sha256d every candidate, three compressions each.
inline NaiveScanResult naive_scan(BlockHeader header, Word32 nonce_lo, Word32 nonce_hi, const Target256& target) {
    if (nonce_lo > nonce_hi) throw std::invalid_argument("empty nonce range");
    NaiveScanResult r;
    for (std::uint64_t n = nonce_lo; n <= nonce_hi; ++n) {
        header.nonce = word_to_nonce(static_cast<Word32>(n));
        const HeaderBytes bytes = serialize_header(header);
        ++r.nonces_tried;
        r.compressions += 3;
        if (meets_target(sha256::hash_double(bytes), target)) {
            r.found = static_cast<Word32>(n);
            break;
        }
    }
    return r;
}

}  // namespace ciso
