#include <gtest/gtest.h>

#include <random>

#include "ciso/kernel.hpp"
#include "ciso/miner.hpp"
#include "oracles.hpp"

using namespace ciso;
using namespace ciso::kernel;

namespace {

BlockHeader random_header(std::mt19937_64& rng) {
    BlockHeader h;
    h.version = static_cast<std::int32_t>(rng());
    for (auto& b : h.prev_block) b = static_cast<std::uint8_t>(rng());
    for (auto& b : h.merkle_root) b = static_cast<std::uint8_t>(rng());
    h.timestamp = static_cast<std::uint32_t>(rng());
    h.nbits = 0x1d00ffff;
    return h;
}

std::array<std::uint32_t, 16> second_block(const BlockHeader& h, Word32 nonce_word) {
    auto bytes = serialize_header(h);
    std::array<std::uint32_t, 16> m{};
    for (int t = 0; t < 3; ++t) m[t] = sha256::load_be32(bytes.data() + 64 + 4 * t);
    m[3] = nonce_word;
    m[4] = 0x80000000;
    m[15] = 640;
    return m;
}

oracle::Regs oracle_midstate(const BlockHeader& h) {
    auto bytes = serialize_header(h);
    std::array<std::uint32_t, 16> m{};
    for (int t = 0; t < 16; ++t) m[t] = sha256::load_be32(bytes.data() + 4 * t);
    return oracle::compress(oracle::initial_state(), m);
}

Hash32 reference_digest(BlockHeader h, Word32 nonce_word) {
    h.nonce = word_to_nonce(nonce_word);
    const auto bytes = serialize_header(h);
    return oracle::sha256d(bytes);
}

}  // namespace

TEST(Kernel, RejectionConstants) {
    EXPECT_EQ(kRejectE60, 0xa41f32e7u);
    EXPECT_EQ(kRejectE61, 0xe07c2655u);
    EXPECT_EQ(static_cast<Word32>(kRejectE60 + 0x5be0cd19u), 0u);
    EXPECT_EQ(static_cast<Word32>(kRejectE61 + 0x1f83d9abu), 0u);
}

TEST(Kernel, MidstateMatchesOracleAndChecksLength) {
    std::mt19937_64 rng(oracle::kSeed + 20);
    const BlockHeader h = random_header(rng);
    const auto bytes = serialize_header(h);
    EXPECT_EQ(compute_midstate(std::span(bytes).first(64)).state.w, oracle_midstate(h));
    EXPECT_THROW(compute_midstate(std::span(bytes).first(63)), std::invalid_argument);
    EXPECT_THROW(compute_midstate(bytes), std::invalid_argument);
}

TEST(Kernel, PrecomputedRoundsAndIncrementalRoundThree) {
    std::mt19937_64 rng(oracle::kSeed + 21);
    for (int i = 0; i < 200; ++i) {
        const BlockHeader h = random_header(rng);
        const PreparedWork work = prepare_work(h, pow2_target(200));
        const auto nonce = static_cast<Word32>(rng());
        const auto m = second_block(h, nonce);
        oracle::Regs r = oracle_midstate(h);
        for (int t = 0; t < 3; ++t) r = oracle::step(r, oracle::round_constants()[t], m[t]);
        EXPECT_EQ(work.state_r3_base.w, r);
        r = oracle::step(r, oracle::round_constants()[3], m[3]);
        EXPECT_EQ(start_cursor(work, nonce).after_round3.w, r);
        // Only A and E move with the nonce.
        const NonceCursor c = start_cursor(work, nonce);
        for (int j : {1, 2, 3, 5, 6, 7}) EXPECT_EQ(c.after_round3[j], work.round3_base[j]);
    }
}

TEST(Kernel, ScheduleWordsMatchOracle) {
    std::mt19937_64 rng(oracle::kSeed + 22);
    for (int i = 0; i < 200; ++i) {
        const BlockHeader h = random_header(rng);
        const PreparedWork work = prepare_work(h, pow2_target(200));
        const auto nonce = static_cast<Word32>(rng());
        const auto w = oracle::schedule(second_block(h, nonce));
        EXPECT_EQ(work.w16, w[16]);
        EXPECT_EQ(work.w17, w[17]);
        EXPECT_EQ(start_cursor(work, nonce).w19, w[19]);
        EXPECT_EQ(static_cast<Word32>(work.w19_base + nonce), w[19]);
    }
}

TEST(Kernel, FoldedKeyWords) {
    std::mt19937_64 rng(oracle::kSeed + 23);
    const PreparedWork work = prepare_work(random_header(rng), pow2_target(200));
    int zero = 0, padding = 0, length = 0, schedule = 0;
    for (const KwFold& f : work.kw_folded) {
        switch (f.kind) {
            case FoldKind::zero_word:
                ++zero;
                EXPECT_EQ(f.value, sha256::kRoundConstants[f.round]);
                break;
            case FoldKind::padding_word:
                ++padding;
                EXPECT_EQ(f.value, static_cast<Word32>(sha256::kRoundConstants[f.round] + 0x80000000u));
                break;
            case FoldKind::length_word:
                ++length;
                EXPECT_EQ(f.value, static_cast<Word32>(sha256::kRoundConstants[15] + (f.compression == 2 ? 640u : 256u)));
                break;
            case FoldKind::schedule_word:
                ++schedule;
                break;
        }
    }
    EXPECT_EQ(zero, 16);
    EXPECT_EQ(padding, 2);
    EXPECT_EQ(length, 2);
    EXPECT_EQ(schedule, 2);
}

TEST(Kernel, DigestMatchesReference) {
    std::mt19937_64 rng(oracle::kSeed + 24);
    for (int i = 0; i < 2000; ++i) {
        const BlockHeader h = random_header(rng);
        const PreparedWork work = prepare_work(h, pow2_target(200));
        const auto nonce = static_cast<Word32>(rng());
        ASSERT_EQ(kernel_digest(work, nonce), reference_digest(h, nonce));
    }
}

TEST(Kernel, StepNonceMatchesFreshCursor) {
    std::mt19937_64 rng(oracle::kSeed + 25);
    const PreparedWork work = prepare_work(random_header(rng), pow2_target(200));
    NonceCursor c = start_cursor(work, 0xFFFFFF00u);
    for (int i = 0; i < 255; ++i) {
        ASSERT_EQ(step_nonce(c), StepStatus::advanced);
        const NonceCursor fresh = start_cursor(work, c.nonce);
        ASSERT_EQ(c.after_round3, fresh.after_round3);
        ASSERT_EQ(c.w19, fresh.w19);
    }
    EXPECT_EQ(c.nonce, 0xFFFFFFFFu);
    const NonceCursor before = c;
    EXPECT_EQ(step_nonce(c), StepStatus::range_exhausted);
    EXPECT_EQ(c.nonce, before.nonce);
    EXPECT_EQ(c.after_round3, before.after_round3);
}

TEST(Kernel, RealHeadersFoundAtTheirNonce) {
    for (const auto& hex : {oracle::kGenesisHeader, oracle::kBlock125552Header}) {
        const BlockHeader h = header_from_hex(hex);
        const Word32 word = nonce_to_word(h.nonce);
        for (ScanMode mode : {ScanMode::automatic, ScanMode::early_exit, ScanMode::generic}) {
            const ScanResult r = scan(prepare_work(h, decode_nbits(h.nbits)), word - 3, word + 3, mode);
            ASSERT_TRUE(r.found.has_value());
            EXPECT_EQ(r.found->nonce, word);
            EXPECT_EQ(r.found->header_nonce(), h.nonce);
            EXPECT_EQ(r.nonces_tried, 4u);
        }
    }
}

TEST(Kernel, SecondStageOnBelow192Target) {
    // Block 125552 has two zero top words, so a 2^191 target passes round 61 too.
    const BlockHeader h = header_from_hex(oracle::kBlock125552Header);
    const Word32 word = nonce_to_word(h.nonce);
    const PreparedWork work = prepare_work(h, pow2_target(191));
    ASSERT_TRUE(work.second_stage_sound());
    const ScanResult r = scan(work, word, word, ScanMode::early_exit);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.stage1_survivors, 1u);
    EXPECT_EQ(r.stage2_survivors, 1u);
    EXPECT_EQ(r.rounds_executed, 61u + 61u + 1u + 2u);

    // Genesis passes round 60 but its word 6 is nonzero.
    const BlockHeader g = header_from_hex(oracle::kGenesisHeader);
    const Word32 gw = nonce_to_word(g.nonce);
    const ScanResult rg = scan(prepare_work(g, pow2_target(191)), gw, gw, ScanMode::early_exit);
    EXPECT_FALSE(rg.found);
    EXPECT_EQ(rg.stage1_survivors, 1u);
    EXPECT_EQ(rg.stage2_survivors, 0u);
    EXPECT_EQ(rg.rounds_executed, 61u + 61u + 1u);
}

TEST(Kernel, EarlyExitRefusedForWideTargets) {
    std::mt19937_64 rng(oracle::kSeed + 26);
    const PreparedWork work = prepare_work(random_header(rng), pow2_target(224));
    EXPECT_FALSE(work.early_exit_sound());
    EXPECT_THROW(scan(work, 0, 10, ScanMode::early_exit), std::domain_error);
    EXPECT_FALSE(scan(work, 0, 10, ScanMode::automatic).early_exit);
    EXPECT_THROW(scan(work, 10, 9), std::invalid_argument);
    EXPECT_THROW(prepare_work(random_header(rng), 0), std::domain_error);
}

TEST(Kernel, RoundAccounting) {
    std::mt19937_64 rng(oracle::kSeed + 27);
    const PreparedWork work = prepare_work(random_header(rng), 1);
    const ScanResult early = scan(work, 0, 999, ScanMode::early_exit);
    const ScanResult generic = scan(work, 0, 999, ScanMode::generic);
    EXPECT_EQ(early.nonces_tried, 1000u);
    EXPECT_EQ(early.rounds_executed, 1000u * 122u + early.stage1_survivors + 2 * early.stage2_survivors);
    EXPECT_EQ(generic.rounds_executed, 1000u * 125u);
    EXPECT_DOUBLE_EQ(generic.compressions_equivalent(), 125.0 / 64.0);
}

TEST(Kernel, TopOfRangeTerminates) {
    std::mt19937_64 rng(oracle::kSeed + 28);
    const PreparedWork work = prepare_work(random_header(rng), 1);
    const ScanResult r = scan(work, 0xFFFFFFF0u, 0xFFFFFFFFu);
    EXPECT_EQ(r.nonces_tried, 16u);
}

TEST(Miner, PartitionIsContiguousAndComplete) {
    const auto parts = partition_range(100, 1001, 4);
    ASSERT_EQ(parts.size(), 4u);
    EXPECT_EQ(parts.front().first, 100u);
    EXPECT_EQ(parts.back().second, 1100u);
    for (std::size_t i = 1; i < parts.size(); ++i) EXPECT_EQ(parts[i].first, parts[i - 1].second + 1);
    EXPECT_TRUE(partition_range(0, 0, 4).empty());
    EXPECT_EQ(partition_range(0, 0x100000000ull, 3).back().second, 0xFFFFFFFFu);
    EXPECT_THROW(partition_range(1, 0x100000000ull, 3), std::invalid_argument);
    EXPECT_EQ(partition_range(0, 2, 8).size(), 2u);
}

TEST(Miner, ThreadCountDoesNotChangeTheAnswer) {
    MineRequest req;
    req.header = header_from_hex(oracle::kBlock125552Header);
    req.header.nonce = 0;
    req.target = pow2_target(244);
    req.nonce_start = 0;
    req.nonce_count = 200000;
    std::optional<Word32> first;
    for (unsigned threads : {1u, 2u, 3u, 7u}) {
        req.threads = threads;
        const MineOutcome out = mine(req);
        ASSERT_TRUE(out.solved);
        if (!first) first = out.scan.found->nonce;
        EXPECT_EQ(out.scan.found->nonce, *first) << threads;
        EXPECT_TRUE(verify_header(*out.solved, req.target));
    }
}

TEST(Miner, EmptyRangeScansNothing) {
    MineRequest req;
    req.header = header_from_hex(oracle::kGenesisHeader);
    req.target = pow2_target(255);
    req.nonce_count = 0;
    const MineOutcome out = mine(req);
    EXPECT_FALSE(out.solved);
    EXPECT_EQ(out.scan.nonces_tried, 0u);
}

TEST(Miner, NaiveScanCountsThreeCompressions) {
    const BlockHeader h = header_from_hex(oracle::kGenesisHeader);
    const Word32 word = nonce_to_word(h.nonce);
    const NaiveScanResult r = naive_scan(h, word - 9, word, decode_nbits(h.nbits));
    ASSERT_TRUE(r.found);
    EXPECT_EQ(*r.found, word);
    EXPECT_EQ(r.nonces_tried, 10u);
    EXPECT_DOUBLE_EQ(r.compressions_per_nonce(), 3.0);
}
