#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "ciso/cost_model.hpp"
#include "ciso/header.hpp"
#include "ciso/kernel.hpp"
#include "ciso/miner.hpp"
#include "ciso/reward.hpp"
#include "ciso/work_template.hpp"

namespace ciso::cli {
namespace {

enum class Format { text, kv, csv };

/// Ordered key/value report rendered as aligned text, key=value lines, or a two-line CSV.
class Report {
public:
    Report& add(std::string key, std::string value) {
        rows_.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    template <typename T>
    Report& add(std::string key, const T& value) {
        std::ostringstream os;
        os << value;
        return add(std::move(key), os.str());
    }

    void render(std::ostream& out, Format f) const {
        switch (f) {
            case Format::kv:
                for (const auto& [k, v] : rows_) out << k << '=' << v << '\n';
                break;
            case Format::csv: {
                for (std::size_t i = 0; i < rows_.size(); ++i) out << (i ? "," : "") << rows_[i].first;
                out << '\n';
                for (std::size_t i = 0; i < rows_.size(); ++i) out << (i ? "," : "") << rows_[i].second;
                out << '\n';
                break;
            }
            case Format::text: {
                std::size_t width = 0;
                for (const auto& row : rows_) width = std::max(width, row.first.size());
                for (const auto& [k, v] : rows_) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
                break;
            }
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

std::string btc_string(reward::Satoshis s) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%llu.%08llu", static_cast<unsigned long long>(s / reward::kSatoshisPerBtc),
                  static_cast<unsigned long long>(s % reward::kSatoshisPerBtc));
    return buf;
}

std::string hex32(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", v);
    return buf;
}

std::uint32_t parse_u32(const std::string& s, int base = 0) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, base);
    if (used != s.size() || v > 0xFFFFFFFFull) throw DecodeError("not a 32-bit value: " + s);
    return static_cast<std::uint32_t>(v);
}

const std::map<std::string, Format> kFormats{{"text", Format::text}, {"kv", Format::kv}, {"csv", Format::csv}};

kernel::ScanMode parse_mode(const std::string& s) {
    if (s == "auto") return kernel::ScanMode::automatic;
    if (s == "early") return kernel::ScanMode::early_exit;
    if (s == "generic") return kernel::ScanMode::generic;
    throw std::invalid_argument("unknown scan mode '" + s + "'");
}

BlockHeader random_header(std::mt19937_64& rng) {
    BlockHeader h;
    h.version = 2;
    for (auto& b : h.prev_block) b = static_cast<std::uint8_t>(rng());
    for (auto& b : h.merkle_root) b = static_cast<std::uint8_t>(rng());
    h.timestamp = static_cast<std::uint32_t>(rng());
    h.nbits = 0x1d00ffff;
    return h;
}

// ---------------------------------------------------------------------------

struct MineOptions {
    std::string template_path;
    std::string header_hex;
    std::string target_hex;
    std::string nbits_hex;
    int target_bits = -1;
    std::string nonce_start = "0";
    std::string nonce_count;
    unsigned threads = default_thread_count();
    std::string mode = "auto";
};

int cmd_mine(const MineOptions& o, Format fmt, std::ostream& out) {
    WorkTemplate work;
    if (!o.template_path.empty()) {
        work = load_work_template(o.template_path);
    } else if (!o.header_hex.empty()) {
        work.header = header_from_hex(o.header_hex);
        work.header.nonce = 0;
    } else {
        throw CLI::ValidationError("mine", "either --template or --header is required");
    }
    if (!o.target_hex.empty()) {
        work.target_override = parse_target_hex(o.target_hex);
    } else if (o.target_bits >= 0) {
        work.target_override = pow2_target(static_cast<unsigned>(o.target_bits));
    } else if (!o.nbits_hex.empty()) {
        work.header.nbits = parse_u32(o.nbits_hex, 16);
        work.target_override.reset();
    }

    MineRequest req;
    req.header = work.header;
    req.target = work.target();
    req.nonce_start = parse_u32(o.nonce_start);
    const std::uint64_t room = 0x100000000ull - req.nonce_start;
    req.nonce_count = o.nonce_count.empty() ? room : std::stoull(o.nonce_count, nullptr, 0);
    if (req.nonce_count > room) throw CLI::ValidationError("mine", "nonce range runs past 0xffffffff");
    req.threads = std::max(1u, o.threads);
    req.mode = parse_mode(o.mode);

    const MineOutcome r = mine(req);
    Report rep;
    rep.add("found", r.solved ? "yes" : "no");
    if (r.solved) {
        rep.add("nonce_word", hex32(r.scan.found->nonce));
        rep.add("header_nonce", r.solved->nonce);
        rep.add("digest", display_hex(r.scan.found->digest));
        rep.add("header", header_to_hex(*r.solved));
        rep.add("verified", "reference");
    }
    rep.add("target", target_to_hex(req.target));
    rep.add("mode", r.scan.early_exit ? "early" : "generic");
    rep.add("nonces_tried", r.scan.nonces_tried);
    rep.add("rounds_executed", r.scan.rounds_executed);
    rep.add("compressions_equivalent", fixed(r.scan.compressions_equivalent(), 6));
    rep.add("stage1_survivors", r.scan.stage1_survivors);
    rep.add("stage2_survivors", r.scan.stage2_survivors);
    rep.add("threads", req.threads);
    rep.add("seconds", fixed(r.seconds, 3));
    rep.render(out, fmt);
    return r.solved ? kSuccess : kNegative;
}

int cmd_verify(const std::string& header_hex, const std::string& target_hex, Format fmt, std::ostream& out) {
    const BlockHeader h = header_from_hex(header_hex);
    const Target256 target = target_hex.empty() ? decode_nbits(h.nbits) : parse_target_hex(target_hex);
    const Hash32 digest = sha256::hash_double(serialize_header(h));
    const bool ok = meets_target(digest, target);
    Report rep;
    rep.add("digest", display_hex(digest)).add("target", target_to_hex(target)).add("valid", ok ? "yes" : "no");
    rep.render(out, fmt);
    return ok ? kSuccess : kNegative;
}

struct BenchOptions {
    std::uint64_t count = 1ull << 22;
    std::string improvements = "full";
    unsigned threads = default_thread_count();
    std::uint64_t seed = 0x00c150ba5eedull;
};

int cmd_bench(const BenchOptions& o, Format fmt, std::ostream& out) {
    if (o.count == 0 || o.count > 0x100000000ull) throw CLI::ValidationError("bench", "--count must be in 1..2^32");
    const cost::ImprovementSet set = cost::ImprovementSet::parse(o.improvements);
    std::mt19937_64 rng(o.seed);
    const BlockHeader header = random_header(rng);
    const Target256 unreachable = 1;
    const unsigned threads = std::max(1u, o.threads);
    const auto chunks = partition_range(0, o.count, threads);

    // Naive reference path, same partition.
    std::uint64_t naive_compressions = 0;
    const auto n0 = std::chrono::steady_clock::now();
    {
        std::vector<NaiveScanResult> parts(chunks.size());
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            pool.emplace_back([&, i] { parts[i] = naive_scan(header, chunks[i].first, chunks[i].second, unreachable); });
        }
        pool.clear();
        for (const auto& p : parts) naive_compressions += p.compressions;
    }
    const double naive_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - n0).count();

    MineRequest req;
    req.header = header;
    req.target = unreachable;
    req.nonce_count = o.count;
    req.threads = threads;
    req.mode = set.has(cost::Improvement::early_reject) ? kernel::ScanMode::early_exit : kernel::ScanMode::generic;
    const MineOutcome opt = mine(req);

    const double n = static_cast<double>(o.count);
    Report rep;
    rep.add("seed", o.seed);
    rep.add("nonces", o.count);
    rep.add("threads", threads);
    rep.add("improvements", set.to_string());
    rep.add("naive_hashes_per_second", fixed(n / naive_s, 0));
    rep.add("naive_compressions_per_nonce", fixed(static_cast<double>(naive_compressions) / n, 6));
    rep.add("optimized_hashes_per_second", fixed(n / opt.seconds, 0));
    rep.add("optimized_compressions_per_nonce", fixed(opt.scan.compressions_equivalent(), 6));
    rep.add("model_compressions_per_nonce", cost::rational_string(cost::compression_equivalents(set)));
    rep.add("wall_clock_ratio", fixed(naive_s / opt.seconds, 3));
    rep.add("stage1_survivors", opt.scan.stage1_survivors);
    rep.render(out, fmt);
    return kSuccess;
}

int cmd_reward(reward::Height height, const std::string& schedule, const std::string& rounding, Format fmt,
               std::ostream& out) {
    const reward::ScheduleKind kind = reward::parse_schedule(schedule);
    const auto mode = rounding == "floor" ? reward::OriginalRounding::floor_integer : reward::OriginalRounding::exact_dyadic;
    const reward::Satoshis s = reward::reward(height, kind, mode);
    Report rep;
    rep.add("height", height).add("schedule", reward::to_string(kind)).add("reward_satoshis", s).add("reward_btc", btc_string(s));
    rep.render(out, fmt);
    return kSuccess;
}

int cmd_supply(const std::string& schedule, std::optional<reward::Height> height, const std::string& rounding,
               Format fmt, std::ostream& out) {
    const reward::ScheduleKind kind = reward::parse_schedule(schedule);
    const auto mode = rounding == "floor" ? reward::OriginalRounding::floor_integer : reward::OriginalRounding::exact_dyadic;
    Report rep;
    rep.add("schedule", reward::to_string(kind));
    if (height) {
        const reward::SupplyReport r = reward::cumulative_supply(*height, kind, mode);
        rep.add("height", r.height);
        rep.add("cumulative_satoshis", r.cumulative_satoshis);
        if (r.exact_btc) rep.add("exact_btc", fixed(r.exact_btc->convert_to<double>(), 8));
        rep.add("cap_delta_satoshis", r.cap_delta_satoshis);
    } else {
        const reward::EmissionTotals e = reward::total_emission(kind, mode);
        rep.add("closed_form_btc", cost::rational_string(e.closed_form_btc));
        rep.add("iterated_satoshis", e.iterated_satoshis);
        rep.add("delta_satoshis", e.delta_satoshis);
        rep.add("last_rewarded_height", e.last_rewarded_height);
    }
    rep.render(out, fmt);
    return kSuccess;
}

int cmd_table(const std::vector<reward::Height>& heights, Format fmt, std::ostream& out) {
    const bool published = heights.empty();
    const auto rows = published ? reward::schedule_table() : reward::schedule_table(heights);
    if (fmt == Format::csv) {
        out << "height,old_btc,new_btc,old_sat,new_sat\n";
        for (const auto& r : rows) {
            out << r.height << ',' << btc_string(r.old_sat) << ',' << btc_string(r.new_sat) << ',' << r.old_sat << ','
                << r.new_sat << '\n';
        }
        return kSuccess;
    }
    if (fmt == Format::kv) {
        for (const auto& r : rows) {
            out << r.height << ".old_btc=" << btc_string(r.old_sat) << '\n';
            out << r.height << ".new_btc=" << btc_string(r.new_sat) << '\n';
        }
        return kSuccess;
    }
    out << std::left << std::setw(10) << "height" << std::setw(14) << "old_btc" << std::setw(14) << "new_btc";
    if (published) out << std::setw(12) << "published" << "difference";
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << std::left << std::setw(10) << r.height << std::setw(14) << btc_string(r.old_sat) << std::setw(14)
            << btc_string(r.new_sat);
        if (published) {
            out << std::setw(12) << reward::kPublishedNew[i] << std::showpos
                << fixed(r.new_btc() - reward::kPublishedNew[i], 4) << std::noshowpos;
        }
        out << '\n';
    }
    if (published) out << "first height where proposed < original: " << reward::first_crossover() << '\n';
    return kSuccess;
}

int cmd_adders(const std::string& improvements, Format fmt, std::ostream& out) {
    const cost::CostReport r = cost::cost_report(cost::ImprovementSet::parse(improvements));
    if (fmt == Format::kv) {
        out << cost::to_kv(r);
        return kSuccess;
    }
    Report rep;
    rep.add("improvements", r.improvements.to_string());
    rep.add("compressions_per_nonce", cost::rational_string(r.compressions_per_nonce) + " (" +
                                          cost::fixed6(r.compressions_per_nonce.convert_to<double>()) + ")");
    if (r.amortized_extra != 0) rep.add("amortized_extra", cost::rational_string(r.amortized_extra));
    rep.add("adders_per_nonce", r.adders_per_nonce);
    rep.add("savings_fraction", cost::fixed6(r.savings_fraction));
    rep.render(out, fmt);
    return kSuccess;
}

struct EnergyOptions {
    std::string scenario;
    double watts_per_ghs = 0;
    double rate_ghs = 0;
    double mwh_per_day = 0;
    double price_per_kwh = cost::kApril2013.price_per_kwh();
    std::optional<double> fraction;
};

int cmd_energy(const EnergyOptions& o, Format fmt, std::ostream& out) {
    const double fraction = o.fraction.value_or(cost::savings_fraction(cost::ImprovementSet::full()));
    Report rep;
    cost::EnergyReport r;
    if (o.scenario == cost::kApril2013.name) {
        r = cost::energy_savings_from_daily(cost::kApril2013.mwh_per_day, cost::kApril2013.price_per_kwh(), fraction);
        rep.add("scenario", cost::kApril2013.name);
        rep.add("quoted_savings_mwh_per_day", fixed(cost::kApril2013.quoted_savings_mwh, 1));
        rep.add("quoted_savings_per_day", fixed(cost::kApril2013.quoted_savings_usd, 0));
    } else if (o.scenario == cost::kOctober2013.name) {
        r = cost::energy_savings(cost::kOctober2013.watts_per_ghs, cost::kOctober2013.network_rate_ghs, o.price_per_kwh,
                                 fraction);
        rep.add("scenario", cost::kOctober2013.name);
    } else if (!o.scenario.empty()) {
        throw CLI::ValidationError("energy", "unknown scenario '" + o.scenario + "'");
    } else if (o.mwh_per_day > 0) {
        r = cost::energy_savings_from_daily(o.mwh_per_day, o.price_per_kwh, fraction);
    } else {
        r = cost::energy_savings(o.watts_per_ghs, o.rate_ghs, o.price_per_kwh, fraction);
    }
    rep.add("fraction", cost::fixed6(fraction));
    rep.add("price_per_kwh", cost::fixed6(o.scenario == cost::kApril2013.name ? cost::kApril2013.price_per_kwh() : o.price_per_kwh));
    rep.add("power_mw", fixed(r.power_mw, 3));
    rep.add("mwh_per_day", fixed(r.mwh_per_day, 3));
    rep.add("cost_per_day", fixed(r.cost_per_day, 2));
    rep.add("savings_mwh_per_day", fixed(r.savings_mwh_per_day, 3));
    rep.add("savings_per_day", fixed(r.savings_per_day, 2));
    rep.render(out, fmt);
    return kSuccess;
}

struct RetargetOptions {
    int epochs = 12;
    std::string nbits = "1d00ffff";
    double hashrate = 0;  // 0: whatever makes the first epoch run on schedule
    double growth = 1.25;
    std::uint64_t seed = 0x00c150ba5eedull;
    std::uint32_t clamp = reward::kDefaultClamp;
};

int cmd_retarget_sim(const RetargetOptions& o, Format fmt, std::ostream& out) {
    if (o.epochs <= 0) throw CLI::ValidationError("retarget-sim", "--epochs must be positive");
    reward::RetargetSimulation sim;
    sim.initial_target = decode_nbits(parse_u32(o.nbits, 16));
    sim.seed = o.seed;
    sim.clamp = o.clamp == 0 ? std::nullopt : std::optional<std::uint32_t>(o.clamp);
    double rate = o.hashrate > 0 ? o.hashrate : 1.0 / (probability_of(sim.initial_target) * reward::kTargetSpacing);
    for (int i = 0; i < o.epochs; ++i, rate *= o.growth) sim.hashrates.push_back(rate);
    const auto records = reward::simulate_retargets(sim);

    if (fmt != Format::csv) out << "# seed " << o.seed << '\n';
    out << (fmt == Format::csv ? "epoch,nbits,difficulty,hashrate,actual_span,mean_block_time\n"
                               : "epoch  nbits     difficulty        hashrate          span_s      mean_block_s\n");
    for (const auto& r : records) {
        if (fmt == Format::csv) {
            out << r.epoch << ',' << hex32(encode_nbits(r.target)) << ',' << fixed(difficulty_of(r.target), 6) << ','
                << fixed(r.hashrate, 0) << ',' << fixed(r.actual_span, 0) << ',' << fixed(r.mean_block_time, 2) << '\n';
        } else {
            out << std::left << std::setw(7) << r.epoch << std::setw(10) << hex32(encode_nbits(r.target)) << std::setw(18)
                << fixed(difficulty_of(r.target), 6) << std::setw(18) << fixed(r.hashrate, 0) << std::setw(12)
                << fixed(r.actual_span, 0) << fixed(r.mean_block_time, 2) << '\n';
        }
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cisolab: double-SHA-256 mining kernel, cost model and reward schedules"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format: text, kv or csv")
        ->check(CLI::IsMember({"text", "kv", "csv"}))
        ->capture_default_str();

    MineOptions mine_opts;
    auto* mine_cmd = app.add_subcommand("mine", "Scan nonces for a header that meets the target");
    mine_cmd->add_option("--template", mine_opts.template_path, "Work template file");
    mine_cmd->add_option("--header", mine_opts.header_hex, "80-byte header as 160 hex chars (nonce ignored)");
    mine_cmd->add_option("--target", mine_opts.target_hex, "Target override, 64 hex chars");
    mine_cmd->add_option("--target-bits", mine_opts.target_bits, "Target override 2^N")->check(CLI::Range(1, 255));
    mine_cmd->add_option("--nbits", mine_opts.nbits_hex, "Compact target, replaces the header's nbits");
    mine_cmd->add_option("--nonce-start", mine_opts.nonce_start, "First nonce word (message-word order)");
    mine_cmd->add_option("--nonce-count", mine_opts.nonce_count, "Number of nonces; default runs to 0xffffffff");
    mine_cmd->add_option("--threads", mine_opts.threads, "Worker threads")->capture_default_str();
    mine_cmd->add_option("--mode", mine_opts.mode, "auto, early or generic")->capture_default_str();

    std::string verify_hex, verify_target;
    auto* verify_cmd = app.add_subcommand("verify", "Check a header with the reference double hash only");
    verify_cmd->add_option("header", verify_hex, "Header as 160 hex chars")->required();
    verify_cmd->add_option("--target", verify_target, "Target override, 64 hex chars");

    BenchOptions bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "Naive versus optimized throughput");
    bench_cmd->add_option("--count", bench_opts.count, "Nonces per run")->capture_default_str();
    bench_cmd->add_option("--improvements", bench_opts.improvements, "Improvement set")->capture_default_str();
    bench_cmd->add_option("--threads", bench_opts.threads, "Worker threads")->capture_default_str();
    bench_cmd->add_option("--seed", bench_opts.seed, "Seed for the synthetic header")->capture_default_str();

    reward::Height reward_height = 0;
    std::string reward_schedule = "proposed", rounding = "exact";
    auto* reward_cmd = app.add_subcommand("reward", "Block reward at a height");
    reward_cmd->add_option("height", reward_height, "Block height")->required();
    reward_cmd->add_option("schedule", reward_schedule, "original or proposed")->capture_default_str();
    reward_cmd->add_option("--rounding", rounding, "Original schedule: exact or floor")->capture_default_str();

    std::string supply_schedule = "proposed";
    std::optional<reward::Height> supply_height;
    auto* supply_cmd = app.add_subcommand("supply", "Total or cumulative emission");
    supply_cmd->add_option("schedule", supply_schedule, "original or proposed")->capture_default_str();
    supply_cmd->add_option("--height", supply_height, "Cumulative supply of heights below this one");
    supply_cmd->add_option("--rounding", rounding, "Original schedule: exact or floor")->capture_default_str();

    std::vector<reward::Height> table_heights;
    auto* table_cmd = app.add_subcommand("table", "Old versus new reward at selected heights");
    table_cmd->add_option("--heights", table_heights, "Heights; default is the published comparison grid")
        ->delimiter(',');

    std::string adder_set = "full";
    auto* adders_cmd = app.add_subcommand("adders", "Compression equivalents and full-adder count");
    adders_cmd->add_option("improvements", adder_set, "none, full, or a list such as 1,2,3,X")->capture_default_str();

    EnergyOptions energy_opts;
    auto* energy_cmd = app.add_subcommand("energy", "Electricity savings estimate");
    energy_cmd->add_option("--scenario", energy_opts.scenario, "april-2013 or october-2013");
    energy_cmd->add_option("--watts-per-ghs", energy_opts.watts_per_ghs, "Power per GH/s");
    energy_cmd->add_option("--rate-ghs", energy_opts.rate_ghs, "Network hash rate in GH/s");
    energy_cmd->add_option("--mwh-per-day", energy_opts.mwh_per_day, "Reported daily consumption instead of a rate");
    energy_cmd->add_option("--price-kwh", energy_opts.price_per_kwh, "Price per kWh")->capture_default_str();
    energy_cmd->add_option("--fraction", energy_opts.fraction, "Savings fraction; default is the full set");

    RetargetOptions rt_opts;
    auto* rt_cmd = app.add_subcommand("retarget-sim", "Simulate difficulty retargeting under a growing hash rate");
    rt_cmd->add_option("--epochs", rt_opts.epochs, "2016-block epochs")->capture_default_str();
    rt_cmd->add_option("--nbits", rt_opts.nbits, "Initial compact target")->capture_default_str();
    rt_cmd->add_option("--hashrate", rt_opts.hashrate, "Initial hashes per second");
    rt_cmd->add_option("--growth", rt_opts.growth, "Hash-rate factor per epoch")->capture_default_str();
    rt_cmd->add_option("--seed", rt_opts.seed, "Random seed")->capture_default_str();
    rt_cmd->add_option("--clamp", rt_opts.clamp, "Clamp factor, 0 disables")->capture_default_str();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    const Format fmt = kFormats.at(format);
    try {
        if (*mine_cmd) return cmd_mine(mine_opts, fmt, out);
        if (*verify_cmd) return cmd_verify(verify_hex, verify_target, fmt, out);
        if (*bench_cmd) return cmd_bench(bench_opts, fmt, out);
        if (*reward_cmd) return cmd_reward(reward_height, reward_schedule, rounding, fmt, out);
        if (*supply_cmd) return cmd_supply(supply_schedule, supply_height, rounding, fmt, out);
        if (*table_cmd) return cmd_table(table_heights, fmt, out);
        if (*adders_cmd) return cmd_adders(adder_set, fmt, out);
        if (*energy_cmd) return cmd_energy(energy_opts, fmt, out);
        if (*rt_cmd) return cmd_retarget_sim(rt_opts, fmt, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DecodeError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace ciso::cli
