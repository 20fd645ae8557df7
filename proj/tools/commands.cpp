#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <new>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <tuple>
#include <type_traits>

#include "bdtw/api.hpp"
#include "bdtw/error.hpp"
#include "bdtw/generate.hpp"
#include "bdtw/matching.hpp"
#include "bdtw/oracle.hpp"
#include "bdtw/reduction.hpp"
#include "bdtw/rng.hpp"
#include "bdtw/series_io.hpp"
#include "bench_report.hpp"

namespace bdtw::tools {

namespace {

// ---------------------------------------------------------------------------
// selftest

struct Failure {
    std::string x;
    std::string y;
    std::string detail;

    auto order() const { return std::make_tuple(x.size() + y.size(), x.size(), x, y); }
};

std::optional<Failure> check_pair(const BinarySeries& x, const BinarySeries& y) {
    const std::int64_t dp = oracle::dtw_dp(x, y);
    const std::int64_t linear = dtw_linear(x, y).value;
    const std::int64_t rle = dtw_rle(rle_encode(x), rle_encode(y)).value;
    if (dp == linear && dp == rle) return std::nullopt;
    std::ostringstream detail;
    detail << "dp=" << dp << " linear=" << linear << " rle=" << rle;
    return Failure{x.to_string(), y.to_string(), detail.str()};
}

std::optional<Failure> check_matching(std::uint64_t seed) {
    SplitMix64 rng(seed);
    const std::size_t s = 1 + rng.below(14);
    std::vector<Weight> w(s);
    for (auto& v : w) v = 1 + static_cast<Weight>(rng.below(20));
    const std::size_t cap = max_matching_size(s);
    TreeMatching tree(w, OrderedQueue{});
    BucketMatching bucket(w, BucketQueue(std::accumulate(w.begin(), w.end(), Weight{0})));
    Weight last = 0;
    for (std::size_t i = 1; i <= cap; ++i) {
        const Weight d_tree = tree.step();
        const Weight d_bucket = bucket.step();
        const Weight expected = oracle::matching_enum(w, i);
        if (tree.weight() != expected || bucket.weight() != expected || d_tree < last || d_tree != d_bucket) {
            std::ostringstream desc;
            desc << "matching weights=";
            for (std::size_t j = 0; j < s; ++j) desc << (j ? "," : "") << w[j];
            desc << " step=" << i << " tree=" << tree.weight() << " bucket=" << bucket.weight()
                 << " enum=" << expected;
            return Failure{"", "", desc.str()};
        }
        last = d_tree;
    }
    return std::nullopt;
}

void keep_smaller(std::optional<Failure>& best, Failure candidate) {
    if (!best || candidate.order() < best->order()) best = std::move(candidate);
}

BinarySeries random_biased(SplitMix64& rng) {
    static constexpr std::array<double, 3> kBias{0.1, 0.5, 0.9};
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::kBiased;
    spec.p = kBias[rng.below(kBias.size())];
    return generate_bits(spec, 1 + rng.below(500), rng.next());
}

}  // namespace

SelftestSummary run_selftest(int max_len, std::uint64_t trials, std::uint64_t seed) {
    SelftestSummary summary;
    std::vector<BinarySeries> all;
    for (int len = 1; len <= max_len; ++len) {
        for (std::uint32_t bits = 0; bits < (1U << len); ++bits) {
            std::vector<Symbol> s(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i) s[static_cast<std::size_t>(i)] = static_cast<Symbol>(bits >> (len - 1 - i) & 1U);
            all.emplace_back(std::move(s));
        }
    }

    std::optional<Failure> worst;
    std::uint64_t failures = 0;
    const auto count = static_cast<std::int64_t>(all.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : failures)
    for (std::int64_t i = 0; i < count; ++i) {
        for (const BinarySeries& y : all) {
            if (auto f = check_pair(all[static_cast<std::size_t>(i)], y)) {
                ++failures;
#pragma omp critical(bdtw_selftest)
                keep_smaller(worst, std::move(*f));
            }
        }
    }
    summary.exhaustive_pairs = all.size() * all.size();

    const auto trial_count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : failures)
    for (std::int64_t t = 0; t < trial_count; ++t) {
        SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        const BinarySeries x = random_biased(rng);
        const BinarySeries y = random_biased(rng);
        auto f = check_pair(x, y);
        if (!f) f = check_matching(rng.next());
        if (f) {
            ++failures;
#pragma omp critical(bdtw_selftest)
            keep_smaller(worst, std::move(*f));
        }
    }
    summary.random_pairs = trials;
    summary.matching_instances = trials;
    summary.failures = failures;
    if (worst) {
        summary.first_failure = worst->x.empty() ? worst->detail
                                                 : "x=" + worst->x + " y=" + worst->y + " " + worst->detail;
    }
    return summary;
}

namespace {

// ---------------------------------------------------------------------------
// dist

struct DistOptions {
    std::string format = "bits";
    std::string algo = "auto";
    bool json = false;
    bool dump_instances = false;
    bool delta_trace = false;
    std::string file_x;
    std::string file_y;
};

void print_diagnostics(const DistOptions& opt, const RleSeries& x, const RleSeries& y, std::size_t index,
                       std::ostream& err) {
    const ReductionOutput red = reduce(x, y);
    if (opt.dump_instances) {
        if (red.shortcut) {
            err << "pair " << index << ": shortcut " << *red.shortcut << '\n';
        }
        for (std::size_t i = 0; i < red.instances.size(); ++i) {
            const SubseqInstance& inst = red.instances[i];
            err << "pair " << index << " instance " << i << ": s=" << inst.size() << " r=" << inst.r()
                << " offset=" << inst.offset() << " weights=";
            const std::size_t shown = std::min<std::size_t>(inst.size(), 32);
            for (std::size_t j = 0; j < shown; ++j) err << (j ? "," : "") << inst.weights()[j];
            if (shown < inst.size()) err << ",...";
            err << '\n';
        }
    }
    if (opt.delta_trace) {
        for (std::size_t i = 0; i < red.instances.size(); ++i) {
            err << "pair " << index << " delta-trace " << i << ":";
            for (Weight d : bdtw::delta_trace(red.instances[i])) err << ' ' << d;
            err << '\n';
        }
    }
}

template <class Series>
int run_pairs(const DistOptions& opt, const std::vector<Series>& xs, const std::vector<Series>& ys,
              std::ostream& out, std::ostream& err) {
    if (xs.size() != ys.size()) {
        err << "error: " << opt.file_x << " holds " << xs.size() << " series but " << opt.file_y << " holds "
            << ys.size() << '\n';
        return kExitUsage;
    }
    const AlgoChoice algo = parse_algo_choice(opt.algo);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (opt.dump_instances || opt.delta_trace) {
            if constexpr (std::is_same_v<Series, RleSeries>) {
                print_diagnostics(opt, xs[i], ys[i], i, err);
            } else {
                print_diagnostics(opt, rle_encode(xs[i]), rle_encode(ys[i]), i, err);
            }
        }
        const DtwResult r = dtw(xs[i], ys[i], algo);
        if (opt.json) {
            out << to_json(r).dump() << '\n';
        } else {
            out << r.value << '\n';
        }
    }
    return kExitOk;
}

int cmd_dist(const DistOptions& opt, std::ostream& out, std::ostream& err) {
    const std::string text_x = read_text_file(opt.file_x);
    const std::string text_y = read_text_file(opt.file_y);
    if (opt.format == "rle") {
        return run_pairs(opt, parse_rle(text_x, opt.file_x), parse_rle(text_y, opt.file_y), out, err);
    }
    return run_pairs(opt, parse_bits(text_x, opt.file_x), parse_bits(text_y, opt.file_y), out, err);
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
    std::string gen = "uniform";
    std::string sizes;
    std::string algos = "auto";
    int trials = 5;
    std::uint64_t seed = 0;
    bool json = false;
};

std::vector<std::string_view> split_csv(std::string_view text) {
    std::vector<std::string_view> parts;
    while (true) {
        const std::size_t comma = text.find(',');
        parts.push_back(text.substr(0, comma));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return parts;
}

// Accepts decimal integers and powers of two written "2^k".
std::int64_t parse_size(std::string_view text) {
    std::int64_t value = 0;
    const bool power = text.starts_with("2^");
    const std::string_view digits = power ? text.substr(2) : text;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("bad size '" + std::string(text) + "'");
    }
    if (power) {
        if (value < 0 || value > 62) throw std::invalid_argument("size exponent out of range");
        value = std::int64_t{1} << value;
    }
    if (value < 1) throw std::invalid_argument("sizes must be positive");
    return value;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
    const GeneratorSpec gen = parse_generator(opt.gen);
    std::vector<std::int64_t> sizes;
    for (auto part : split_csv(opt.sizes)) sizes.push_back(parse_size(part));
    std::vector<AlgoChoice> algos;
    for (auto part : split_csv(opt.algos)) algos.push_back(parse_algo_choice(part));
    const BenchReport report = run_bench(gen, sizes, algos, opt.trials, opt.seed);
    if (opt.json) {
        out << to_json(report).dump() << '\n';
        return kExitOk;
    }
    out << "# seed=" << report.seed << " trials=" << report.trials << '\n';
    out << "generator\tsize\talgorithm\tmedian_ns\tchecksum\n";
    for (const BenchRow& row : report.rows) {
        out << row.generator << '\t' << row.size << '\t' << row.algorithm << '\t' << row.median_ns << '\t'
            << row.checksum << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact binary dynamic time warping"};
    app.require_subcommand(1);

    DistOptions dist;
    auto* dist_cmd = app.add_subcommand("dist", "DTW distance between paired series in two files");
    dist_cmd->add_option("--format", dist.format, "Input format")->check(CLI::IsMember({"bits", "rle"}));
    dist_cmd->add_option("--algo", dist.algo, "Algorithm")->check(CLI::IsMember({"auto", "linear", "rle", "dp"}));
    dist_cmd->add_flag("--json", dist.json, "Print the full result record as JSON");
    dist_cmd->add_flag("--dump-instances", dist.dump_instances, "Print the reduction output to stderr");
    dist_cmd->add_flag("--delta-trace", dist.delta_trace, "Print per-instance delta sequences to stderr");
    dist_cmd->add_option("FILE_X", dist.file_x)->required();
    dist_cmd->add_option("FILE_Y", dist.file_y)->required();

    int max_len = 8;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    auto* selftest_cmd = app.add_subcommand("selftest", "Check fast paths against the oracles");
    selftest_cmd->add_option("--max-len", max_len, "Exhaustive string length bound (<= 12)");
    selftest_cmd->add_option("--trials", trials, "Random trials");
    selftest_cmd->add_option("--seed", seed, "Seed");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time generated inputs");
    bench_cmd->add_option("--gen", bench.gen, "uniform | biased:P | few_runs:K | alternating");
    bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes, e.g. 2^20,2^21")->required();
    bench_cmd->add_option("--algos", bench.algos, "Comma-separated algorithms (auto,linear,rle,dp)");
    bench_cmd->add_option("--trials", bench.trials, "Trials per cell")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench.seed, "Seed");
    bench_cmd->add_flag("--json", bench.json, "Emit the report as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (dist_cmd->parsed()) return cmd_dist(dist, out, err);
        if (selftest_cmd->parsed()) {
            if (max_len < 1 || max_len > 12) {
                err << "error: --max-len must be in [1, 12]\n";
                return kExitUsage;
            }
            const SelftestSummary s = run_selftest(max_len, trials, seed);
            out << "exhaustive pairs checked: " << s.exhaustive_pairs << '\n'
                << "random pairs checked: " << s.random_pairs << '\n'
                << "matching instances checked: " << s.matching_instances << '\n'
                << "failures: " << s.failures << '\n';
            if (s.failures != 0) {
                out << "minimal failing case: " << s.first_failure << '\n';
                return kExitSelftestFailed;
            }
            out << "selftest passed\n";
            return kExitOk;
        }
        if (bench_cmd->parsed()) return cmd_bench(bench, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        const bool resource = e.code() == ErrorCode::kTooLarge || e.code() == ErrorCode::kDecodeTooLarge;
        return resource ? kExitResource : kExitUsage;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace bdtw::tools
