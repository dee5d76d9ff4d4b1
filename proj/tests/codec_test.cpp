#include "ldpcstore/codec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ldpcstore/errors.hpp"
#include "ldpcstore/rng.hpp"
#include "ldpcstore/tanner_graph.hpp"

using namespace ldpcstore;
using namespace ldpcstore::codec;

namespace {

// n=3, m=2 systematic example: c0 = d0^d1, c1 = d1^d2.
TannerGraph small_graph() { return TannerGraph(3, {{0, 1}, {1, 2}}); }

Bytes bytes_of(std::initializer_list<int> vals) {
    Bytes out;
    for (int v : vals) out.push_back(static_cast<std::uint8_t>(v));
    return out;
}

std::vector<Bytes> random_blocks(DetRng& rng, std::size_t count, std::size_t len) {
    std::vector<Bytes> out(count);
    for (auto& b : out) {
        b.resize(len);
        for (auto& byte : b) byte = static_cast<std::uint8_t>(rng.below(256));
    }
    return out;
}

// Mixed bag of small graphs for exhaustive properties.
std::vector<TannerGraph> test_graphs(std::size_t max_total) {
    std::vector<TannerGraph> graphs;
    graphs.push_back(TannerGraph(1, {}));
    graphs.push_back(TannerGraph(1, {{0}}));
    graphs.push_back(TannerGraph(2, {{0, 1}}));
    graphs.push_back(TannerGraph(2, {{0}, {1}}));
    graphs.push_back(TannerGraph(2, {{0, 1}, {0}}));
    graphs.push_back(small_graph());
    DetRng rng(20240811);
    for (int i = 0; i < 24; ++i) {
        const std::size_t n = 1 + rng.below(6);
        const std::size_t max_m = max_total > n ? max_total - n : 0;
        const std::size_t m = rng.below(max_m + 1);
        const double p = 0.25 + 0.5 * rng.uniform();
        graphs.push_back(generate_graph(n, m, p, rng));
    }
    std::erase_if(graphs, [&](const TannerGraph& g) { return g.total_blocks() > max_total; });
    return graphs;
}

}  // namespace

TEST_CASE("encode: single-bit example from the systematic 3+2 graph") {
    // one-byte "words": d0=1, d1=0, d2=0 -> c0 = d0 ^ d1 = 1
    auto g = small_graph();
    std::vector<Bytes> data = {bytes_of({1}), bytes_of({0}), bytes_of({0})};
    auto coding = encode(g, data);
    REQUIRE(coding.size() == 2);
    CHECK(coding[0] == bytes_of({1}));
    CHECK(coding[1] == bytes_of({0}));
}

TEST_CASE("encode: all-zero data gives all-zero coding blocks") {
    auto g = small_graph();
    std::vector<Bytes> data(3, Bytes(16, 0));
    for (const auto& c : encode(g, data)) CHECK(c == Bytes(16, 0));
}

TEST_CASE("encode: bytewise XOR on a 2+1 graph") {
    TannerGraph g(2, {{0, 1}});
    std::vector<Bytes> data = {bytes_of({0xFF, 0xFF}), bytes_of({0x0F, 0x0F})};
    auto coding = encode(g, data);
    CHECK(coding[0] == bytes_of({0xF0, 0xF0}));
}

TEST_CASE("encode: rejects bad inputs") {
    auto g = small_graph();
    std::vector<Bytes> two(2, Bytes(4, 0));
    CHECK_THROWS_AS((void)encode(g, two), ConfigError);
    std::vector<Bytes> uneven = {Bytes(4, 0), Bytes(4, 0), Bytes(5, 0)};
    CHECK_THROWS_AS((void)encode(g, uneven), ConfigError);
}

TEST_CASE("encode: linearity over XOR") {
    DetRng rng(7);
    for (const auto& g : test_graphs(10)) {
        auto a = random_blocks(rng, g.n(), 32);
        auto b = random_blocks(rng, g.n(), 32);
        auto ca = encode(g, a);
        auto cb = encode(g, b);
        auto sum = a;
        for (std::size_t i = 0; i < sum.size(); ++i) xor_into(sum[i], b[i]);
        auto csum = encode(g, sum);
        for (std::size_t j = 0; j < g.m(); ++j) {
            Bytes expect = ca[j];
            xor_into(expect, cb[j]);
            CHECK(csum[j] == expect);
        }
    }
}

TEST_CASE("is_decodable: basics") {
    auto g = small_graph();
    CHECK(is_decodable(g, BlockSet::from_mask(5, 0b00111)));        // all data
    CHECK(is_decodable(g, BlockSet::from_mask(5, 0b01110)));        // d1,d2 + c0 solves d0
    CHECK(is_decodable(g, BlockSet::from_mask(5, 0b11010)));        // d1 + c0,c1
    CHECK_FALSE(is_decodable(g, BlockSet::from_mask(5, 0b11000)));  // only coding
    CHECK_FALSE(is_decodable(g, BlockSet::from_mask(5, 0b00011)));  // d2 unreachable
}

TEST_CASE("is_decodable: 2+1 graph, every 2-subset decodes, no 1-subset does") {
    TannerGraph g(2, {{0, 1}});
    int two_ok = 0, one_ok = 0;
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        const bool d = is_decodable(g, BlockSet::from_mask(3, mask));
        const int pop = __builtin_popcountll(mask);
        if (pop == 2 && d) ++two_ok;
        if (pop == 1 && d) ++one_ok;
    }
    CHECK(two_ok == 3);
    CHECK(one_ok == 0);
}

TEST_CASE("BlockSet validation") {
    CHECK_THROWS_AS(BlockSet(3).add(3), ConfigError);
    BlockSet s(3);
    s.add(1);
    CHECK_THROWS_AS(s.add(1), ConfigError);
    CHECK(s.count() == 1);
}

TEST_CASE("peel_decode: all data present returns verbatim with zero XORs") {
    auto g = small_graph();
    DetRng rng(11);
    auto data = random_blocks(rng, 3, 64);
    std::map<std::size_t, Bytes> have;
    for (std::size_t i = 0; i < 3; ++i) have[i] = data[i];
    auto result = peel_decode(g, have);
    CHECK(result.xor_ops == 0);
    CHECK(result.data == data);
}

TEST_CASE("peel_decode: recovers a single word by the XOR rule") {
    // have d1=0 and c0=1 (c0 = d0^d1), plus d2 directly: d0 = c0 ^ d1 = 1
    auto g = small_graph();
    std::map<std::size_t, Bytes> have;
    have[1] = bytes_of({0});
    have[2] = bytes_of({0});
    have[3] = bytes_of({1});  // c0
    auto result = peel_decode(g, have);
    CHECK(result.data[0] == bytes_of({1}));
    CHECK(result.data[1] == bytes_of({0}));
    CHECK(result.data[2] == bytes_of({0}));
}

TEST_CASE("peel_decode: failure names the unknown data indices") {
    auto g = small_graph();
    std::map<std::size_t, Bytes> have;
    have[0] = bytes_of({1});
    try {
        (void)peel_decode(g, have);
        FAIL("expected NotDecodable");
    } catch (const NotDecodable& e) {
        CHECK(e.unknown_data == std::vector<std::size_t>{1, 2});
    }
}

TEST_CASE("peel_decode: rejects uneven block lengths and bad indices") {
    auto g = small_graph();
    std::map<std::size_t, Bytes> have;
    have[0] = Bytes(4, 0);
    have[1] = Bytes(5, 0);
    CHECK_THROWS_AS((void)peel_decode(g, have), ConfigError);
    std::map<std::size_t, Bytes> bad;
    bad[5] = Bytes(4, 0);
    CHECK_THROWS_AS((void)peel_decode(g, bad), ConfigError);
}

// Exhaustive consistency: peel_decode succeeds exactly where is_decodable
// says so, and on success reproduces the data bit-exactly.
TEST_CASE("peel_decode == is_decodable on all subsets of all small graphs") {
    DetRng rng(31337);
    for (const auto& g : test_graphs(10)) {
        const std::size_t total = g.total_blocks();
        const auto data = random_blocks(rng, g.n(), 8);
        const auto coding = encode(g, data);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
            const bool expect = is_decodable(g, BlockSet::from_mask(total, mask));
            std::map<std::size_t, Bytes> have;
            for (std::size_t i = 0; i < total; ++i)
                if (mask >> i & 1) have[i] = i < g.n() ? data[i] : coding[i - g.n()];
            if (expect) {
                auto result = peel_decode(g, have);
                REQUIRE(result.data == data);
            } else {
                CHECK_THROWS_AS((void)peel_decode(g, have), NotDecodable);
            }
        }
    }
}

TEST_CASE("is_decodable_mask agrees with the generic path") {
    DetRng rng(99);
    for (const auto& g : test_graphs(10)) {
        const auto masks = g.coding_masks();
        const std::size_t total = g.total_blocks();
        for (int t = 0; t < 64; ++t) {
            const std::uint64_t mask = rng.next_u64() & ((std::uint64_t{1} << total) - 1);
            CHECK(is_decodable_mask(masks, g.n(), g.m(), mask) ==
                  is_decodable(g, BlockSet::from_mask(total, mask)));
        }
    }
}

TEST_CASE("compute_fmax: known small cases") {
    CHECK(compute_fmax(TannerGraph(1, {})).f_max_blocks == 1);
    CHECK(compute_fmax(TannerGraph(1, {{0}})).f_max_blocks == 1);
    // {0},{1}: losing {d0, c0} strands d0, so k = 3
    CHECK(compute_fmax(TannerGraph(2, {{0}, {1}})).f_max_blocks == 3);
    // {0,1},{0}: losing {d1, c0} strands d1, so k = 3 as well
    CHECK(compute_fmax(TannerGraph(2, {{0, 1}, {0}})).f_max_blocks == 3);
    // 2+1 parity: any 2 of 3 blocks decode
    CHECK(compute_fmax(TannerGraph(2, {{0, 1}})).f_max_blocks == 2);
}

TEST_CASE("compute_fmax: size limit enforced") {
    std::vector<std::vector<std::uint32_t>> edges(11, std::vector<std::uint32_t>{0});
    CHECK_THROWS_AS((void)compute_fmax(TannerGraph(20, std::move(edges))), SizeLimitExceeded);
}

// Soundness: every k-subset decodes, some (k-1)-subset fails; the witness
// certifies the failing level.
TEST_CASE("compute_fmax: exhaustive soundness on random graphs") {
    DetRng rng(4242);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + rng.below(6);
        const std::size_t m = 1 + rng.below(5);
        auto g = generate_graph(n, m, 0.5, rng);
        const std::size_t total = g.total_blocks();
        const auto result = compute_fmax(g);
        const std::size_t k = result.f_max_blocks;
        REQUIRE(k >= n);
        REQUIRE(k <= total);

        std::size_t fail_at_k = 0, fail_below = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
            const auto pop = static_cast<std::size_t>(__builtin_popcountll(mask));
            if (pop != k && pop + 1 != k) continue;
            const bool d = is_decodable(g, BlockSet::from_mask(total, mask));
            if (pop == k && !d) ++fail_at_k;
            if (pop + 1 == k && !d) ++fail_below;
        }
        CHECK(fail_at_k == 0);
        if (k > n) CHECK(fail_below > 0);  // k == n: every (n-1)-subset fails trivially

        // witness: complement of the missing set must not decode
        if (!result.witness_missing.empty()) {
            CHECK(result.witness_missing.size() == total - k + 1);
            BlockSet have(total);
            std::set<std::size_t> missing(result.witness_missing.begin(),
                                          result.witness_missing.end());
            for (std::size_t i = 0; i < total; ++i)
                if (!missing.count(i)) have.add(i);
            CHECK_FALSE(is_decodable(g, have));
        }
    }
}

TEST_CASE("estimate_avg_overhead: m = 0 means exactly 1 for every seed") {
    TannerGraph g(4, {});
    for (std::uint64_t seed : {1ull, 7ull, 12345ull}) {
        auto m = estimate_avg_overhead(g, 200, seed);
        CHECK(m.f_avg == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("estimate_avg_overhead: 2+1 parity graph has f_avg exactly 1") {
    // every permutation decodes after 2 of the 3 blocks (enumerated by hand)
    TannerGraph g(2, {{0, 1}});
    auto m = estimate_avg_overhead(g, 500, 42);
    CHECK(m.f_avg == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.f_avg_err == doctest::Approx(1.0 / std::sqrt(500.0)).epsilon(1e-9));
}

TEST_CASE("estimate_avg_overhead: deterministic given seed") {
    DetRng rng(5);
    auto g = generate_graph(6, 4, 0.5, rng);
    auto a = estimate_avg_overhead(g, 1000, 99);
    auto b = estimate_avg_overhead(g, 1000, 99);
    CHECK(a.f_avg == b.f_avg);
    CHECK(a.f_avg_err == b.f_avg_err);
}

// Error model: the scatter of independent estimates should match the
// reported f_avg/sqrt(s) within a factor of 2.
TEST_CASE("estimate_avg_overhead: scatter across seeds matches reported error") {
    DetRng rng(8);
    auto g = generate_graph(8, 6, 0.5, rng);
    const std::size_t samples = 400;
    const int runs = 40;
    std::vector<double> estimates;
    double err_sum = 0;
    for (int i = 0; i < runs; ++i) {
        auto m = estimate_avg_overhead(g, samples, 1000 + static_cast<std::uint64_t>(i));
        estimates.push_back(m.f_avg);
        err_sum += m.f_avg_err;
    }
    const double mean =
        std::accumulate(estimates.begin(), estimates.end(), 0.0) / estimates.size();
    double var = 0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= estimates.size() - 1;
    const double reported = err_sum / runs;
    CHECK(std::sqrt(var) <= 2.0 * reported);
}

TEST_CASE("generate_graph: forced edge when n = 1") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto g = generate_graph(1, 1, 0.3, seed);
        CHECK(g.edges(0) == std::vector<std::uint32_t>{0});
    }
}

TEST_CASE("generate_graph: deterministic and seed-sensitive") {
    auto a = generate_graph(3, 2, 0.5, std::uint64_t{77});
    auto b = generate_graph(3, 2, 0.5, std::uint64_t{77});
    CHECK(a == b);
    CHECK(a.fingerprint() == b.fingerprint());
}

TEST_CASE("generate_graph: rejects p outside (0,1)") {
    CHECK_THROWS_AS((void)generate_graph(3, 2, 0.0, std::uint64_t{1}), ConfigError);
    CHECK_THROWS_AS((void)generate_graph(3, 2, 1.0, std::uint64_t{1}), ConfigError);
}

TEST_CASE("generate_graph: mean edge count per coding node is binomial") {
    // p=0.5, n=8: the empty-row redraw conditions the mean at
    // n*p / (1 - (1-p)^n) = 4.01569...; 10000 rows, 3 sigma window.
    DetRng rng(123456);
    const std::size_t rows = 10000;
    std::size_t edges = 0;
    for (std::size_t i = 0; i < rows; ++i)
        edges += generate_graph(8, 1, 0.5, rng).edges(0).size();
    const double mean = static_cast<double>(edges) / static_cast<double>(rows);
    const double expect = 8 * 0.5 / (1.0 - std::pow(0.5, 8));
    const double sigma = std::sqrt(8 * 0.25 / static_cast<double>(rows));
    CHECK(std::abs(mean - expect) <= 3 * sigma);
}

TEST_CASE("search_best_graph: budget 1 returns the lone candidate") {
    SearchParams p;
    p.n = 3;
    p.m = 2;
    p.budget = 1;
    p.seed = 2024;
    p.samples = 500;
    auto r = search_best_graph(p);
    CHECK(r.metrics.f_max_blocks == compute_fmax(r.graph).f_max_blocks);
    CHECK(r.metrics.samples == 500);
    CHECK(r.metrics.f_avg >= 1.0);
}

TEST_CASE("search_best_graph: finds k=3 on the 2+2 shape") {
    SearchParams p;
    p.n = 2;
    p.m = 2;
    p.budget = 64;
    p.seed = 5;
    p.samples = 200;
    auto r = search_best_graph(p);
    CHECK(r.metrics.f_max_blocks == 3);  // best achievable: enumerated by hand
}

TEST_CASE("search_best_graph: deterministic") {
    SearchParams p;
    p.n = 5;
    p.m = 3;
    p.budget = 300;
    p.seed = 99;
    p.samples = 300;
    auto a = search_best_graph(p);
    auto b = search_best_graph(p);
    CHECK(a.graph.fingerprint() == b.graph.fingerprint());
    CHECK(a.metrics.f_avg == b.metrics.f_avg);
}

TEST_CASE("round-trip: any decodable subset reproduces the data") {
    DetRng rng(2718);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 2 + rng.below(5);
        const std::size_t m = 1 + rng.below(4);
        auto g = generate_graph(n, m, 0.5, rng);
        const auto data = random_blocks(rng, n, 256);
        const auto coding = encode(g, data);
        const std::size_t total = g.total_blocks();
        for (int pick = 0; pick < 24; ++pick) {
            const std::uint64_t mask = rng.next_u64() & ((std::uint64_t{1} << total) - 1);
            if (!is_decodable(g, BlockSet::from_mask(total, mask))) continue;
            std::map<std::size_t, Bytes> have;
            for (std::size_t i = 0; i < total; ++i)
                if (mask >> i & 1) have[i] = i < n ? data[i] : coding[i - n];
            CHECK(peel_decode(g, have).data == data);
        }
    }
}
