#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ldpcstore/rng.hpp"
#include "ldpcstore/tanner_graph.hpp"

namespace ldpcstore::codec {

using Bytes = std::vector<std::uint8_t>;

// dst ^= src, element-wise; equal lengths required.
void xor_into(Bytes& dst, const Bytes& src);

// Certified quality of a graph. f_max_blocks is the smallest k such that
// ANY k of the n+m blocks suffice to decode; f_avg the estimated average
// overhead factor with statistical error f_avg/sqrt(samples).
struct CodeMetrics {
    std::size_t f_max_blocks = 0;
    double f_avg = 0.0;
    double f_avg_err = 0.0;
    std::size_t samples = 0;
};

// Set of available block indices in [0, n+m); [0, n) are data blocks,
// [n, n+m) coding blocks.
class BlockSet {
public:
    explicit BlockSet(std::size_t total_blocks) : bits_(total_blocks, false) {}
    static BlockSet from_indices(std::size_t total_blocks, std::span<const std::size_t> indices);
    static BlockSet from_mask(std::size_t total_blocks, std::uint64_t mask);

    void add(std::size_t i);
    bool has(std::size_t i) const { return bits_[i]; }
    std::size_t count() const { return count_; }
    std::size_t total() const { return bits_.size(); }
    std::vector<std::size_t> indices() const;

private:
    std::vector<bool> bits_;
    std::size_t count_ = 0;
};

// XOR-encode: coding block j is the bytewise XOR of the data blocks listed
// in edges[j]. All data blocks must have identical length.
std::vector<Bytes> encode(const TannerGraph& graph, std::span<const Bytes> data_blocks);

// True iff peeling starting from `have` recovers all n data blocks.
// Pure decision; no payloads involved.
bool is_decodable(const TannerGraph& graph, const BlockSet& have);

// Fast-path variant on bitmasks, valid while n+m <= 64. Block i available
// iff bit i of have_mask is set.
bool is_decodable_mask(std::span<const std::uint64_t> coding_masks, std::size_t n, std::size_t m,
                       std::uint64_t have_mask);

struct PeelResult {
    std::vector<Bytes> data;   // the n recovered data blocks
    std::size_t xor_ops = 0;   // block-level XOR passes performed
};

// Iterative peeling decode over payload bytes: repeatedly solve a coding
// block with exactly one unknown data neighbour by XOR. Throws NotDecodable
// (carrying the still-unknown data indices) when peeling stalls.
PeelResult peel_decode(const TannerGraph& graph, const std::map<std::size_t, Bytes>& have);

struct FmaxResult {
    std::size_t f_max_blocks = 0;
    // A certificate for minimality: a missing set of size n+m-k+1 whose
    // complement (size k-1) is not decodable.
    std::vector<std::size_t> witness_missing;
};

// Exhaustive worst-case certification: smallest k such that every k-subset
// decodes. Iterates the missing-block count upward (1, 2, ...), stopping at
// the first level where some subset fails. Requires n+m <= 30.
FmaxResult compute_fmax(const TannerGraph& graph);

// Eq.-style average overhead estimate: `samples` random permutations of all
// block indices, counting blocks consumed until the prefix first decodes.
CodeMetrics estimate_avg_overhead(const TannerGraph& graph, std::size_t samples,
                                  std::uint64_t rng_seed);

// f_max + average estimate in one record.
CodeMetrics evaluate(const TannerGraph& graph, std::size_t samples, std::uint64_t rng_seed);

// Random graph: each (coding, data) pair connected independently with
// probability p; a coding node that comes out empty is redrawn until it has
// at least one edge. Deterministic given the RNG stream.
TannerGraph generate_graph(std::size_t n, std::size_t m, double p, DetRng& rng);
TannerGraph generate_graph(std::size_t n, std::size_t m, double p, std::uint64_t seed);

struct SearchParams {
    std::size_t n = 8;
    std::size_t m = 6;
    double p_lo = 0.4;
    double p_hi = 0.6;
    std::size_t budget = 100000;  // candidate graphs to draw
    std::uint64_t seed = 1;
    std::size_t samples = 10000;  // f_avg sample count for ties and the report
};

struct SearchResult {
    TannerGraph graph;
    CodeMetrics metrics;
};

// Monte Carlo search: draws `budget` graphs with p uniform in [p_lo, p_hi],
// keeps the minimum f_max_blocks, ties broken by lower f_avg then lower
// fingerprint. Fully deterministic given the seed: candidate generation
// consumes one master stream, while f_avg tie estimates are seeded from the
// candidate's fingerprint so evaluation order cannot perturb the stream.
SearchResult search_best_graph(const SearchParams& params);

}  // namespace ldpcstore::codec
