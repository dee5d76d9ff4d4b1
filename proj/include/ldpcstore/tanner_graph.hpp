#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ldpcstore {

// Bipartite description of a small XOR erasure code: n data (left) nodes,
// m coding (right) nodes, and for each coding node the sorted list of data
// indices feeding its XOR. Kept canonical at all times: edge lists sorted
// ascending, no duplicates, never empty.
class TannerGraph {
public:
    TannerGraph() = default;
    // Sorts and validates; throws ConfigError on a malformed description.
    TannerGraph(std::size_t n, std::vector<std::vector<std::uint32_t>> edges);

    std::size_t n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    std::size_t total_blocks() const { return n_ + edges_.size(); }

    const std::vector<std::uint32_t>& edges(std::size_t coding) const { return edges_[coding]; }
    const std::vector<std::vector<std::uint32_t>>& all_edges() const { return edges_; }

    std::size_t edge_count() const;

    // Data-neighbour bitmask per coding node; only valid while n <= 64.
    std::vector<std::uint64_t> coding_masks() const;

    // Canonical text form, one graph per file:
    //   line 1: "ldpc 1 <n> <m>"
    //   then m lines, line j the sorted data indices of coding node j,
    //   space-separated. LF endings.
    std::string serialize() const;

    // Accepts the canonical form plus blank lines and '#' comments.
    static TannerGraph parse(const std::string& text);
    static TannerGraph load_file(const std::string& path);
    void save_file(const std::string& path) const;

    // Stable 64-bit digest of the canonical serialization (FNV-1a).
    std::uint64_t fingerprint() const;

    bool operator==(const TannerGraph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::uint32_t>> edges_;
};

// The (8,6) code shipped with the store: product of the Monte Carlo search,
// tolerates the loss of any 3 of its 14 blocks (f_max_blocks = 11).
const TannerGraph& deployment_graph();

}  // namespace ldpcstore
