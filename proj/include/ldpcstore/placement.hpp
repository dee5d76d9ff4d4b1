#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldpcstore/hash.hpp"

namespace ldpcstore::placement {

// Position of a host on the 2^64 ring; derived from its canonical address
// string (`host:port`, lowercase).
struct HostId {
    std::uint64_t id = 0;
    auto operator<=>(const HostId&) const = default;
};

// The ring hash. Normative: FNV-1a 64-bit (see hash.hpp for the constants);
// the same function positions hosts and chunk names.
inline std::uint64_t ring_hash(std::string_view bytes) { return fnv1a64(bytes); }

std::string canonical_address(std::string_view host_port);
HostId host_id_for(std::string_view address);

// `<file>.<index>`; the file part is a flat name: non-empty, no '/', no
// control characters.
struct ChunkName {
    std::string file;
    std::uint32_t index = 0;

    std::string render() const;
    static ChunkName parse(const std::string& rendered);
    std::uint64_t hash() const { return ring_hash(render()); }

    bool operator==(const ChunkName&) const = default;
};

bool valid_file_name(std::string_view name);

// First host at or clockwise-after the chunk hash on the ring (wrapping).
// Deterministic for every holder of the same host set. Throws EmptyHostSet.
HostId responsible_host(const ChunkName& chunk, const std::vector<HostId>& hosts);
HostId responsible_host(std::uint64_t chunk_hash, const std::vector<HostId>& hosts);

struct PlanEntry {
    ChunkName chunk;
    HostId host;
};

struct Plan {
    std::vector<PlanEntry> entries;   // length n+m, index order
    bool has_collisions = false;      // some host owns more than one chunk
};

// Assignment of all n+m chunk names of `file`; depends only on the host ID
// set (input order irrelevant).
Plan placement_plan(const std::string& file, std::size_t n, std::size_t m,
                    const std::vector<HostId>& hosts);

}  // namespace ldpcstore::placement
