#include "ldpcstore/placement.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ldpcstore/errors.hpp"

namespace ldpcstore::placement {

std::string canonical_address(std::string_view host_port) {
    std::string out(host_port);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

HostId host_id_for(std::string_view address) {
    return HostId{ring_hash(canonical_address(address))};
}

bool valid_file_name(std::string_view name) {
    if (name.empty()) return false;
    for (unsigned char c : name)
        if (c == '/' || c < 0x20 || c == 0x7f) return false;
    return true;
}

std::string ChunkName::render() const {
    if (!valid_file_name(file)) throw ConfigError("invalid store file name: " + file);
    return file + '.' + std::to_string(index);
}

ChunkName ChunkName::parse(const std::string& rendered) {
    const std::size_t dot = rendered.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= rendered.size())
        throw ConfigError("malformed chunk name: " + rendered);
    const std::string suffix = rendered.substr(dot + 1);
    for (char c : suffix)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ConfigError("malformed chunk name index: " + rendered);
    ChunkName out;
    out.file = rendered.substr(0, dot);
    out.index = static_cast<std::uint32_t>(std::stoul(suffix));
    if (!valid_file_name(out.file)) throw ConfigError("malformed chunk name: " + rendered);
    return out;
}

HostId responsible_host(std::uint64_t chunk_hash, const std::vector<HostId>& hosts) {
    if (hosts.empty()) throw EmptyHostSet("responsible_host: no hosts");
    // clockwise successor: smallest id >= hash, wrapping to the minimum
    const HostId* successor = nullptr;
    const HostId* minimum = &hosts[0];
    for (const HostId& h : hosts) {
        if (h.id < minimum->id) minimum = &h;
        if (h.id >= chunk_hash && (!successor || h.id < successor->id)) successor = &h;
    }
    return successor ? *successor : *minimum;
}

HostId responsible_host(const ChunkName& chunk, const std::vector<HostId>& hosts) {
    return responsible_host(chunk.hash(), hosts);
}

Plan placement_plan(const std::string& file, std::size_t n, std::size_t m,
                    const std::vector<HostId>& hosts) {
    if (hosts.empty()) throw EmptyHostSet("placement_plan: no hosts");
    Plan plan;
    std::set<std::uint64_t> used;
    for (std::size_t i = 0; i < n + m; ++i) {
        ChunkName name{file, static_cast<std::uint32_t>(i)};
        HostId host = responsible_host(name, hosts);
        if (!used.insert(host.id).second) plan.has_collisions = true;
        plan.entries.push_back({std::move(name), host});
    }
    return plan;
}

}  // namespace ldpcstore::placement
