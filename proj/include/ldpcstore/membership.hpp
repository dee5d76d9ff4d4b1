#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldpcstore/rng.hpp"

namespace ldpcstore::membership {

enum class Status : std::uint8_t { joined, left };

std::string_view status_name(Status s);

struct HostRecord {
    std::uint64_t id = 0;
    std::string address;  // canonical host:port
    Status status = Status::joined;
    std::uint64_t seq = 0;
    std::int64_t last_heard_ms = 0;  // local bookkeeping, never serialized

    bool operator==(const HostRecord& o) const {
        return id == o.id && address == o.address && status == o.status && seq == o.seq;
    }
};

// Strictly-newer relation driving every merge: higher seq wins; at equal seq
// `left` dominates `joined` so merging is order-independent.
bool record_newer(const HostRecord& candidate, const HostRecord& incumbent);

// Weakly consistent membership map, one record per host id.
class HostList {
public:
    // Applies the newer-wins rule; returns true when the stored record
    // changed (which is what makes a rumour "news").
    bool merge_record(const HostRecord& r);

    const HostRecord* find(std::uint64_t id) const;
    HostRecord* find_mutable(std::uint64_t id);

    std::vector<HostRecord> records() const;  // ascending id
    std::vector<HostRecord> alive() const;    // status == joined
    std::size_t size() const { return records_.size(); }
    std::uint64_t version() const { return version_; }

    // Line format (persisted file, /hosts response, pull replies):
    //   <id-hex16> <address> <joined|left> <seq>
    std::string serialize() const;
    static HostList parse(const std::string& text);

    void save(const std::string& path) const;  // atomic (temp + rename)
    static std::optional<HostList> load(const std::string& path);

private:
    std::map<std::uint64_t, HostRecord> records_;
    std::uint64_t version_ = 0;
};

// Membership event travelling the gossip mesh.
struct Rumour {
    HostRecord subject;
    std::uint32_t hops = 0;
};

struct GossipParams {
    std::size_t fanout = 3;
    double decay = 0.5;  // forward probability is decay^hops
    std::int64_t t_min_ms = 1000;
    std::int64_t t_max_ms = 3000;
    int miss_threshold = 5;  // consecutive failed contacts before a `left`
};

struct ApplyResult {
    bool changed = false;
    bool forward = false;
};

// The rumour-mongering state machine: host list, pending-forward queue,
// failure counters and the seeded RNG stream all live here. No I/O; the
// node wires it to HTTP and timers, the simulator to virtual transport.
class GossipCore {
public:
    GossipCore(GossipParams params, std::uint64_t rng_seed)
        : params_(params), rng_(rng_seed) {}

    HostList& list() { return list_; }
    const HostList& list() const { return list_; }
    const GossipParams& params() const { return params_; }

    // Merge + decaying forward decision (coin with probability decay^hops).
    ApplyResult apply_rumour(const Rumour& r, std::int64_t now_ms);

    // Local event (own join/leave, detected failure): always queued.
    void originate(const HostRecord& rec);

    bool has_pending() const { return !pending_.empty(); }
    // Pending rumours for one push round, hop counts incremented.
    std::vector<Rumour> drain_pending();

    // F random alive peers excluding self (all of them when fewer).
    std::vector<HostRecord> choose_push_targets(std::uint64_t self_id);
    std::optional<HostRecord> choose_pull_target(std::uint64_t self_id);

    std::int64_t next_fire_delay_ms();

    void note_contact_ok(std::uint64_t id, std::int64_t now_ms);
    // Counts a failed contact; at miss_threshold originates a `left` rumour
    // (seq one above the stored record) and returns it.
    std::optional<Rumour> note_contact_failure(std::uint64_t id);

    // --- wire messages (line-oriented; ride POST /gossip) ---
    //   push <k> <sender-address>     then k lines
    //     <id-hex16> <address> <joined|left> <seq> <hops>
    //   pull <k> <sender-address>     then k lines
    //     <id-hex16> <seq>
    // A pull reply is host-list lines (records strictly newer than the
    // digest, plus records the digest lacks). A push reply is empty.
    static std::string encode_push(const std::vector<Rumour>& rumours,
                                   const std::string& sender);
    std::string encode_pull_digest(const std::string& sender) const;

    // Dispatches one incoming message; returns the reply body ("" for push).
    // Throws ConfigError on malformed input (state untouched).
    std::string handle_message(const std::string& body, std::int64_t now_ms);

    // Merge a pull reply (host-list lines). Pulled records are applied
    // without re-forwarding; pushes alone carry the epidemic.
    std::size_t apply_host_lines(const std::string& body, std::int64_t now_ms);

private:
    GossipParams params_;
    DetRng rng_;
    HostList list_;
    std::vector<Rumour> pending_;
    std::map<std::uint64_t, int> fail_counts_;
};

// Fetches a serialized host list from one address; empty optional on
// failure. The HTTP implementation lives in http_util; the simulator
// substitutes its own.
using HostListFetcher =
    std::function<std::optional<std::string>(const std::string& address)>;

// Startup list: queries seeds in order, first `quorum` successes are merged
// together with the persisted list (newer-wins). Throws AllSeedsUnreachable
// when no seed answers and ConfigError when `seeds` is empty.
HostList bootstrap(const std::vector<std::string>& seeds, const HostList* persisted,
                   unsigned quorum, const HostListFetcher& fetch);

}  // namespace ldpcstore::membership
