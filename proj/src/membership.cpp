#include "ldpcstore/membership.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ldpcstore/config.hpp"
#include "ldpcstore/errors.hpp"
#include "ldpcstore/hash.hpp"
#include "ldpcstore/placement.hpp"

namespace ldpcstore::membership {

std::string_view status_name(Status s) { return s == Status::joined ? "joined" : "left"; }

bool record_newer(const HostRecord& candidate, const HostRecord& incumbent) {
    if (candidate.seq != incumbent.seq) return candidate.seq > incumbent.seq;
    return candidate.status == Status::left && incumbent.status == Status::joined;
}

bool HostList::merge_record(const HostRecord& r) {
    auto it = records_.find(r.id);
    if (it == records_.end()) {
        records_.emplace(r.id, r);
        ++version_;
        return true;
    }
    if (!record_newer(r, it->second)) return false;
    const std::int64_t heard = std::max(it->second.last_heard_ms, r.last_heard_ms);
    it->second = r;
    it->second.last_heard_ms = heard;
    ++version_;
    return true;
}

const HostRecord* HostList::find(std::uint64_t id) const {
    auto it = records_.find(id);
    return it == records_.end() ? nullptr : &it->second;
}

HostRecord* HostList::find_mutable(std::uint64_t id) {
    auto it = records_.find(id);
    return it == records_.end() ? nullptr : &it->second;
}

std::vector<HostRecord> HostList::records() const {
    std::vector<HostRecord> out;
    out.reserve(records_.size());
    for (const auto& [id, rec] : records_) out.push_back(rec);
    return out;
}

std::vector<HostRecord> HostList::alive() const {
    std::vector<HostRecord> out;
    for (const auto& [id, rec] : records_)
        if (rec.status == Status::joined) out.push_back(rec);
    return out;
}

namespace {

std::string record_line(const HostRecord& r) {
    std::string out = to_hex16(r.id);
    out += ' ';
    out += r.address;
    out += ' ';
    out += status_name(r.status);
    out += ' ';
    out += std::to_string(r.seq);
    return out;
}

HostRecord parse_record_line(const std::string& line) {
    std::istringstream in(line);
    std::string id_hex, address, status;
    std::uint64_t seq = 0;
    if (!(in >> id_hex >> address >> status >> seq))
        throw ConfigError("malformed host record: " + line);
    auto id = parse_hex16(id_hex);
    if (!id) throw ConfigError("malformed host id: " + line);
    HostRecord rec;
    rec.id = *id;
    rec.address = address;
    rec.seq = seq;
    if (status == "joined")
        rec.status = Status::joined;
    else if (status == "left")
        rec.status = Status::left;
    else
        throw ConfigError("malformed host status: " + line);
    return rec;
}

}  // namespace

std::string HostList::serialize() const {
    std::string out;
    for (const auto& [id, rec] : records_) {
        out += record_line(rec);
        out += '\n';
    }
    return out;
}

HostList HostList::parse(const std::string& text) {
    HostList list;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        list.merge_record(parse_record_line(t));
    }
    return list;
}

void HostList::save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write host list: " + tmp);
        f << serialize();
        if (!f.flush()) throw IoError("short write: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot replace host list: " + path);
}

std::optional<HostList> HostList::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

ApplyResult GossipCore::apply_rumour(const Rumour& r, std::int64_t now_ms) {
    HostRecord rec = r.subject;
    rec.last_heard_ms = now_ms;
    ApplyResult result;
    result.changed = list_.merge_record(rec);
    if (!result.changed) return result;  // stale rumours die here
    const double p = std::pow(params_.decay, static_cast<double>(r.hops));
    result.forward = rng_.coin(p);
    if (result.forward) pending_.push_back(r);
    return result;
}

void GossipCore::originate(const HostRecord& rec) {
    list_.merge_record(rec);
    pending_.push_back(Rumour{rec, 0});
}

std::vector<Rumour> GossipCore::drain_pending() {
    std::vector<Rumour> out = std::move(pending_);
    pending_.clear();
    for (Rumour& r : out) ++r.hops;
    return out;
}

std::vector<HostRecord> GossipCore::choose_push_targets(std::uint64_t self_id) {
    std::vector<HostRecord> peers;
    for (const HostRecord& r : list_.alive())
        if (r.id != self_id) peers.push_back(r);
    if (peers.size() > params_.fanout) {
        rng_.shuffle(peers);
        peers.resize(params_.fanout);
    }
    return peers;
}

std::optional<HostRecord> GossipCore::choose_pull_target(std::uint64_t self_id) {
    std::vector<HostRecord> peers;
    for (const HostRecord& r : list_.alive())
        if (r.id != self_id) peers.push_back(r);
    if (peers.empty()) return std::nullopt;
    return peers[static_cast<std::size_t>(rng_.below(peers.size()))];
}

std::int64_t GossipCore::next_fire_delay_ms() {
    const std::int64_t span = params_.t_max_ms - params_.t_min_ms;
    if (span <= 0) return params_.t_min_ms;
    return params_.t_min_ms + static_cast<std::int64_t>(rng_.below(
                                  static_cast<std::uint64_t>(span) + 1));
}

void GossipCore::note_contact_ok(std::uint64_t id, std::int64_t now_ms) {
    fail_counts_.erase(id);
    if (HostRecord* rec = list_.find_mutable(id)) rec->last_heard_ms = now_ms;
}

std::optional<Rumour> GossipCore::note_contact_failure(std::uint64_t id) {
    const int count = ++fail_counts_[id];
    if (count < params_.miss_threshold) return std::nullopt;
    fail_counts_.erase(id);
    const HostRecord* rec = list_.find(id);
    if (!rec || rec->status != Status::joined) return std::nullopt;
    HostRecord left = *rec;
    left.status = Status::left;
    left.seq = rec->seq + 1;
    originate(left);
    return Rumour{left, 0};
}

std::string GossipCore::encode_push(const std::vector<Rumour>& rumours,
                                    const std::string& sender) {
    std::string out = "push " + std::to_string(rumours.size()) + ' ' + sender + '\n';
    for (const Rumour& r : rumours) {
        out += record_line(r.subject);
        out += ' ';
        out += std::to_string(r.hops);
        out += '\n';
    }
    return out;
}

std::string GossipCore::encode_pull_digest(const std::string& sender) const {
    const auto records = list_.records();
    std::string out = "pull " + std::to_string(records.size()) + ' ' + sender + '\n';
    for (const HostRecord& r : records) {
        out += to_hex16(r.id);
        out += ' ';
        out += std::to_string(r.seq);
        out += '\n';
    }
    return out;
}

std::string GossipCore::handle_message(const std::string& body, std::int64_t now_ms) {
    std::istringstream in(body);
    std::string head;
    if (!std::getline(in, head)) throw ConfigError("gossip: empty message");
    std::istringstream hl(head);
    std::string kind, sender;
    std::size_t count = 0;
    if (!(hl >> kind >> count >> sender)) throw ConfigError("gossip: malformed header");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (!t.empty()) lines.push_back(t);
    }
    if (lines.size() != count) throw ConfigError("gossip: record count mismatch");

    // a message is proof of life for its sender
    note_contact_ok(placement::host_id_for(sender).id, now_ms);

    if (kind == "push") {
        // parse fully before applying so malformed input cannot half-apply
        std::vector<Rumour> rumours;
        rumours.reserve(lines.size());
        for (const std::string& l : lines) {
            const std::size_t cut = l.find_last_of(' ');
            if (cut == std::string::npos) throw ConfigError("gossip: malformed push line");
            Rumour r;
            r.subject = parse_record_line(l.substr(0, cut));
            try {
                r.hops = static_cast<std::uint32_t>(std::stoul(l.substr(cut + 1)));
            } catch (const std::exception&) {
                throw ConfigError("gossip: malformed hop count");
            }
            rumours.push_back(std::move(r));
        }
        for (const Rumour& r : rumours) apply_rumour(r, now_ms);
        return "";
    }
    if (kind == "pull") {
        std::map<std::uint64_t, std::uint64_t> digest;
        for (const std::string& l : lines) {
            std::istringstream dl(l);
            std::string id_hex;
            std::uint64_t seq = 0;
            if (!(dl >> id_hex >> seq)) throw ConfigError("gossip: malformed digest line");
            auto id = parse_hex16(id_hex);
            if (!id) throw ConfigError("gossip: malformed digest id");
            digest[*id] = seq;
        }
        std::string reply;
        for (const HostRecord& rec : list_.records()) {
            auto it = digest.find(rec.id);
            if (it == digest.end() || rec.seq > it->second) {
                reply += record_line(rec);
                reply += '\n';
            }
        }
        return reply;
    }
    throw ConfigError("gossip: unknown message kind: " + kind);
}

std::size_t GossipCore::apply_host_lines(const std::string& body, std::int64_t now_ms) {
    std::size_t applied = 0;
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        HostRecord rec = parse_record_line(t);
        rec.last_heard_ms = now_ms;
        if (list_.merge_record(rec)) ++applied;
    }
    return applied;
}

HostList bootstrap(const std::vector<std::string>& seeds, const HostList* persisted,
                   unsigned quorum, const HostListFetcher& fetch) {
    if (seeds.empty()) throw ConfigError("bootstrap: no seed addresses configured");
    if (quorum < 1) quorum = 1;

    HostList merged;
    if (persisted)
        for (const HostRecord& rec : persisted->records()) merged.merge_record(rec);

    unsigned successes = 0;
    for (const std::string& seed : seeds) {
        auto body = fetch(seed);
        if (!body) continue;
        HostList remote = HostList::parse(*body);
        for (const HostRecord& rec : remote.records()) merged.merge_record(rec);
        if (++successes >= quorum) break;
    }
    if (successes == 0) throw AllSeedsUnreachable("bootstrap: no seed responded");
    return merged;
}

}  // namespace ldpcstore::membership
