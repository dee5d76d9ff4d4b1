#include "ldpcstore/chunk.hpp"

#include <cstring>

namespace ldpcstore {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

std::vector<std::uint8_t> ChunkHeader::serialize() const {
    std::vector<std::uint8_t> out;
    out.reserve(kSize);
    out.insert(out.end(), kMagic, kMagic + 8);
    put_u64(out, file_size);
    put_u32(out, n);
    put_u32(out, m);
    put_u32(out, index);
    put_u64(out, graph_fp);
    return out;
}

std::optional<ChunkHeader> ChunkHeader::parse(const std::uint8_t* bytes, std::size_t len) {
    if (len < kSize) return std::nullopt;
    if (std::memcmp(bytes, kMagic, 8) != 0) return std::nullopt;
    ChunkHeader h;
    h.file_size = get_u64(bytes + 8);
    h.n = get_u32(bytes + 16);
    h.m = get_u32(bytes + 20);
    h.index = get_u32(bytes + 24);
    h.graph_fp = get_u64(bytes + 28);
    if (h.n == 0) return std::nullopt;
    if (h.index >= h.n + h.m) return std::nullopt;
    return h;
}

std::uint64_t chunk_len(std::uint64_t file_size, std::size_t n) {
    return (file_size + n - 1) / n;
}

std::vector<std::uint8_t> make_chunk_bytes(const ChunkHeader& header,
                                           const std::vector<std::uint8_t>& payload) {
    std::vector<std::uint8_t> out = header.serialize();
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::optional<ParsedChunk> parse_chunk_bytes(const std::vector<std::uint8_t>& bytes) {
    auto header = ChunkHeader::parse(bytes.data(), bytes.size());
    if (!header) return std::nullopt;
    const std::uint64_t expect = chunk_len(header->file_size, header->n);
    if (bytes.size() - ChunkHeader::kSize != expect) return std::nullopt;
    ParsedChunk out;
    out.header = *header;
    out.payload.assign(bytes.begin() + ChunkHeader::kSize, bytes.end());
    return out;
}

}  // namespace ldpcstore
