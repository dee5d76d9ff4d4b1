#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ldpcstore {

// Self-describing stored unit. On-disk and on-the-wire layout, all little
// endian, 36 bytes, payload immediately after:
//
//   offset 0   8 bytes  magic "LDPCSTO1"
//   offset 8   8 bytes  file_size (original file byte count)
//   offset 16  4 bytes  n
//   offset 20  4 bytes  m
//   offset 24  4 bytes  index (chunk index in [0, n+m))
//   offset 28  8 bytes  graph_fp (TannerGraph fingerprint)
struct ChunkHeader {
    static constexpr char kMagic[9] = "LDPCSTO1";
    static constexpr std::size_t kSize = 36;

    std::uint64_t file_size = 0;
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::uint32_t index = 0;
    std::uint64_t graph_fp = 0;

    std::vector<std::uint8_t> serialize() const;
    // nullopt on bad magic, short input, or index out of range.
    static std::optional<ChunkHeader> parse(const std::uint8_t* bytes, std::size_t len);

    bool operator==(const ChunkHeader&) const = default;
};

// Data chunk payload length: ceil(file_size / n). Data chunk i carries file
// bytes [i*L, (i+1)*L) zero-padded to L; file_size in the header makes the
// final trim exact.
std::uint64_t chunk_len(std::uint64_t file_size, std::size_t n);

// header + payload as one byte stream (the stored/transferred form)
std::vector<std::uint8_t> make_chunk_bytes(const ChunkHeader& header,
                                           const std::vector<std::uint8_t>& payload);

struct ParsedChunk {
    ChunkHeader header;
    std::vector<std::uint8_t> payload;
};

// Validates magic, index range and payload length against the header.
std::optional<ParsedChunk> parse_chunk_bytes(const std::vector<std::uint8_t>& bytes);

}  // namespace ldpcstore
