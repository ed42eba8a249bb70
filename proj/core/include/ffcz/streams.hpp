#pragma once

#include <cstdint>
#include <vector>

#include "ffcz/bitvector.hpp"

namespace ffcz {

struct EncodedStreams {
    std::vector<std::uint8_t> flag_bytes;
    std::vector<std::uint8_t> index_bytes;
};

// lossless outer stage (dictionary coder), raw-size-prefixed frame
std::vector<std::uint8_t> outer_compress(const std::vector<std::uint8_t>& raw);
std::vector<std::uint8_t> outer_decompress(const std::vector<std::uint8_t>& frame);

// Flags: packed LSB-first bytes through the outer stage.
// Indices: zigzag -> blockwise canonical Huffman -> outer stage.
EncodedStreams encode_streams(const BitVector& flags, const std::vector<std::int32_t>& indices);
std::pair<BitVector, std::vector<std::int32_t>> decode_streams(const EncodedStreams& streams,
                                                               std::size_t flag_bits);

std::uint32_t zigzag(std::int32_t v);
std::int32_t unzigzag(std::uint32_t v);

} // namespace ffcz
