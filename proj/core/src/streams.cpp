#include "ffcz/streams.hpp"

#include <zlib.h>

#include <cstring>
#include <string>

#include "ffcz/errors.hpp"
#include "ffcz/huffman.hpp"

namespace ffcz {

std::uint32_t zigzag(std::int32_t v) {
    return (static_cast<std::uint32_t>(v) << 1) ^ static_cast<std::uint32_t>(v >> 31);
}

std::int32_t unzigzag(std::uint32_t v) {
    return static_cast<std::int32_t>((v >> 1) ^ (~(v & 1) + 1));
}

std::vector<std::uint8_t> outer_compress(const std::vector<std::uint8_t>& raw) {
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> out(sizeof(std::uint64_t) + bound);
    std::uint64_t raw_size = raw.size();
    std::memcpy(out.data(), &raw_size, sizeof(raw_size));
    int rc = compress2(out.data() + sizeof(raw_size), &bound,
                       raw.empty() ? reinterpret_cast<const Bytef*>("") : raw.data(),
                       static_cast<uLong>(raw.size()), Z_BEST_COMPRESSION);
    if (rc != Z_OK) throw format_error("outer_compress failed: zlib rc " + std::to_string(rc));
    out.resize(sizeof(raw_size) + bound);
    return out;
}

std::vector<std::uint8_t> outer_decompress(const std::vector<std::uint8_t>& frame) {
    if (frame.size() < sizeof(std::uint64_t)) throw format_error("outer frame truncated");
    std::uint64_t raw_size;
    std::memcpy(&raw_size, frame.data(), sizeof(raw_size));
    if (raw_size == 0) return {};
    std::vector<std::uint8_t> out(raw_size);
    uLongf out_len = static_cast<uLongf>(raw_size);
    int rc = uncompress(out.data(), &out_len, frame.data() + sizeof(raw_size),
                        static_cast<uLong>(frame.size() - sizeof(raw_size)));
    if (rc != Z_OK || out_len != raw_size)
        throw format_error("outer_decompress failed: corrupt frame");
    return out;
}

EncodedStreams encode_streams(const BitVector& flags, const std::vector<std::int32_t>& indices) {
    EncodedStreams s;
    s.flag_bytes = outer_compress(flags.bytes());
    std::vector<std::uint32_t> symbols(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) symbols[i] = zigzag(indices[i]);
    s.index_bytes = outer_compress(huffman::encode(symbols));
    return s;
}

std::pair<BitVector, std::vector<std::int32_t>> decode_streams(const EncodedStreams& streams,
                                                               std::size_t flag_bits) {
    std::vector<std::uint8_t> flag_raw = outer_decompress(streams.flag_bytes);
    if (flag_raw.size() != (flag_bits + 7) / 8)
        throw format_error("decode_streams: flag payload length mismatch");
    BitVector flags(flag_bits, std::move(flag_raw));

    std::vector<std::uint32_t> symbols = huffman::decode(outer_decompress(streams.index_bytes));
    std::vector<std::int32_t> indices(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) indices[i] = unzigzag(symbols[i]);
    return {std::move(flags), std::move(indices)};
}

} // namespace ffcz
