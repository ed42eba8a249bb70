#pragma once

#include <cstdint>
#include <vector>

namespace ffcz {

// Blockwise canonical Huffman coder over u32 symbols. Each block carries its
// own (symbol, code length) table; codes are assigned canonically by
// (length, symbol) order. Block size is a codec constant.
namespace huffman {

inline constexpr std::size_t kBlockSymbols = 1u << 16;

std::vector<std::uint8_t> encode(const std::vector<std::uint32_t>& symbols);

// Throws format_error on malformed input.
std::vector<std::uint32_t> decode(const std::vector<std::uint8_t>& bytes);

} // namespace huffman

} // namespace ffcz
