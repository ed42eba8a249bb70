#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ffcz {

// Fixed-size bit vector packed LSB-first: bit n lives in byte n/8, bit n%8.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t nbits) : nbits_(nbits), bytes_((nbits + 7) / 8, 0) {}
    BitVector(std::size_t nbits, std::vector<std::uint8_t> bytes)
        : nbits_(nbits), bytes_(std::move(bytes)) {}

    bool get(std::size_t n) const { return (bytes_[n >> 3] >> (n & 7)) & 1u; }
    void set(std::size_t n, bool v) {
        if (v)
            bytes_[n >> 3] |= static_cast<std::uint8_t>(1u << (n & 7));
        else
            bytes_[n >> 3] &= static_cast<std::uint8_t>(~(1u << (n & 7)));
    }

    std::size_t size() const { return nbits_; }
    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::size_t n = 0; n < nbits_; ++n) c += get(n);
        return c;
    }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    bool operator==(const BitVector& other) const = default;

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint8_t> bytes_;
};

} // namespace ffcz
