#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffcz/bitvector.hpp"
#include "ffcz/bounds.hpp"
#include "ffcz/field.hpp"

namespace ffcz {

// Frequency edits are stored over the non-redundant half spectrum: all
// components whose last-axis index is <= floor(N_last/2). These helpers map
// between the half grid and the full spectrum, both row-major.
Dims half_dims(const Dims& dims);
std::size_t half_count(const Dims& dims);
std::size_t half_to_full(const Dims& dims, std::size_t half_flat);
// Half-grid flat index of a full index, or SIZE_MAX when it lives in the
// mirrored half.
std::size_t full_to_half(const Dims& dims, std::size_t full_flat);

// Sparse edits: flags + nonzero values in ascending index order. Frequency
// side is indexed over the half grid.
struct EditSet {
    BitVector spatial_flags;
    std::vector<double> spatial_values;
    BitVector frequency_flags;
    std::vector<std::complex<double>> frequency_values;
};

// Full-precision override for one edit whose quantized form would violate
// the user's original bounds.
struct EscapeEntry {
    bool frequency = false;
    std::uint64_t index = 0; // sample index, or half-grid index for frequency
    double re = 0.0;
    double im = 0.0; // frequency only
};

// Quantization steps are derived from the original (un-shrunken) bounds:
// one axis of the s-/f-cube divided into 2^m intervals, step = 2*bound/2^m.
struct QuantizationParams {
    int m = 16;
    DualBounds bounds;

    double step_spatial(std::size_t n) const;
    double step_freq_re(std::size_t full_k) const;
    double step_freq_im(std::size_t full_k) const;
};

std::pair<BitVector, std::vector<double>> compact_edits(const std::vector<double>& dense);
std::pair<BitVector, std::vector<std::complex<double>>> compact_edits(
    const std::vector<std::complex<double>>& dense);

// Restricts a dense full-spectrum edit vector to the half grid.
std::vector<std::complex<double>> restrict_to_half(const Dims& dims,
                                                   const std::vector<std::complex<double>>& full);

// index = round-half-away-from-zero(value / step); signed 32-bit, magnitude
// uncapped (m sets precision, not range).
std::int32_t quantize_value(double value, double step);

// Sparse spatial values (at the flagged sample indices) -> one index each.
std::vector<std::int32_t> quantize_edits(const std::vector<double>& values,
                                         const std::vector<std::size_t>& sample_indices,
                                         const QuantizationParams& params);
std::vector<double> dequantize_edits(const std::vector<std::int32_t>& indices,
                                     const std::vector<std::size_t>& sample_indices,
                                     const QuantizationParams& params);

// Sparse frequency values (at half-grid indices) -> interleaved Re/Im lanes.
std::vector<std::int32_t> quantize_edits(const Dims& dims,
                                         const std::vector<std::complex<double>>& values,
                                         const std::vector<std::size_t>& half_indices,
                                         const QuantizationParams& params);
std::vector<std::complex<double>> dequantize_edits(const Dims& dims,
                                                   const std::vector<std::int32_t>& lanes,
                                                   const std::vector<std::size_t>& half_indices,
                                                   const QuantizationParams& params);

std::vector<std::size_t> flagged_indices(const BitVector& flags);

} // namespace ffcz
