#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ffcz/errors.hpp"

namespace ffcz {

enum class Precision : std::uint8_t { f32 = 0, f64 = 1 };

inline std::size_t bytes_per_sample(Precision p) {
    return p == Precision::f32 ? 4 : 8;
}

using Dims = std::vector<std::size_t>;

// Validates 1-3 positive extents; returns total sample count.
std::size_t validate_dims(const Dims& dims);

std::size_t total_samples(const Dims& dims);

// Row-major flat index <-> per-axis coordinates (last index fastest).
std::vector<std::size_t> unflatten(const Dims& dims, std::size_t flat);
std::size_t flatten(const Dims& dims, const std::vector<std::size_t>& coord);

// Flat index of (dims - k) mod dims, applied per axis.
std::size_t mirror_index(const Dims& dims, std::size_t flat);

// N-dimensional real sample grid, row-major. Values are held in double
// regardless of the precision tag; the tag records the on-disk width.
struct ScalarField {
    Dims dims;
    std::vector<double> values;
    Precision precision = Precision::f64;

    // Validates extents, length and finiteness.
    static ScalarField create(Dims dims, std::vector<double> values,
                              Precision precision = Precision::f64);

    std::size_t size() const { return values.size(); }
};

// Full logical DFT of a ScalarField, forward-unscaled normalization.
struct ComplexSpectrum {
    Dims dims;
    std::vector<std::complex<double>> values;

    static ComplexSpectrum create(Dims dims, std::vector<std::complex<double>> values);

    std::size_t size() const { return values.size(); }
};

} // namespace ffcz
