#include "ffcz/editset.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ffcz {

Dims half_dims(const Dims& dims) {
    Dims h = dims;
    h.back() = dims.back() / 2 + 1;
    return h;
}

std::size_t half_count(const Dims& dims) {
    return total_samples(half_dims(dims));
}

std::size_t half_to_full(const Dims& dims, std::size_t half_flat) {
    Dims h = half_dims(dims);
    auto coord = unflatten(h, half_flat);
    return flatten(dims, coord);
}

std::size_t full_to_half(const Dims& dims, std::size_t full_flat) {
    auto coord = unflatten(dims, full_flat);
    if (coord.back() > dims.back() / 2) return std::numeric_limits<std::size_t>::max();
    return flatten(half_dims(dims), coord);
}

double QuantizationParams::step_spatial(std::size_t n) const {
    return std::ldexp(2.0 * bounds.spatial.at(n), -m);
}

double QuantizationParams::step_freq_re(std::size_t full_k) const {
    return std::ldexp(2.0 * bounds.frequency.re_at(full_k), -m);
}

double QuantizationParams::step_freq_im(std::size_t full_k) const {
    return std::ldexp(2.0 * bounds.frequency.im_at(full_k), -m);
}

std::pair<BitVector, std::vector<double>> compact_edits(const std::vector<double>& dense) {
    BitVector flags(dense.size());
    std::vector<double> values;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (dense[i] != 0.0) {
            flags.set(i, true);
            values.push_back(dense[i]);
        }
    }
    return {std::move(flags), std::move(values)};
}

std::pair<BitVector, std::vector<std::complex<double>>> compact_edits(
    const std::vector<std::complex<double>>& dense) {
    BitVector flags(dense.size());
    std::vector<std::complex<double>> values;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (dense[i].real() != 0.0 || dense[i].imag() != 0.0) {
            flags.set(i, true);
            values.push_back(dense[i]);
        }
    }
    return {std::move(flags), std::move(values)};
}

std::vector<std::complex<double>> restrict_to_half(const Dims& dims,
                                                   const std::vector<std::complex<double>>& full) {
    std::size_t hn = half_count(dims);
    std::vector<std::complex<double>> half(hn);
    for (std::size_t h = 0; h < hn; ++h) half[h] = full[half_to_full(dims, h)];
    return half;
}

std::int32_t quantize_value(double value, double step) {
    if (!std::isfinite(value)) throw validation_error("quantize: non-finite edit value");
    double q = value / step;
    long long idx = std::llround(q); // rounds half away from zero
    if (idx > std::numeric_limits<std::int32_t>::max() ||
        idx < std::numeric_limits<std::int32_t>::min())
        throw validation_error("quantize: index exceeds 32-bit range");
    return static_cast<std::int32_t>(idx);
}

std::vector<std::int32_t> quantize_edits(const std::vector<double>& values,
                                         const std::vector<std::size_t>& sample_indices,
                                         const QuantizationParams& params) {
    if (values.size() != sample_indices.size())
        throw validation_error("quantize: values/index count mismatch");
    std::vector<std::int32_t> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = quantize_value(values[i], params.step_spatial(sample_indices[i]));
    return out;
}

std::vector<double> dequantize_edits(const std::vector<std::int32_t>& indices,
                                     const std::vector<std::size_t>& sample_indices,
                                     const QuantizationParams& params) {
    std::vector<double> out(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        out[i] = indices[i] * params.step_spatial(sample_indices[i]);
    return out;
}

std::vector<std::int32_t> quantize_edits(const Dims& dims,
                                         const std::vector<std::complex<double>>& values,
                                         const std::vector<std::size_t>& half_indices,
                                         const QuantizationParams& params) {
    if (values.size() != half_indices.size())
        throw validation_error("quantize: values/index count mismatch");
    std::vector<std::int32_t> lanes(2 * values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t k = half_to_full(dims, half_indices[i]);
        lanes[2 * i] = quantize_value(values[i].real(), params.step_freq_re(k));
        lanes[2 * i + 1] = quantize_value(values[i].imag(), params.step_freq_im(k));
    }
    return lanes;
}

std::vector<std::complex<double>> dequantize_edits(const Dims& dims,
                                                   const std::vector<std::int32_t>& lanes,
                                                   const std::vector<std::size_t>& half_indices,
                                                   const QuantizationParams& params) {
    if (lanes.size() != 2 * half_indices.size())
        throw validation_error("dequantize: lane/index count mismatch");
    std::vector<std::complex<double>> out(half_indices.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t k = half_to_full(dims, half_indices[i]);
        out[i] = {lanes[2 * i] * params.step_freq_re(k), lanes[2 * i + 1] * params.step_freq_im(k)};
    }
    return out;
}

std::vector<std::size_t> flagged_indices(const BitVector& flags) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags.get(i)) idx.push_back(i);
    return idx;
}

} // namespace ffcz
