#include "ffcz/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ffcz/transform.hpp"

namespace ffcz {

PowerSpectrum power_spectrum(const ScalarField& field) {
    std::size_t total = field.size();
    double mean = 0.0;
    for (double v : field.values) mean += v;
    mean /= static_cast<double>(total);

    double max_abs = 0.0;
    for (double v : field.values) max_abs = std::max(max_abs, std::abs(v));

    PowerSpectrum out;
    out.mean = mean;
    // The paper's (x - mean)/mean normalization divides by zero for zero-mean
    // data; fall back to plain mean removal under the guard.
    out.mean_fallback = std::abs(mean) <= 1e-12 * max_abs;

    std::vector<double> fluct(total);
    for (std::size_t n = 0; n < total; ++n)
        fluct[n] = out.mean_fallback ? field.values[n] - mean
                                     : (field.values[n] - mean) / mean;

    ComplexSpectrum spec = forward_dft(ScalarField{field.dims, std::move(fluct), Precision::f64});

    // Radius of the centered frequency coordinate; indices above N/2 wrap to
    // the negative side.
    std::size_t max_bin = 0;
    {
        double r2 = 0.0;
        for (std::size_t d : field.dims) {
            double c = static_cast<double>(d / 2);
            r2 += c * c;
        }
        max_bin = static_cast<std::size_t>(std::llround(std::sqrt(r2)));
    }
    out.k_bins.resize(max_bin + 1);
    out.power.assign(max_bin + 1, 0.0);
    out.counts.assign(max_bin + 1, 0);
    for (std::size_t b = 0; b <= max_bin; ++b) out.k_bins[b] = b;

    for (std::size_t k = 0; k < total; ++k) {
        auto coord = unflatten(field.dims, k);
        double r2 = 0.0;
        for (std::size_t a = 0; a < coord.size(); ++a) {
            double s = static_cast<double>(coord[a]);
            if (coord[a] > field.dims[a] / 2) s -= static_cast<double>(field.dims[a]);
            r2 += s * s;
        }
        std::size_t bin = static_cast<std::size_t>(std::llround(std::sqrt(r2)));
        out.power[bin] += std::norm(spec.values[k]);
        ++out.counts[bin];
    }
    return out;
}

double psnr(const ScalarField& original, const ScalarField& reconstructed) {
    if (original.dims != reconstructed.dims)
        throw validation_error("psnr: dims mismatch");
    double lo = original.values[0], hi = original.values[0], se = 0.0;
    for (std::size_t n = 0; n < original.size(); ++n) {
        lo = std::min(lo, original.values[n]);
        hi = std::max(hi, original.values[n]);
        double d = reconstructed.values[n] - original.values[n];
        se += d * d;
    }
    if (se == 0.0) return std::numeric_limits<double>::infinity();
    if (hi == lo)
        throw undefined_metric_error("psnr: constant original has no defined range");
    double rmse = std::sqrt(se / static_cast<double>(original.size()));
    return 20.0 * std::log10((hi - lo) / rmse);
}

double ssnr(const ComplexSpectrum& original, const ComplexSpectrum& reconstructed) {
    if (original.dims != reconstructed.dims)
        throw validation_error("ssnr: dims mismatch");
    double signal = 0.0, noise = 0.0;
    for (std::size_t k = 0; k < original.size(); ++k) {
        signal += std::norm(original.values[k]);
        noise += std::norm(original.values[k] - reconstructed.values[k]);
    }
    if (signal == 0.0)
        throw undefined_metric_error("ssnr: zero-energy original spectrum");
    if (noise == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / noise);
}

std::vector<double> rfe(const ComplexSpectrum& delta, const ComplexSpectrum& original_spectrum) {
    if (delta.dims != original_spectrum.dims)
        throw validation_error("rfe: dims mismatch");
    double max_mag = 0.0;
    for (const auto& v : original_spectrum.values) max_mag = std::max(max_mag, std::abs(v));
    if (max_mag == 0.0)
        throw undefined_metric_error("rfe: all-zero original spectrum");
    std::vector<double> out(delta.size());
    for (std::size_t k = 0; k < delta.size(); ++k) out[k] = std::abs(delta.values[k]) / max_mag;
    return out;
}

FrequencyBounds spectrum_bound_to_freq_bounds(const ComplexSpectrum& original_spectrum,
                                              double rho) {
    if (rho < 0.0 || !std::isfinite(rho))
        throw validation_error("spectrum_bound_to_freq_bounds: rho must be >= 0");
    const Dims& dims = original_spectrum.dims;
    std::size_t total = original_spectrum.size();

    double max_mag = 0.0;
    for (const auto& v : original_spectrum.values) max_mag = std::max(max_mag, std::abs(v));
    double floor = std::max(1e-12 * max_mag, 1e-300);

    const double scale = (std::sqrt(1.0 + rho) - 1.0) / std::sqrt(2.0);
    std::vector<double> delta(total);
    for (std::size_t k = 0; k < total; ++k) {
        // min over the conjugate pair keeps the lanes exactly
        // Hermitian-consistent under round-off without weakening the bound.
        double mag = std::min(std::abs(original_spectrum.values[k]),
                              std::abs(original_spectrum.values[mirror_index(dims, k)]));
        delta[k] = std::max(mag * scale, floor);
    }
    return DualBounds::frequency_per_component(dims, delta, delta);
}

} // namespace ffcz
