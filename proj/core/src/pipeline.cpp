#include "ffcz/pipeline.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ffcz/streams.hpp"
#include "ffcz/transform.hpp"

namespace ffcz {

namespace {

constexpr int kMaxEscapeRounds = 32;

// Half-grid index of the conjugate partner inside the half set, or SIZE_MAX
// when the mirror lives in the redundant half.
std::size_t half_mirror(const Dims& dims, std::size_t h) {
    std::size_t full = half_to_full(dims, h);
    return full_to_half(dims, mirror_index(dims, full));
}

} // namespace

CorrectionResult correct(const ScalarField& original, const ScalarField& decompressed,
                         const DualBounds& bounds_original, int m, std::size_t max_iters) {
    const Dims& dims = original.dims;
    bounds_original.validate_for(dims);

    ScalarField eps0 = compute_error(original, decompressed);
    // Contract with the base compressor is the original E.
    for (std::size_t n = 0; n < eps0.size(); ++n)
        if (std::abs(eps0.values[n]) >
            bounds_original.spatial.at(n) * (1.0 + 0x1p-20))
            throw validation_error("correct: decompressed data violates the declared spatial "
                                   "bound at index " + std::to_string(n));

    DualBounds working = shrink_bounds(bounds_original, m);
    // Widen the loop's feasibility slack so errors at the original bound edge
    // pass; they exceed the shrunken E by at most a factor 1/(1-2^-m).
    double slack = 1.0 / (1.0 - std::ldexp(1.0, -m)) - 1.0 + 0x1p-20;
    ProjectionOutcome outcome = alternating_projection(eps0, working, max_iters, slack);

    QuantizationParams params{m, bounds_original};
    auto [spat_flags, spat_values] = compact_edits(outcome.edits.spatial);
    auto freq_half = restrict_to_half(dims, outcome.edits.frequency);
    auto [freq_flags, freq_values] = compact_edits(freq_half);
    EditSet edits{std::move(spat_flags), std::move(spat_values), std::move(freq_flags),
                  std::move(freq_values)};

    std::map<std::pair<bool, std::uint64_t>, std::complex<double>> escape_map;

    // Entries whose quantization index would not fit the 32-bit stream (tiny
    // per-component bounds under a large edit) go to the escape list at full
    // precision instead of through the quantizer.
    {
        constexpr double kMaxIndex = 2147483520.0;
        auto idx = flagged_indices(edits.spatial_flags);
        std::vector<double> kept;
        kept.reserve(edits.spatial_values.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            double v = edits.spatial_values[i];
            if (std::abs(v) / params.step_spatial(idx[i]) > kMaxIndex) {
                edits.spatial_flags.set(idx[i], false);
                escape_map[{false, idx[i]}] = v;
            } else {
                kept.push_back(v);
            }
        }
        edits.spatial_values = std::move(kept);

        auto hidx = flagged_indices(edits.frequency_flags);
        std::vector<std::complex<double>> fkept;
        fkept.reserve(edits.frequency_values.size());
        for (std::size_t i = 0; i < hidx.size(); ++i) {
            std::complex<double> v = edits.frequency_values[i];
            std::size_t k = half_to_full(dims, hidx[i]);
            if (std::abs(v.real()) / params.step_freq_re(k) > kMaxIndex ||
                std::abs(v.imag()) / params.step_freq_im(k) > kMaxIndex) {
                edits.frequency_flags.set(hidx[i], false);
                escape_map[{true, hidx[i]}] = v;
            } else {
                fkept.push_back(v);
            }
        }
        edits.frequency_values = std::move(fkept);
    }

    // Dequantized dense edits, the decoder's view.
    std::size_t total = total_samples(dims);
    std::size_t hn = half_count(dims);
    auto spat_idx = flagged_indices(edits.spatial_flags);
    auto freq_idx = flagged_indices(edits.frequency_flags);
    std::vector<double> spat_dq(total, 0.0);
    {
        auto q = quantize_edits(edits.spatial_values, spat_idx, params);
        auto v = dequantize_edits(q, spat_idx, params);
        for (std::size_t i = 0; i < spat_idx.size(); ++i) spat_dq[spat_idx[i]] = v[i];
    }
    std::vector<std::complex<double>> freq_dq(hn, {0.0, 0.0});
    {
        auto q = quantize_edits(dims, edits.frequency_values, freq_idx, params);
        auto v = dequantize_edits(dims, q, freq_idx, params);
        for (std::size_t i = 0; i < freq_idx.size(); ++i) freq_dq[freq_idx[i]] = v[i];
    }

    CorrectionResult result;
    result.report = outcome.report;

    if (outcome.report.converged) {
        // Quantization noise may leak across domains past the shrink budget;
        // pin violating components to their exact converged values.
        ComplexSpectrum delta_star = forward_dft(outcome.final_epsilon);

        for (int round = 0; round < kMaxEscapeRounds; ++round) {
            std::vector<double> spat_cur = spat_dq;
            std::vector<std::complex<double>> freq_cur = freq_dq;
            for (const auto& [key, val] : escape_map) {
                if (key.first)
                    freq_cur[key.second] = val;
                else
                    spat_cur[key.second] = val.real();
            }
            std::vector<std::complex<double>> freq_full(total);
            for (std::size_t k = 0; k < total; ++k) {
                std::size_t h = full_to_half(dims, k);
                freq_full[k] = h != std::numeric_limits<std::size_t>::max()
                                   ? freq_cur[h]
                                   : std::conj(freq_cur[full_to_half(
                                         dims, mirror_index(dims, k))]);
            }
            auto freq_spatial = inverse_dft_complex(ComplexSpectrum{dims, std::move(freq_full)});
            std::vector<double> eps_tilde(total);
            for (std::size_t n = 0; n < total; ++n)
                eps_tilde[n] = eps0.values[n] + spat_cur[n] + freq_spatial[n].real();
            ComplexSpectrum delta_tilde =
                forward_dft(ScalarField{dims, eps_tilde, Precision::f64});

            bool clean = true;
            for (std::size_t h = 0; h < hn; ++h) {
                std::size_t k = half_to_full(dims, h);
                if (std::abs(delta_tilde.values[k].real()) > bounds_original.frequency.re_at(k) ||
                    std::abs(delta_tilde.values[k].imag()) > bounds_original.frequency.im_at(k)) {
                    clean = false;
                    std::complex<double> repaired =
                        freq_cur[h] + (delta_star.values[k] - delta_tilde.values[k]);
                    escape_map[{true, h}] = repaired;
                    std::size_t hm = half_mirror(dims, h);
                    if (hm != std::numeric_limits<std::size_t>::max() && hm != h)
                        escape_map[{true, hm}] = std::conj(repaired);
                }
            }
            for (std::size_t n = 0; n < total; ++n) {
                if (std::abs(eps_tilde[n]) > bounds_original.spatial.at(n)) {
                    clean = false;
                    escape_map[{false, n}] =
                        spat_cur[n] + (outcome.final_epsilon.values[n] - eps_tilde[n]);
                }
            }
            if (clean) break;
        }
    }

    std::vector<EscapeEntry> escapes;
    escapes.reserve(escape_map.size());
    for (const auto& [key, val] : escape_map)
        escapes.push_back(EscapeEntry{key.first, key.second, val.real(), val.imag()});
    result.escape_count = escapes.size();

    result.archive_bytes = write_archive(edits, params, dims, original.precision,
                                         outcome.report.converged, escapes);

    DecodedArchive decoded = read_archive(result.archive_bytes);
    ScalarField corrected = apply_edits(decompressed, decoded);
    result.verification = verify_bounds(original, corrected, bounds_original);
    return result;
}

} // namespace ffcz
