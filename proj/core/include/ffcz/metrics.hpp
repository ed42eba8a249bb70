#pragma once

#include <vector>

#include "ffcz/bounds.hpp"
#include "ffcz/field.hpp"

namespace ffcz {

// Shell-binned power of the normalized-fluctuation spectrum. Bin index is
// round(|centered integer frequency|); counts cover every frequency cell.
struct PowerSpectrum {
    std::vector<std::size_t> k_bins;
    std::vector<double> power;
    std::vector<std::size_t> counts;
    bool mean_fallback = false; // |mean| under guard: used x' = x - mean
    double mean = 0.0;
};

PowerSpectrum power_spectrum(const ScalarField& field);

// 20 log10(range / RMSE); +inf for identical fields. Constant original with
// nonzero error has no defined range -> undefined_metric_error.
double psnr(const ScalarField& original, const ScalarField& reconstructed);

// 10 log10(sum |X|^2 / sum |X - Xhat|^2); +inf for identical spectra.
double ssnr(const ComplexSpectrum& original, const ComplexSpectrum& reconstructed);

// Per-component |delta_l| / max_k |X_k|.
std::vector<double> rfe(const ComplexSpectrum& delta, const ComplexSpectrum& original_spectrum);

// Per-component f-cube sized so each |Xhat_k|^2 stays within relative rho of
// |X_k|^2, hence each power-spectrum shell within relative rho.
// Delta_re(k) = Delta_im(k) = |X_k| (sqrt(1+rho) - 1) / sqrt(2), with a tiny
// floor for zero components.
FrequencyBounds spectrum_bound_to_freq_bounds(const ComplexSpectrum& original_spectrum,
                                              double rho);

} // namespace ffcz
