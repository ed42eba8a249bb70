#include "ffcz/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace ffcz {

namespace {

// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> run_c2c(const Dims& dims,
                                          const std::vector<std::complex<double>>& in,
                                          int sign) {
    std::vector<std::complex<double>> out(in.size());
    std::vector<std::complex<double>> work(in); // FFTW may clobber input during planning
    std::vector<int> n(dims.begin(), dims.end());

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(),
                             reinterpret_cast<fftw_complex*>(work.data()),
                             reinterpret_cast<fftw_complex*>(out.data()),
                             sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace

ComplexSpectrum forward_dft(const ScalarField& field) {
    validate_dims(field.dims);
    std::vector<std::complex<double>> in(field.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = field.values[i];
    return ComplexSpectrum{field.dims, run_c2c(field.dims, in, FFTW_FORWARD)};
}

std::vector<std::complex<double>> inverse_dft_complex(const ComplexSpectrum& spectrum) {
    validate_dims(spectrum.dims);
    auto out = run_c2c(spectrum.dims, spectrum.values, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(total_samples(spectrum.dims));
    for (auto& v : out) v *= scale;
    return out;
}

double imaginary_residue_tolerance(Precision p, double scale) {
    return (p == Precision::f32 ? 1e-6 : 1e-10) * scale;
}

ScalarField inverse_dft(const ComplexSpectrum& spectrum, Precision out_precision) {
    auto complex_out = inverse_dft_complex(spectrum);
    double max_re = 0.0, max_im = 0.0;
    for (const auto& v : complex_out) {
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    // Tolerance scales with the output magnitude; an exactly-zero field gets
    // an absolute floor so round-off noise does not trip the check.
    double tol = imaginary_residue_tolerance(out_precision, std::max(max_re, 1e-300));
    if (max_im > tol)
        throw symmetry_error("inverse_dft: imaginary residue " + std::to_string(max_im) +
                             " exceeds tolerance (non-Hermitian input?)");
    std::vector<double> values(complex_out.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = complex_out[i].real();
    return ScalarField{spectrum.dims, std::move(values), out_precision};
}

ComplexSpectrum brute_force_dft(const ScalarField& field) {
    std::size_t total = validate_dims(field.dims);
    if (total > 4096)
        throw validation_error("brute_force_dft is a test oracle capped at 4096 samples");

    const Dims& dims = field.dims;
    std::vector<std::complex<double>> out(total);
    for (std::size_t k = 0; k < total; ++k) {
        auto kc = unflatten(dims, k);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t n = 0; n < total; ++n) {
            auto nc = unflatten(dims, n);
            double phase = 0.0;
            for (std::size_t a = 0; a < dims.size(); ++a)
                phase += static_cast<double>(kc[a]) * static_cast<double>(nc[a]) /
                         static_cast<double>(dims[a]);
            acc += field.values[n] * std::polar(1.0, -2.0 * std::numbers::pi * phase);
        }
        out[k] = acc;
    }
    return ComplexSpectrum{dims, std::move(out)};
}

double hermitian_residual(const ComplexSpectrum& spectrum) {
    double worst = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        std::size_t mk = mirror_index(spectrum.dims, k);
        worst = std::max(worst, std::abs(spectrum.values[k] - std::conj(spectrum.values[mk])));
    }
    return worst;
}

bool check_hermitian(const ComplexSpectrum& spectrum, double tol) {
    return hermitian_residual(spectrum) <= tol;
}

} // namespace ffcz
