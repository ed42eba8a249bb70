#include "ffcz/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "ffcz/editset.hpp"
#include "ffcz/transform.hpp"

namespace ffcz {

namespace {

double radial_coordinate(const Dims& dims, std::size_t flat) {
    auto coord = unflatten(dims, flat);
    double r2 = 0.0;
    for (std::size_t a = 0; a < coord.size(); ++a) {
        double s = static_cast<double>(coord[a]);
        if (coord[a] > dims[a] / 2) s -= static_cast<double>(dims[a]);
        r2 += s * s;
    }
    return std::sqrt(r2);
}

// Hermitian spectrum with |X_k| following the envelope and random phases;
// DC is zero so the field has exactly zero mean.
ScalarField spectral_field(const Dims& dims, std::uint64_t seed, Precision precision,
                           double (*envelope)(double r, double param), double param) {
    std::size_t total = total_samples(dims);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    std::vector<std::complex<double>> spec(total, {0.0, 0.0});
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t mk = mirror_index(dims, k);
        if (mk < k) continue; // conjugate partner already assigned
        double r = radial_coordinate(dims, k);
        if (r == 0.0) continue;
        double amp = envelope(r, param);
        if (mk == k) {
            spec[k] = {amp, 0.0}; // self-conjugate cell must stay real
        } else {
            spec[k] = std::polar(amp, phase(rng));
            spec[mk] = std::conj(spec[k]);
        }
    }
    return inverse_dft(ComplexSpectrum{dims, std::move(spec)}, precision);
}

} // namespace

ScalarField synth_field(SynthKind kind, const Dims& dims, std::uint64_t seed, double param,
                        Precision precision) {
    std::size_t total = validate_dims(dims);
    switch (kind) {
        case SynthKind::constant:
            // param is the level; 0 selects the default level of 1
            return ScalarField{dims, std::vector<double>(total, param == 0.0 ? 1.0 : param),
                               precision};
        case SynthKind::impulse: {
            std::vector<double> v(total, 0.0);
            v[0] = 1.0;
            return ScalarField{dims, std::move(v), precision};
        }
        case SynthKind::white_noise: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> dist(0.0, 1.0);
            std::vector<double> v(total);
            for (auto& x : v) x = dist(rng);
            return ScalarField{dims, std::move(v), precision};
        }
        case SynthKind::power_law: {
            if (!(param > 0.0)) throw validation_error("power_law requires alpha > 0");
            // P(k) ~ k^-alpha means |X_k| ~ k^(-alpha/2)
            return spectral_field(dims, seed, precision,
                                  [](double r, double a) { return std::pow(r, -a / 2.0); },
                                  param);
        }
        case SynthKind::exponential: {
            if (!(param > 0.0)) throw validation_error("exponential requires k0 > 0");
            return spectral_field(dims, seed, precision,
                                  [](double r, double k0) { return std::exp(-r / (2.0 * k0)); },
                                  param);
        }
    }
    throw validation_error("unknown synth kind");
}

SynthKind synth_kind_from_name(const std::string& name) {
    if (name == "white-noise") return SynthKind::white_noise;
    if (name == "power-law") return SynthKind::power_law;
    if (name == "exponential") return SynthKind::exponential;
    if (name == "impulse") return SynthKind::impulse;
    if (name == "constant") return SynthKind::constant;
    throw validation_error("unknown synth kind: " + name);
}

} // namespace ffcz
