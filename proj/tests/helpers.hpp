#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ffcz/field.hpp"

namespace testutil {

// Uniform noise in [-scale, scale]; f32-tagged fields are rounded through
// float so they are exactly representable on disk.
inline ffcz::ScalarField noise_field(const ffcz::Dims& dims, std::uint64_t seed,
                                     double scale = 1.0,
                                     ffcz::Precision precision = ffcz::Precision::f64) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> values(ffcz::total_samples(dims));
    for (double& v : values) {
        v = dist(rng);
        if (precision == ffcz::Precision::f32) v = static_cast<float>(v);
    }
    return ffcz::ScalarField::create(dims, std::move(values), precision);
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace testutil
