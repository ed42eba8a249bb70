#include "ffcz/bounds.hpp"

#include <cmath>
#include <string>

namespace ffcz {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw validation_error(std::string(what) + " must be strictly positive and finite");
}

void require_positive(const std::vector<double>& vs, const char* what) {
    for (double v : vs) require_positive(v, what);
}

} // namespace

SpatialBounds DualBounds::spatial_global(double e) {
    require_positive(e, "spatial bound E");
    SpatialBounds b;
    b.global = e;
    return b;
}

SpatialBounds DualBounds::spatial_per_point(std::vector<double> e) {
    require_positive(e, "per-point spatial bound");
    SpatialBounds b;
    b.per_point = true;
    b.values = std::move(e);
    return b;
}

FrequencyBounds DualBounds::frequency_global(double delta) {
    require_positive(delta, "frequency bound Delta");
    FrequencyBounds b;
    b.global = delta;
    return b;
}

FrequencyBounds DualBounds::frequency_per_component(const Dims& dims, std::vector<double> re,
                                                    std::vector<double> im) {
    std::size_t total = validate_dims(dims);
    if (re.size() != total || im.size() != total)
        throw validation_error("per-component frequency bounds must cover the full spectrum");
    require_positive(re, "per-component frequency bound (Re)");
    require_positive(im, "per-component frequency bound (Im)");
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t mk = mirror_index(dims, k);
        if (re[k] != re[mk] || im[k] != im[mk])
            throw validation_error("per-component frequency bounds are not Hermitian-consistent");
    }
    FrequencyBounds b;
    b.per_component = true;
    b.re = std::move(re);
    b.im = std::move(im);
    return b;
}

DualBounds DualBounds::global(double e, double delta) {
    return DualBounds{spatial_global(e), frequency_global(delta)};
}

void DualBounds::validate_for(const Dims& dims) const {
    std::size_t total = total_samples(dims);
    if (spatial.per_point && spatial.values.size() != total)
        throw validation_error("per-point spatial bound length does not match field size");
    if (frequency.per_component && frequency.re.size() != total)
        throw validation_error("per-component frequency bound length does not match field size");
}

DualBounds shrink_bounds(const DualBounds& bounds, int m) {
    if (m < 1 || m > 24)
        throw validation_error("shrink_bounds requires 1 <= m <= 24");
    const double f = 1.0 - std::ldexp(1.0, -m);
    DualBounds out = bounds;
    out.spatial.global *= f;
    for (double& v : out.spatial.values) v *= f;
    out.frequency.global *= f;
    for (double& v : out.frequency.re) v *= f;
    for (double& v : out.frequency.im) v *= f;
    return out;
}

} // namespace ffcz
