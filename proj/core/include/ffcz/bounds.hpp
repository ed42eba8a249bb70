#pragma once

#include <cstdint>
#include <vector>

#include "ffcz/field.hpp"

namespace ffcz {

// Spatial bound E: one global value or one per sample.
struct SpatialBounds {
    bool per_point = false;
    double global = 0.0;
    std::vector<double> values; // used when per_point

    double at(std::size_t n) const { return per_point ? values[n] : global; }
    std::size_t count() const { return per_point ? values.size() : 0; }
};

// Frequency bound Delta: global or per-component with separate Re/Im lanes,
// both over the full spectrum length.
struct FrequencyBounds {
    bool per_component = false;
    double global = 0.0;
    std::vector<double> re;
    std::vector<double> im;

    double re_at(std::size_t k) const { return per_component ? re[k] : global; }
    double im_at(std::size_t k) const { return per_component ? im[k] : global; }
    std::size_t count() const { return per_component ? re.size() : 0; }
};

struct DualBounds {
    SpatialBounds spatial;
    FrequencyBounds frequency;

    static DualBounds global(double e, double delta);
    static SpatialBounds spatial_global(double e);
    static SpatialBounds spatial_per_point(std::vector<double> e);
    static FrequencyBounds frequency_global(double delta);
    // Validates Hermitian consistency of the Re/Im lanes against dims.
    static FrequencyBounds frequency_per_component(const Dims& dims, std::vector<double> re,
                                                   std::vector<double> im);

    // Shape/positivity check against a concrete field size.
    void validate_for(const Dims& dims) const;
};

// Multiplies every bound entry by (1 - 2^-m); 1 <= m <= 24.
DualBounds shrink_bounds(const DualBounds& bounds, int m);

} // namespace ffcz
