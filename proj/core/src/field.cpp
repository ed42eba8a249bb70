#include "ffcz/field.hpp"

#include <cmath>
#include <string>

namespace ffcz {

std::size_t validate_dims(const Dims& dims) {
    if (dims.empty() || dims.size() > 3)
        throw validation_error("dims must have 1 to 3 axes, got " + std::to_string(dims.size()));
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0)
            throw validation_error("dims must have positive extents");
        total *= d;
    }
    return total;
}

std::size_t total_samples(const Dims& dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    return total;
}

std::vector<std::size_t> unflatten(const Dims& dims, std::size_t flat) {
    std::vector<std::size_t> coord(dims.size());
    for (std::size_t a = dims.size(); a-- > 0;) {
        coord[a] = flat % dims[a];
        flat /= dims[a];
    }
    return coord;
}

std::size_t flatten(const Dims& dims, const std::vector<std::size_t>& coord) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) flat = flat * dims[a] + coord[a];
    return flat;
}

std::size_t mirror_index(const Dims& dims, std::size_t flat) {
    std::size_t out = 0;
    // Walk axes front to back, peeling coordinates from the back.
    std::vector<std::size_t> coord = unflatten(dims, flat);
    for (std::size_t a = 0; a < dims.size(); ++a) {
        std::size_t c = coord[a] == 0 ? 0 : dims[a] - coord[a];
        out = out * dims[a] + c;
    }
    return out;
}

ScalarField ScalarField::create(Dims dims, std::vector<double> values, Precision precision) {
    std::size_t total = validate_dims(dims);
    if (total != values.size())
        throw validation_error("value count " + std::to_string(values.size()) +
                               " does not match product of dims " + std::to_string(total));
    for (double v : values)
        if (!std::isfinite(v)) throw validation_error("field contains non-finite values");
    return ScalarField{std::move(dims), std::move(values), precision};
}

ComplexSpectrum ComplexSpectrum::create(Dims dims, std::vector<std::complex<double>> values) {
    std::size_t total = validate_dims(dims);
    if (total != values.size())
        throw validation_error("spectrum entry count does not match product of dims");
    return ComplexSpectrum{std::move(dims), std::move(values)};
}

} // namespace ffcz
