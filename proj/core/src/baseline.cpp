#include "ffcz/baseline.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ffcz/errors.hpp"
#include "ffcz/projection.hpp"
#include "ffcz/streams.hpp"
#include "ffcz/transform.hpp"

namespace ffcz {

CompressResult uniform_quantize_compress(const ScalarField& field, double e) {
    if (!(e > 0.0) || !std::isfinite(e))
        throw validation_error("uniform_quantize_compress: E must be positive");
    const double step = 2.0 * e;
    std::vector<double> recon(field.size());
    std::vector<std::int32_t> codes(field.size());
    for (std::size_t n = 0; n < field.size(); ++n) {
        long long c = std::llround(field.values[n] / step);
        if (c > std::numeric_limits<std::int32_t>::max() ||
            c < std::numeric_limits<std::int32_t>::min())
            throw validation_error("uniform_quantize_compress: code overflows 32 bits; "
                                   "E is too small for this value range");
        codes[n] = static_cast<std::int32_t>(c);
        recon[n] = static_cast<double>(c) * step;
    }
    CompressResult out{ScalarField{field.dims, std::move(recon), field.precision}, 0};
    out.stored_size_estimate = encode_streams(BitVector(0), codes).index_bytes.size();
    return out;
}

BaseAdapter quantizer_adapter() {
    return [](const ScalarField& f, double e) { return uniform_quantize_compress(f, e); };
}

TuneResult trial_and_error_tune(const ScalarField& field, double target_delta,
                                const BaseAdapter& base, double shrink_factor,
                                double initial_e) {
    if (!(shrink_factor > 0.0 && shrink_factor < 1.0))
        throw validation_error("trial_and_error_tune: shrink_factor must be in (0,1)");
    if (!(initial_e > 0.0))
        throw validation_error("trial_and_error_tune: initial E must be positive");

    TuneResult result;
    double e = initial_e;
    while (e > 1e-300) {
        CompressResult cr;
        try {
            cr = base(field, e);
        } catch (const validation_error&) {
            break; // base compressor cannot operate at this E; tuning failed
        }
        ScalarField eps = compute_error(field, cr.decompressed);
        ComplexSpectrum delta = forward_dft(eps);
        double max_err = 0.0;
        for (const auto& d : delta.values)
            max_err = std::max(max_err,
                               std::max(std::abs(d.real()), std::abs(d.imag())));
        result.trace.push_back({e, max_err});
        if (max_err <= target_delta) {
            result.achieved_e = e;
            result.decompressed = std::move(cr.decompressed);
            result.stored_size_estimate = cr.stored_size_estimate;
            return result;
        }
        e *= shrink_factor;
    }
    std::ostringstream msg;
    msg << "trial_and_error_tune: E underflowed before reaching target_delta=" << target_delta
        << "; trace:";
    for (const auto& s : result.trace) msg << " (E=" << s.e << ", err=" << s.max_freq_error << ")";
    throw tuning_error(msg.str());
}

} // namespace ffcz
