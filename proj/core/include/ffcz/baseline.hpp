#pragma once

#include <functional>
#include <vector>

#include "ffcz/field.hpp"

namespace ffcz {

struct CompressResult {
    ScalarField decompressed;
    std::size_t stored_size_estimate = 0; // entropy-coded bytes
};

// Any upstream error-bounded compressor: field + bound E -> reconstruction
// with |xhat - x| <= E, plus a payload size estimate.
using BaseAdapter = std::function<CompressResult(const ScalarField&, double E)>;

// Mid-tread uniform quantizer: xhat = round(x / 2E) * 2E. The simplest
// conforming base compressor; size estimate is the entropy-coded size of the
// integer codes.
CompressResult uniform_quantize_compress(const ScalarField& field, double E);

BaseAdapter quantizer_adapter();

struct TuneStep {
    double e = 0.0;
    double max_freq_error = 0.0;
};

struct TuneResult {
    double achieved_e = 0.0;
    ScalarField decompressed;
    std::size_t stored_size_estimate = 0;
    std::vector<TuneStep> trace;
};

// Baseline that meets a frequency target by repeatedly tightening the
// spatial bound: E <- E * shrink_factor until max(|Re delta|,|Im delta|)
// <= target_delta. Throws tuning_error (with the step trace in the message)
// when E underflows first.
TuneResult trial_and_error_tune(const ScalarField& field, double target_delta,
                                const BaseAdapter& base, double shrink_factor,
                                double initial_e);

} // namespace ffcz
