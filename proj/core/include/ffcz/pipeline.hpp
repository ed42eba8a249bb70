#pragma once

#include <cstdint>
#include <vector>

#include "ffcz/archive.hpp"
#include "ffcz/projection.hpp"

namespace ffcz {

struct CorrectionResult {
    std::vector<std::uint8_t> archive_bytes;
    ProjectionReport report;
    std::size_t escape_count = 0;
    VerifyResult verification; // against the original bounds, post-quantization
};

// Full correction path: error vector, working-bound shrink, alternating
// projection, compaction, quantization, escape-list repair, archive bytes.
// bounds_original are the user's bounds; the loop runs under
// shrink_bounds(bounds_original, m).
CorrectionResult correct(const ScalarField& original, const ScalarField& decompressed,
                         const DualBounds& bounds_original, int m = 16,
                         std::size_t max_iters = 1000);

} // namespace ffcz
