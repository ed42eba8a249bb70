#pragma once

#include <complex>
#include <vector>

#include "ffcz/bounds.hpp"
#include "ffcz/field.hpp"

namespace ffcz {

// Cumulative displacements along the spatial / frequency bases.
struct DenseEdits {
    std::vector<double> spatial;
    std::vector<std::complex<double>> frequency;
};

struct ProjectionReport {
    std::size_t iterations = 0;       // full projection passes, min 1
    std::size_t active_spatial = 0;   // nonzero spatial edits
    std::size_t active_frequency = 0; // nonzero frequency edits
    bool converged = false;
    double residual_f = 0.0; // max frequency-bound violation at exit
    double residual_s = 0.0; // max spatial-bound violation at exit
    double wall_time_s = 0.0;
};

struct ConvergenceResult {
    bool satisfied = false;
    std::size_t violations = 0;
    double max_excess = 0.0;
};

struct FcubeResult {
    ComplexSpectrum clipped;
    std::vector<std::complex<double>> displacement;
};

struct ScubeResult {
    ScalarField clipped;
    std::vector<double> displacement;
};

struct ProjectionOutcome {
    DenseEdits edits;
    ScalarField final_epsilon;
    ProjectionReport report;
};

// decompressed - original, elementwise.
ScalarField compute_error(const ScalarField& original, const ScalarField& decompressed);

// |Re| <= Delta_re(k) and |Im| <= Delta_im(k) for every component.
ConvergenceResult check_convergence(const ComplexSpectrum& delta, const DualBounds& bounds);

// Componentwise clamp of Re/Im to the f-cube; displacement = clipped - delta.
FcubeResult project_onto_fcube(const ComplexSpectrum& delta, const DualBounds& bounds);

// Componentwise clamp to [-E_n, E_n]; displacement = clipped - epsilon.
ScubeResult project_onto_scube(const ScalarField& epsilon, const DualBounds& bounds);

// POCS loop between the f-cube and s-cube under the given working bounds.
// epsilon0 must already satisfy the spatial bound up to E * precondition_slack
// (default 2^-20, ingest round-off). When the loop runs under shrunken
// working bounds the caller widens the slack to cover the shrink, since the
// base compressor only promised the original E.
// Non-convergence within max_iters is a reported outcome, not an error.
ProjectionOutcome alternating_projection(const ScalarField& epsilon0,
                                         const DualBounds& bounds_working,
                                         std::size_t max_iters,
                                         double precondition_slack = 0x1p-20);

} // namespace ffcz
