// Acceptance suite: one pass/fail line per criterion, tolerances pinned here.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "ffcz/archive.hpp"
#include "ffcz/baseline.hpp"
#include "ffcz/huffman.hpp"
#include "ffcz/metrics.hpp"
#include "ffcz/pipeline.hpp"
#include "ffcz/projection.hpp"
#include "ffcz/streams.hpp"
#include "ffcz/synth.hpp"
#include "ffcz/transform.hpp"

using namespace ffcz;

namespace {

int g_failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s%s%s\n", id, title, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : " — ", detail.c_str());
    if (!pass) ++g_failures;
}

ScalarField noise(const Dims& dims, std::uint64_t seed, Precision p) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(total_samples(dims));
    for (double& x : v) {
        x = dist(rng);
        if (p == Precision::f32) x = static_cast<float>(x);
    }
    return ScalarField::create(dims, std::move(v), p);
}

double range_of(const ScalarField& f) {
    double lo = f.values[0], hi = f.values[0];
    for (double v : f.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

double peak_of(const ComplexSpectrum& s) {
    double m = 0.0;
    for (const auto& v : s.values) m = std::max(m, std::abs(v));
    return m;
}

// --- 1: dual-domain guarantee over 200 seeded pipeline runs ---------------

void criterion_1() {
    const std::vector<Dims> pool = {{17},         {64},        {1000},       {32, 32},
                                    {64, 48},     {128, 128},  {8, 8, 8},    {16, 16, 16},
                                    {32, 32, 32}, {64, 64, 64}};
    const double delta_pct[3] = {1e-1, 1e-2, 1e-3};
    std::size_t violations = 0, nonconverged = 0;
    std::string first_bad;

    for (int c = 0; c < 200; ++c) {
        const Dims& dims = pool[c % pool.size()];
        Precision p = (c / 10) % 2 ? Precision::f64 : Precision::f32;
        ScalarField original = noise(dims, 5000 + c, p);

        const double E = 0.1 / 100.0 * range_of(original);
        const double peak = peak_of(forward_dft(original));
        const double D = delta_pct[c % 3] / 100.0 * peak;

        CompressResult base = uniform_quantize_compress(original, E);
        DualBounds bounds = DualBounds::global(E, D);
        CorrectionResult r = correct(original, base.decompressed, bounds);
        if (!r.report.converged) {
            ++nonconverged;
            if (first_bad.empty()) first_bad = "case " + std::to_string(c) + " not converged";
            continue;
        }
        DecodedArchive archive = read_archive(r.archive_bytes);
        ScalarField corrected = apply_edits(base.decompressed, archive);
        VerifyResult v = verify_bounds(original, corrected, bounds);
        if (!v.ok) {
            ++violations;
            if (first_bad.empty())
                first_bad = "case " + std::to_string(c) +
                            " excess s=" + std::to_string(v.max_spatial_excess) +
                            " f=" + std::to_string(v.max_freq_excess);
        }
    }
    report(1, "dual-domain guarantee, 200 runs", violations == 0 && nonconverged == 0,
           violations == 0 && nonconverged == 0
               ? "0 violations"
               : first_bad + " (" + std::to_string(violations) + " violations, " +
                     std::to_string(nonconverged) + " non-converged)");
}

// --- 2: transform oracle equivalence --------------------------------------

void criterion_2() {
    const std::vector<Dims> pool = {{17}, {64}, {1000}, {32, 32}, {64, 48},
                                    {8, 8, 8}, {16, 16, 16}};
    double worst_dft = 0.0, worst_parseval = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        ScalarField f = noise(pool[i], 100 + i, Precision::f64);
        ComplexSpectrum fast = forward_dft(f);
        ComplexSpectrum slow = brute_force_dft(f);
        double scale = peak_of(slow);
        for (std::size_t k = 0; k < fast.size(); ++k)
            worst_dft = std::max(worst_dft, std::abs(fast.values[k] - slow.values[k]) / scale);
        double ex = 0.0, es = 0.0;
        for (double v : f.values) es += v * v;
        for (const auto& v : fast.values) ex += std::norm(v);
        worst_parseval = std::max(worst_parseval,
                                  std::abs(ex - double(f.size()) * es) / ex);
    }
    report(2, "transform oracle equivalence", worst_dft < 1e-9 && worst_parseval < 1e-9,
           "max dft dev " + std::to_string(worst_dft) + ", energy dev " +
               std::to_string(worst_parseval));
}

// --- 3: hand-traced two-sample walkthrough ---------------------------------

void criterion_3() {
    ScalarField eps0 = ScalarField::create({2}, {1.0, 1.0});
    ProjectionOutcome out = alternating_projection(eps0, DualBounds::global(1.0, 1.0), 100);
    const double tol = 1e-12;
    bool pass = out.report.converged && out.report.active_spatial == 0 &&
                out.report.active_frequency == 1 &&
                std::abs(out.final_epsilon.values[0] - 0.5) <= tol &&
                std::abs(out.final_epsilon.values[1] - 0.5) <= tol &&
                std::abs(out.edits.frequency[0].real() + 1.0) <= tol &&
                std::abs(out.edits.frequency[0].imag()) <= tol &&
                std::abs(out.edits.frequency[1]) <= tol;
    report(3, "hand-traced two-sample case", pass,
           "final=[" + std::to_string(out.final_epsilon.values[0]) + "," +
               std::to_string(out.final_epsilon.values[1]) + "] edits f=" +
               std::to_string(out.report.active_frequency) + " s=" +
               std::to_string(out.report.active_spatial));
}

// --- 4: tight frequency bound finishes in one pass with no spatial edits ---

void criterion_4() {
    bool pass = true;
    std::string detail;
    for (double dscale : {1e-6, 1e-7}) { // far below any spectral magnitude
        ScalarField eps0 = noise({1000}, 77, Precision::f64);
        for (double& v : eps0.values) v *= 0.001;
        double peak = peak_of(forward_dft(eps0));
        ProjectionOutcome out =
            alternating_projection(eps0, DualBounds::global(0.0011, dscale * peak), 100);
        if (!(out.report.converged && out.report.iterations == 1 &&
              out.report.active_spatial == 0)) {
            pass = false;
            detail = "iters=" + std::to_string(out.report.iterations) +
                     " active_s=" + std::to_string(out.report.active_spatial);
        }
    }
    report(4, "tight-bound single-pass regime", pass,
           pass ? "iterations=1, active spatial=0" : detail);
}

// --- 5: 0.1% power-spectrum ribbon on a 64^3 power-law field ----------------

void criterion_5() {
    const double rho = 1e-3;
    ScalarField original = synth_field(SynthKind::power_law, {64, 64, 64}, 424242, 2.0);
    ComplexSpectrum X = forward_dft(original);

    DualBounds bounds;
    bounds.spatial = DualBounds::spatial_global(0.1 / 100.0 * range_of(original));
    bounds.frequency = spectrum_bound_to_freq_bounds(X, rho);

    CompressResult base = uniform_quantize_compress(original, bounds.spatial.global);
    CorrectionResult r = correct(original, base.decompressed, bounds);
    if (!r.report.converged) {
        report(5, "power-spectrum ribbon rho=1e-3", false, "not converged");
        return;
    }
    ScalarField corrected = apply_edits(base.decompressed, read_archive(r.archive_bytes));
    PowerSpectrum ps = power_spectrum(original);
    PowerSpectrum ps2 = power_spectrum(corrected);
    double worst = 0.0;
    for (std::size_t b = 1; b < ps.k_bins.size(); ++b) {
        if (ps.power[b] <= 0.0) continue;
        worst = std::max(worst, std::abs(ps2.power[b] - ps.power[b]) / ps.power[b]);
    }
    report(5, "power-spectrum ribbon rho=1e-3", worst <= rho,
           "max shell deviation " + std::to_string(worst) + " (escapes " +
               std::to_string(r.escape_count) + ", iters " +
               std::to_string(r.report.iterations) + ")");
}

// --- 6: codec fuzz ----------------------------------------------------------

void criterion_6() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::size_t mismatches = 0;
    double worst_q = 0.0;

    for (int c = 0; c < 1000; ++c) {
        Dims dims;
        int nd = 1 + c % 3;
        for (int a = 0; a < nd; ++a) dims.push_back(1 + rng() % 10);
        std::size_t total = total_samples(dims);
        std::size_t hn = half_count(dims);

        double E = 0.1 + dist(rng) * 0.05;
        double D = 0.2 + dist(rng) * 0.05;
        QuantizationParams params{16, DualBounds::global(E, D)};

        EditSet e;
        e.spatial_flags = BitVector(total);
        e.frequency_flags = BitVector(hn);
        for (std::size_t n = 0; n < total; ++n)
            if (rng() % 3 == 0) {
                e.spatial_flags.set(n, true);
                e.spatial_values.push_back(dist(rng) * E);
            }
        for (std::size_t h = 0; h < hn; ++h)
            if (rng() % 3 == 0) {
                e.frequency_flags.set(h, true);
                e.frequency_values.push_back({dist(rng) * D, dist(rng) * D});
            }
        std::vector<EscapeEntry> escapes;
        if (c % 3 == 0) escapes.push_back({true, rng() % hn, dist(rng), dist(rng)});

        auto bytes = write_archive(e, params, dims, Precision::f64, true, escapes);
        DecodedArchive d = read_archive(bytes);
        if (!(d.edits.spatial_flags == e.spatial_flags) ||
            !(d.edits.frequency_flags == e.frequency_flags) ||
            d.escapes.size() != escapes.size()) {
            ++mismatches;
            continue;
        }
        // quantization error per lane within bound * 2^-16
        auto sidx = flagged_indices(e.spatial_flags);
        for (std::size_t i = 0; i < sidx.size(); ++i) {
            double err = std::abs(d.edits.spatial_values[i] - e.spatial_values[i]);
            worst_q = std::max(worst_q, err / (E * 0x1p-16));
            if (err > E * 0x1p-16) ++mismatches;
        }
        auto fidx = flagged_indices(e.frequency_flags);
        for (std::size_t i = 0; i < fidx.size(); ++i) {
            double er = std::abs(d.edits.frequency_values[i].real() - e.frequency_values[i].real());
            double ei = std::abs(d.edits.frequency_values[i].imag() - e.frequency_values[i].imag());
            if (er > D * 0x1p-16 || ei > D * 0x1p-16) ++mismatches;
        }

        // raw stream stage round-trip
        std::vector<std::int32_t> idxs(1 + rng() % 300);
        BitVector flags(idxs.size() * 3);
        for (std::size_t i = 0; i < idxs.size(); ++i) {
            idxs[i] = static_cast<std::int32_t>(rng());
            flags.set(i * 3, true);
        }
        auto enc = encode_streams(flags, idxs);
        auto [f2, i2] = decode_streams(enc, flags.size());
        if (!(f2 == flags) || i2 != idxs) ++mismatches;
    }
    report(6, "codec fuzz, 1000 cases", mismatches == 0,
           std::to_string(mismatches) + " mismatches, worst lane error " +
               std::to_string(worst_q) + " of the budget");
}

// --- 7: payload comparison against trial-and-error tuning ------------------

void criterion_7() {
    int wins = 0, runs = 0;
    std::string detail;
    // Frequency target just under the error-spectrum peak: a handful of
    // components need edits, while re-tuning must spend on every sample.
    // Edits are coarsened to m=8; the escape list covers the stragglers.
    for (int seed = 0; seed < 50; ++seed) {
        ScalarField original = noise({32, 32, 32}, 7000 + seed, Precision::f64);
        const double E = 0.1 / 100.0 * range_of(original);
        const double D = 0.1 / 100.0 * peak_of(forward_dft(original));

        TuneResult tuned = trial_and_error_tune(original, D, quantizer_adapter(), 0.5, E);

        CompressResult base = uniform_quantize_compress(original, E);
        CorrectionResult r = correct(original, base.decompressed, DualBounds::global(E, D), 8);
        if (!r.report.converged || !r.verification.ok) {
            detail = "seed " + std::to_string(seed) + " pipeline failure";
            break;
        }
        std::size_t corrected_payload = base.stored_size_estimate + r.archive_bytes.size();
        ++runs;
        if (corrected_payload < tuned.stored_size_estimate) ++wins;
    }
    report(7, "payload vs trial-and-error, 50 seeds", runs == 50 && wins >= 45,
           std::to_string(wins) + "/" + std::to_string(runs) + " smaller payloads" +
               (detail.empty() ? "" : "; " + detail));
}

// --- 8: honest termination at the iteration cap -----------------------------

void criterion_8() {
    // Both cubes contain the origin, so their intersection is never empty and
    // every instance eventually converges; a cap below the required pass count
    // is the honest way to exercise the non-converged path. The bound pair is
    // picked so the full run needs several passes.
    ScalarField original = noise({64}, 8080, Precision::f64);
    const double E = 0.1 / 100.0 * range_of(original);
    // reconstruction error pinned to the spatial cube faces keeps both
    // projections active for many passes
    std::mt19937_64 rng(8081);
    ScalarField decompressed = original;
    for (double& v : decompressed.values) v += (rng() & 1) ? E : -E;
    ScalarField eps0 = compute_error(original, decompressed);
    ComplexSpectrum d0 = forward_dft(eps0);
    double typical = 0.0;
    for (const auto& v : d0.values) typical += std::abs(v);
    typical /= double(d0.size());
    DualBounds bounds = DualBounds::global(E, 0.6 * typical);

    ProjectionOutcome full = alternating_projection(eps0, bounds, 1000);
    if (!full.report.converged || full.report.iterations < 3) {
        report(8, "honest termination at the cap", false,
               "instance needs tuning: full run iters=" +
                   std::to_string(full.report.iterations));
        return;
    }
    ProjectionOutcome capped = alternating_projection(eps0, bounds, 1);
    double initial_excess = check_convergence(d0, bounds).max_excess;
    bool loop_ok = !capped.report.converged && capped.report.iterations == 1 &&
                   capped.report.residual_f > 0.0 &&
                   capped.report.residual_f <= initial_excess &&
                   capped.report.residual_s == 0.0;

    CorrectionResult r = correct(original, decompressed, bounds, 16, 1);
    DecodedArchive archive = read_archive(r.archive_bytes);
    bool archive_ok = !r.report.converged && !archive.converged;

    report(8, "honest termination at the cap", loop_ok && archive_ok,
           "full run " + std::to_string(full.report.iterations) + " passes; capped residual_f=" +
               std::to_string(capped.report.residual_f) + ", archive converged flag " +
               (archive.converged ? "true" : "false"));
}

// --- 9: clamp equals the enumeration projection oracle ----------------------

// Nearest point of a box via stationarity-pattern enumeration: each
// coordinate is at its lower face, upper face, or interior (= the point
// itself when feasible). Independent of the clamp code path.
std::vector<double> box_projection_oracle(const std::vector<double>& p,
                                          const std::vector<double>& b) {
    std::size_t d = p.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < d; ++i) combos *= 3;
    std::vector<double> best;
    double best_dist = 0.0;
    for (std::size_t c = 0; c < combos; ++c) {
        std::vector<double> x(d);
        std::size_t t = c;
        bool feasible = true;
        for (std::size_t i = 0; i < d; ++i) {
            switch (t % 3) {
            case 0: x[i] = -b[i]; break;
            case 1: x[i] = b[i]; break;
            default:
                if (std::abs(p[i]) > b[i]) feasible = false;
                x[i] = p[i];
            }
            t /= 3;
        }
        if (!feasible) continue;
        double dist = 0.0;
        for (std::size_t i = 0; i < d; ++i) dist += (x[i] - p[i]) * (x[i] - p[i]);
        if (best.empty() || dist < best_dist) {
            best = x;
            best_dist = dist;
        }
    }
    return best;
}

void criterion_9() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::uniform_real_distribution<double> bdist(0.1, 1.5);
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
        std::size_t d = 1 + c % 8;
        std::vector<double> p(d), b(d);
        for (std::size_t i = 0; i < d; ++i) {
            p[i] = dist(rng);
            b[i] = bdist(rng);
        }
        std::vector<double> oracle = box_projection_oracle(p, b);

        DualBounds bounds;
        bounds.spatial = DualBounds::spatial_per_point(b);
        bounds.frequency = DualBounds::frequency_global(1.0);
        ScubeResult s = project_onto_scube(ScalarField::create({d}, p), bounds);
        for (std::size_t i = 0; i < d; ++i)
            worst = std::max(worst, std::abs(s.clipped.values[i] - oracle[i]));
    }
    // complex clamp against the same oracle, lanes treated as a 2-dof box
    std::mt19937_64 rng2(14);
    std::uniform_real_distribution<double> cdist(-2.0, 2.0);
    for (int c = 0; c < 100; ++c) {
        ComplexSpectrum spec{{2}, {{cdist(rng2), 0.0}, {cdist(rng2), cdist(rng2)}}};
        double bound = 0.5 + 0.01 * c;
        FcubeResult f = project_onto_fcube(spec, DualBounds::global(1.0, bound));
        for (std::size_t k = 0; k < 2; ++k) {
            auto oracle = box_projection_oracle(
                {spec.values[k].real(), spec.values[k].imag()}, {bound, bound});
            worst = std::max(worst, std::abs(f.clipped.values[k].real() - oracle[0]));
            worst = std::max(worst, std::abs(f.clipped.values[k].imag() - oracle[1]));
        }
    }
    report(9, "clamp equals projection oracle", worst < 1e-9,
           "max deviation " + std::to_string(worst));
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 9 criteria failed (%.1f s)\n", g_failures, secs);
    return g_failures;
}
