// ffcz: dual-domain error-bound correction for lossy-compressed fields.
//
// Subcommands: correct, apply, verify, metrics, spectrum, synth, bench.
// Exit codes: 0 success, 2 non-convergence / bound violation, 3 validation,
// 4 I/O, 5 archive format.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ffcz/archive.hpp"
#include "ffcz/baseline.hpp"
#include "ffcz/io.hpp"
#include "ffcz/metrics.hpp"
#include "ffcz/pipeline.hpp"
#include "ffcz/synth.hpp"
#include "ffcz/transform.hpp"

using json = nlohmann::ordered_json;

namespace {

struct BoundsSpec {
    std::optional<double> eps, eps_rel;
    std::optional<double> delta, delta_rel;
    std::optional<double> rho;
};

struct FieldSpec {
    std::string path;
    std::vector<std::size_t> dims;
    std::string dtype = "f32";

    ffcz::DatasetDescriptor descriptor() const {
        ffcz::DatasetDescriptor d;
        d.path = path;
        d.dims = dims;
        d.precision = dtype == "f64" ? ffcz::Precision::f64 : ffcz::Precision::f32;
        return d;
    }
};

void add_field_options(CLI::App* cmd, FieldSpec& spec) {
    cmd->add_option("--dims", spec.dims, "field extents, e.g. --dims 64 64 64")->required();
    cmd->add_option("--dtype", spec.dtype, "sample type: f32 or f64")
        ->check(CLI::IsMember({"f32", "f64"}));
}

void add_bounds_options(CLI::App* cmd, BoundsSpec& spec) {
    cmd->add_option("--eps", spec.eps, "absolute spatial error bound E");
    cmd->add_option("--eps-rel", spec.eps_rel, "spatial bound as % of the original value range");
    cmd->add_option("--delta", spec.delta, "absolute frequency error bound Delta");
    cmd->add_option("--delta-rel", spec.delta_rel,
                    "frequency bound as % of max |X_k| of the original spectrum");
    cmd->add_option("--rho", spec.rho,
                    "target relative power-spectrum error (per-component bounds)");
}

double field_range(const ffcz::ScalarField& f) {
    auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
    return *hi - *lo;
}

double max_spectrum_magnitude(const ffcz::ComplexSpectrum& s) {
    double m = 0.0;
    for (const auto& v : s.values) m = std::max(m, std::abs(v));
    return m;
}

// Relative bounds resolve against the original field before the pipeline runs.
ffcz::DualBounds resolve_bounds(const BoundsSpec& spec, const ffcz::ScalarField& original) {
    ffcz::DualBounds bounds;
    if (spec.eps && spec.eps_rel)
        throw ffcz::validation_error("give either --eps or --eps-rel, not both");
    if (spec.eps)
        bounds.spatial = ffcz::DualBounds::spatial_global(*spec.eps);
    else if (spec.eps_rel)
        bounds.spatial =
            ffcz::DualBounds::spatial_global(*spec.eps_rel / 100.0 * field_range(original));
    else
        throw ffcz::validation_error("a spatial bound is required (--eps or --eps-rel)");

    int freq_specs = bool(spec.delta) + bool(spec.delta_rel) + bool(spec.rho);
    if (freq_specs != 1)
        throw ffcz::validation_error(
            "exactly one frequency bound is required (--delta, --delta-rel or --rho)");
    if (spec.delta) {
        bounds.frequency = ffcz::DualBounds::frequency_global(*spec.delta);
    } else {
        ffcz::ComplexSpectrum spectrum = ffcz::forward_dft(original);
        if (spec.delta_rel)
            bounds.frequency = ffcz::DualBounds::frequency_global(
                *spec.delta_rel / 100.0 * max_spectrum_magnitude(spectrum));
        else
            bounds.frequency = ffcz::spectrum_bound_to_freq_bounds(spectrum, *spec.rho);
    }
    return bounds;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ffcz::io_error("cannot open " + path + " for writing");
    out << text;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ffcz::io_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ffcz::io_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json inf_aware(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

json report_json(const ffcz::CorrectionResult& r, std::size_t payload_bytes,
                 std::size_t field_bytes) {
    json j;
    j["converged"] = r.report.converged;
    j["iterations"] = r.report.iterations;
    j["active_spatial"] = r.report.active_spatial;
    j["active_frequency"] = r.report.active_frequency;
    j["residual_f"] = r.report.residual_f;
    j["residual_s"] = r.report.residual_s;
    j["escape_count"] = r.escape_count;
    j["wall_time_s"] = r.report.wall_time_s;
    j["payload_bytes"] = payload_bytes;
    j["payload_relative_to_field"] =
        static_cast<double>(payload_bytes) / static_cast<double>(field_bytes);
    j["verified_against_original_bounds"] = r.verification.ok;
    j["max_spatial_excess"] = r.verification.max_spatial_excess;
    j["max_freq_excess"] = r.verification.max_freq_excess;
    return j;
}

int cmd_correct(const FieldSpec& orig_spec, const std::string& decompressed_path,
                const std::string& base, const BoundsSpec& bounds_spec, int m,
                std::size_t max_iters, const std::string& out_path) {
    ffcz::DatasetDescriptor odesc = orig_spec.descriptor();
    ffcz::ScalarField original = ffcz::load_raw(odesc);
    ffcz::DualBounds bounds = resolve_bounds(bounds_spec, original);

    ffcz::ScalarField decompressed;
    if (base == "quantizer") {
        decompressed =
            ffcz::uniform_quantize_compress(original, bounds.spatial.global).decompressed;
    } else {
        if (decompressed_path.empty())
            throw ffcz::validation_error("--decompressed is required with --base files");
        ffcz::DatasetDescriptor ddesc = odesc;
        ddesc.path = decompressed_path;
        decompressed = ffcz::load_raw(ddesc);
    }

    ffcz::CorrectionResult result = ffcz::correct(original, decompressed, bounds, m, max_iters);
    write_bytes(out_path, result.archive_bytes);

    std::size_t field_bytes = original.size() * ffcz::bytes_per_sample(original.precision);
    json j = report_json(result, result.archive_bytes.size(), field_bytes);
    write_text_file(out_path + ".report.json", j.dump(2) + "\n");

    std::cout << "correct: " << (result.report.converged ? "converged" : "NOT converged")
              << " after " << result.report.iterations << " iteration(s)\n"
              << "  active edits: spatial=" << result.report.active_spatial
              << " frequency=" << result.report.active_frequency
              << " escapes=" << result.escape_count << "\n"
              << "  residuals: f=" << result.report.residual_f
              << " s=" << result.report.residual_s << "\n"
              << "  archive: " << out_path << " (" << result.archive_bytes.size() << " bytes, "
              << 100.0 * result.archive_bytes.size() / field_bytes << "% of field)\n"
              << "  original-bound verification: " << (result.verification.ok ? "ok" : "FAILED")
              << "\n";
    return result.report.converged ? 0 : 2;
}

int cmd_apply(const FieldSpec& decomp_spec, const std::string& archive_path,
              const std::string& original_path, const std::string& out_path) {
    ffcz::DecodedArchive archive = ffcz::read_archive(read_bytes(archive_path));
    ffcz::DatasetDescriptor ddesc = decomp_spec.descriptor();
    if (ddesc.dims != archive.dims)
        throw ffcz::validation_error("apply: --dims does not match archive dims");
    ddesc.precision = archive.precision;
    ffcz::ScalarField decompressed = ffcz::load_raw(ddesc);
    ffcz::ScalarField corrected = ffcz::apply_edits(decompressed, archive);
    ffcz::save_raw(corrected, out_path);
    std::cout << "apply: wrote " << out_path << "\n";
    if (!archive.converged)
        std::cout << "  warning: archive is flagged non-converged; no feasibility claim\n";

    if (!original_path.empty()) {
        ffcz::DatasetDescriptor odesc = ddesc;
        odesc.path = original_path;
        ffcz::ScalarField original = ffcz::load_raw(odesc);
        ffcz::VerifyResult v = ffcz::verify_bounds(original, corrected, archive.params.bounds);
        std::cout << "  verify: " << (v.ok ? "ok" : "FAILED")
                  << " max_spatial_excess=" << v.max_spatial_excess
                  << " max_freq_excess=" << v.max_freq_excess << "\n";
        if (!v.ok) return 2;
    }
    return 0;
}

int cmd_verify(const FieldSpec& orig_spec, const std::string& corrected_path,
               const std::string& archive_path, const BoundsSpec& bounds_spec) {
    ffcz::DatasetDescriptor odesc = orig_spec.descriptor();
    ffcz::ScalarField original = ffcz::load_raw(odesc);
    ffcz::DatasetDescriptor cdesc = odesc;
    cdesc.path = corrected_path;
    ffcz::ScalarField corrected = ffcz::load_raw(cdesc);

    ffcz::DualBounds bounds = archive_path.empty()
                                  ? resolve_bounds(bounds_spec, original)
                                  : ffcz::read_archive(read_bytes(archive_path)).params.bounds;
    ffcz::VerifyResult v = ffcz::verify_bounds(original, corrected, bounds);
    json j;
    j["ok"] = v.ok;
    j["max_spatial_excess"] = v.max_spatial_excess;
    j["max_freq_excess"] = v.max_freq_excess;
    std::cout << j.dump(2) << "\n";
    return v.ok ? 0 : 2;
}

int cmd_metrics(const FieldSpec& orig_spec, const std::string& reconstructed_path,
                const std::string& out_path) {
    ffcz::DatasetDescriptor odesc = orig_spec.descriptor();
    ffcz::ScalarField original = ffcz::load_raw(odesc);
    ffcz::DatasetDescriptor rdesc = odesc;
    rdesc.path = reconstructed_path;
    ffcz::ScalarField reconstructed = ffcz::load_raw(rdesc);

    ffcz::ComplexSpectrum orig_spec_f = ffcz::forward_dft(original);
    ffcz::ComplexSpectrum recon_spec_f = ffcz::forward_dft(reconstructed);
    ffcz::ScalarField eps = ffcz::compute_error(original, reconstructed);
    ffcz::ComplexSpectrum delta = ffcz::forward_dft(eps);

    double max_spatial = 0.0;
    for (double v : eps.values) max_spatial = std::max(max_spatial, std::abs(v));
    double psnr_db = ffcz::psnr(original, reconstructed);
    double ssnr_db = ffcz::ssnr(orig_spec_f, recon_spec_f);
    double max_rfe = 0.0;
    for (double v : ffcz::rfe(delta, orig_spec_f)) max_rfe = std::max(max_rfe, v);

    std::ostringstream csv;
    csv << "metric,value\n";
    auto row = [&csv](const char* name, double v) {
        csv << name << ",";
        if (std::isinf(v))
            csv << "inf";
        else
            csv << v;
        csv << "\n";
    };
    row("psnr_db", psnr_db);
    row("ssnr_db", ssnr_db);
    row("max_spatial_error", max_spatial);
    row("max_rfe", max_rfe);
    if (!out_path.empty()) write_text_file(out_path, csv.str());

    json j;
    j["psnr_db"] = inf_aware(psnr_db);
    j["ssnr_db"] = inf_aware(ssnr_db);
    j["max_spatial_error"] = max_spatial;
    j["max_rfe"] = max_rfe;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_spectrum(const FieldSpec& orig_spec, const std::string& second_path,
                 const std::string& out_path) {
    ffcz::DatasetDescriptor odesc = orig_spec.descriptor();
    ffcz::ScalarField original = ffcz::load_raw(odesc);
    ffcz::PowerSpectrum ps = ffcz::power_spectrum(original);

    std::optional<ffcz::PowerSpectrum> ps2;
    if (!second_path.empty()) {
        ffcz::DatasetDescriptor rdesc = odesc;
        rdesc.path = second_path;
        ps2 = ffcz::power_spectrum(ffcz::load_raw(rdesc));
    }

    std::ostringstream csv;
    csv << "# mean=" << ps.mean << " mean_fallback=" << (ps.mean_fallback ? "true" : "false")
        << "\n";
    csv << "k,P_k,count" << (ps2 ? ",P_k_second,ratio" : "") << "\n";
    for (std::size_t b = 0; b < ps.k_bins.size(); ++b) {
        csv << ps.k_bins[b] << "," << ps.power[b] << "," << ps.counts[b];
        if (ps2) {
            csv << "," << ps2->power[b] << ",";
            if (ps.power[b] > 0.0)
                csv << ps2->power[b] / ps.power[b];
            else
                csv << "nan";
        }
        csv << "\n";
    }
    if (!out_path.empty())
        write_text_file(out_path, csv.str());
    else
        std::cout << csv.str();
    if (!out_path.empty())
        std::cout << "spectrum: wrote " << out_path << " (" << ps.k_bins.size() << " bins)\n";
    return 0;
}

int cmd_synth(const std::string& kind, const FieldSpec& spec, std::uint64_t seed, double alpha,
              double k0, const std::string& out_path) {
    ffcz::SynthKind k = ffcz::synth_kind_from_name(kind);
    double param = k == ffcz::SynthKind::power_law ? alpha : k0;
    ffcz::ScalarField field =
        ffcz::synth_field(k, spec.dims, seed, param,
                          spec.dtype == "f64" ? ffcz::Precision::f64 : ffcz::Precision::f32);
    ffcz::save_raw(field, out_path);

    std::ostringstream sidecar;
    sidecar << "path=" << out_path << "\ndims=";
    for (std::size_t a = 0; a < spec.dims.size(); ++a)
        sidecar << (a ? "x" : "") << spec.dims[a];
    sidecar << "\ndtype=" << spec.dtype << "\n";
    write_text_file(out_path + ".txt", sidecar.str());
    std::cout << "synth: wrote " << out_path << " and sidecar " << out_path << ".txt\n";
    return 0;
}

int cmd_bench(const FieldSpec& orig_spec, const BoundsSpec& bounds_spec, int m,
              std::size_t max_iters, double shrink_factor, const std::string& out_path) {
    ffcz::DatasetDescriptor odesc = orig_spec.descriptor();
    ffcz::ScalarField original = ffcz::load_raw(odesc);
    ffcz::DualBounds bounds = resolve_bounds(bounds_spec, original);
    if (bounds.frequency.per_component)
        throw ffcz::validation_error("bench compares against a global Delta; use --delta or "
                                     "--delta-rel");
    const double e = bounds.spatial.global;
    const double delta = bounds.frequency.global;
    ffcz::ComplexSpectrum orig_spectrum = ffcz::forward_dft(original);

    struct Leg {
        std::string name, status = "ok";
        std::size_t payload = 0, iterations = 0;
        double ssnr_db = 0, psnr_db = 0, max_rfe = 0, wall_s = 0;
    };
    auto measure = [&](Leg& leg, const ffcz::ScalarField& recon) {
        ffcz::ComplexSpectrum rs = ffcz::forward_dft(recon);
        leg.ssnr_db = ffcz::ssnr(orig_spectrum, rs);
        leg.psnr_db = ffcz::psnr(original, recon);
        ffcz::ComplexSpectrum d = ffcz::forward_dft(ffcz::compute_error(original, recon));
        for (double v : ffcz::rfe(d, orig_spectrum)) leg.max_rfe = std::max(leg.max_rfe, v);
    };

    std::vector<Leg> legs;
    // Leg 1: base compressor at the user's E, no frequency control.
    ffcz::CompressResult base = ffcz::uniform_quantize_compress(original, e);
    {
        Leg leg{.name = "base_eps_only"};
        leg.payload = base.stored_size_estimate;
        measure(leg, base.decompressed);
        legs.push_back(leg);
    }
    // Leg 2: trial-and-error tightening of E until Delta is met.
    {
        Leg leg{.name = "trial_and_error"};
        auto t0 = std::chrono::steady_clock::now();
        try {
            ffcz::TuneResult tuned = ffcz::trial_and_error_tune(original, delta,
                                                                ffcz::quantizer_adapter(),
                                                                shrink_factor, e);
            leg.payload = tuned.stored_size_estimate;
            leg.iterations = tuned.trace.size();
            measure(leg, tuned.decompressed);
        } catch (const ffcz::tuning_error&) {
            leg.status = "failed";
        }
        leg.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        legs.push_back(leg);
    }
    // Leg 3: base at E plus the projection-correction edit archive.
    {
        Leg leg{.name = "base_plus_correction"};
        auto t0 = std::chrono::steady_clock::now();
        ffcz::CorrectionResult r = ffcz::correct(original, base.decompressed, bounds, m, max_iters);
        leg.payload = base.stored_size_estimate + r.archive_bytes.size();
        leg.iterations = r.report.iterations;
        if (!r.report.converged) leg.status = "not_converged";
        ffcz::DecodedArchive archive = ffcz::read_archive(r.archive_bytes);
        measure(leg, ffcz::apply_edits(base.decompressed, archive));
        leg.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        legs.push_back(leg);
    }

    std::ostringstream csv;
    csv << "leg,status,payload_bytes,ssnr_db,psnr_db,max_rfe,iterations,wall_time_s\n";
    for (const Leg& leg : legs) {
        csv << leg.name << "," << leg.status << "," << leg.payload << ",";
        if (std::isinf(leg.ssnr_db))
            csv << "inf";
        else
            csv << leg.ssnr_db;
        csv << ",";
        if (std::isinf(leg.psnr_db))
            csv << "inf";
        else
            csv << leg.psnr_db;
        csv << "," << leg.max_rfe << "," << leg.iterations << "," << leg.wall_s << "\n";
    }
    if (!out_path.empty()) write_text_file(out_path, csv.str());
    std::cout << csv.str();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-domain error-bound correction for lossy-compressed fields"};
    app.require_subcommand(1);

    FieldSpec field;
    BoundsSpec bounds;
    std::string decompressed_path, original_path, corrected_path, archive_path, out_path;
    std::string base = "quantizer", kind = "white-noise";
    int m = 16;
    std::size_t max_iters = 1000;
    std::uint64_t seed = 1;
    double alpha = 2.0, k0 = 8.0, shrink_factor = 0.5;

    auto* correct = app.add_subcommand("correct", "build an edit archive for a decompressed field");
    correct->add_option("--original", field.path, "original raw field")->required();
    correct->add_option("--decompressed", decompressed_path, "decompressed raw field");
    add_field_options(correct, field);
    add_bounds_options(correct, bounds);
    correct->add_option("--base", base, "base compressor: quantizer or files")
        ->check(CLI::IsMember({"quantizer", "files"}));
    correct->add_option("--m", m, "quantization code length in bits")->check(CLI::Range(1, 24));
    correct->add_option("--max-iters", max_iters, "projection iteration cap");
    correct->add_option("--out", out_path, "archive output path")->required();

    auto* apply = app.add_subcommand("apply", "apply an edit archive to a decompressed field");
    apply->add_option("--archive", archive_path)->required();
    apply->add_option("--decompressed", field.path)->required();
    add_field_options(apply, field);
    apply->add_option("--original", original_path, "optional: verify against the original");
    apply->add_option("--out", out_path, "corrected field output path")->required();

    auto* verify = app.add_subcommand("verify", "check corrected data against bounds");
    verify->add_option("--original", field.path)->required();
    verify->add_option("--corrected", corrected_path)->required();
    add_field_options(verify, field);
    verify->add_option("--archive", archive_path, "take bounds from this archive");
    add_bounds_options(verify, bounds);

    auto* metrics = app.add_subcommand("metrics", "PSNR/SSNR/max-error/max-RFE for a field pair");
    metrics->add_option("--original", field.path)->required();
    metrics->add_option("--decompressed", decompressed_path)->required();
    add_field_options(metrics, field);
    metrics->add_option("--out", out_path, "CSV output path");

    auto* spectrum = app.add_subcommand("spectrum", "radially binned power spectrum CSV");
    spectrum->add_option("--original", field.path)->required();
    spectrum->add_option("--decompressed", decompressed_path,
                         "optional second field; adds a ratio column");
    add_field_options(spectrum, field);
    spectrum->add_option("--out", out_path, "CSV output path");

    auto* synth = app.add_subcommand("synth", "generate a synthetic field");
    synth->add_option("--kind", kind,
                      "white-noise | power-law | exponential | impulse | constant");
    add_field_options(synth, field);
    synth->add_option("--seed", seed);
    synth->add_option("--alpha", alpha, "power-law exponent");
    synth->add_option("--k0", k0, "exponential decay scale");
    synth->add_option("--out", out_path, "raw field output path")->required();

    auto* bench = app.add_subcommand("bench", "three-way comparison CSV");
    bench->add_option("--original", field.path)->required();
    add_field_options(bench, field);
    add_bounds_options(bench, bounds);
    bench->add_option("--m", m)->check(CLI::Range(1, 24));
    bench->add_option("--max-iters", max_iters);
    bench->add_option("--shrink-factor", shrink_factor, "trial-and-error E shrink per step");
    bench->add_option("--out", out_path, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (correct->parsed())
            return cmd_correct(field, decompressed_path, base, bounds, m, max_iters, out_path);
        if (apply->parsed()) return cmd_apply(field, archive_path, original_path, out_path);
        if (verify->parsed()) return cmd_verify(field, corrected_path, archive_path, bounds);
        if (metrics->parsed()) return cmd_metrics(field, decompressed_path, out_path);
        if (spectrum->parsed()) return cmd_spectrum(field, decompressed_path, out_path);
        if (synth->parsed()) return cmd_synth(kind, field, seed, alpha, k0, out_path);
        if (bench->parsed())
            return cmd_bench(field, bounds, m, max_iters, shrink_factor, out_path);
    } catch (const ffcz::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ffcz::format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const ffcz::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
