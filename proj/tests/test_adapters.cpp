#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ffcz/baseline.hpp"
#include "ffcz/io.hpp"
#include "ffcz/projection.hpp"
#include "ffcz/synth.hpp"
#include "ffcz/transform.hpp"
#include "helpers.hpp"

using namespace ffcz;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ffcz-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("raw field files round-trip in both widths") {
    TempDir tmp;
    for (Precision p : {Precision::f32, Precision::f64}) {
        ScalarField f = testutil::noise_field({6, 5}, 11, 1.0, p);
        std::string path = tmp.file(p == Precision::f32 ? "a32.bin" : "a64.bin");
        save_raw(f, path);
        CHECK(fs::file_size(path) == f.size() * bytes_per_sample(p));
        DatasetDescriptor d{path, {6, 5}, p};
        ScalarField back = load_raw(d);
        CHECK(back.values == f.values);
        CHECK(back.precision == p);
    }
}

TEST_CASE("size mismatch is an I/O error naming both sizes") {
    TempDir tmp;
    ScalarField f = testutil::noise_field({8}, 1, 1.0, Precision::f32);
    save_raw(f, tmp.file("x.bin"));
    DatasetDescriptor d{tmp.file("x.bin"), {9}, Precision::f32};
    try {
        (void)load_raw(d);
        FAIL("expected io_error");
    } catch (const io_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("36") != std::string::npos); // expected bytes
        CHECK(msg.find("32") != std::string::npos); // actual bytes
    }
    DatasetDescriptor missing{tmp.file("nope.bin"), {8}, Precision::f32};
    CHECK_THROWS_AS((void)load_raw(missing), io_error);
}

TEST_CASE("sidecar descriptors parse key=value lines") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("f.txt"));
        out << "path=" << tmp.file("f.bin") << "\n"
            << "dims=4x3x2\n"
            << "dtype=f64\n"
            << "attribute=density\n";
    }
    DatasetDescriptor d = load_descriptor(tmp.file("f.txt"));
    CHECK(d.dims == Dims{4, 3, 2});
    CHECK(d.precision == Precision::f64);
    CHECK(d.attribute == "density");
}

TEST_CASE("file pair adapter loads matching originals and reconstructions") {
    TempDir tmp;
    ScalarField a = testutil::noise_field({10}, 2, 1.0, Precision::f64);
    ScalarField b = testutil::noise_field({10}, 3, 1.0, Precision::f64);
    save_raw(a, tmp.file("o.bin"));
    save_raw(b, tmp.file("d.bin"));
    DatasetDescriptor da{tmp.file("o.bin"), {10}, Precision::f64};
    DatasetDescriptor db{tmp.file("d.bin"), {10}, Precision::f64};
    auto [o, d] = file_pair_adapter(da, db);
    CHECK(o.values == a.values);
    CHECK(d.values == b.values);
}

TEST_CASE("uniform quantizer honors its pointwise bound") {
    ScalarField f = testutil::noise_field({1000}, 17);
    for (double e : {0.1, 0.01, 0.003}) {
        CompressResult r = uniform_quantize_compress(f, e);
        for (std::size_t n = 0; n < f.size(); ++n)
            CHECK(std::abs(r.decompressed.values[n] - f.values[n]) <= e * (1.0 + 1e-12));
        CHECK(r.stored_size_estimate > 0);
    }
    // coarser bound -> cheaper stream
    CHECK(uniform_quantize_compress(f, 0.2).stored_size_estimate <
          uniform_quantize_compress(f, 0.001).stored_size_estimate);
}

TEST_CASE("bound tuning shrinks E until the frequency target holds") {
    ScalarField f = testutil::noise_field({256}, 23);
    ComplexSpectrum X = forward_dft(f);
    double maxmag = 0.0;
    for (const auto& v : X.values) maxmag = std::max(maxmag, std::abs(v));

    TuneResult r = trial_and_error_tune(f, 0.01 * maxmag, quantizer_adapter(), 0.5, 0.1);
    CHECK(r.achieved_e <= 0.1);
    CHECK_FALSE(r.trace.empty());
    CHECK(r.trace.back().max_freq_error <= 0.01 * maxmag);
    ComplexSpectrum err = forward_dft(compute_error(f, r.decompressed));
    for (const auto& v : err.values) {
        CHECK(std::abs(v.real()) <= 0.01 * maxmag);
        CHECK(std::abs(v.imag()) <= 0.01 * maxmag);
    }

    CHECK_THROWS_AS((void)trial_and_error_tune(f, 0.0, quantizer_adapter(), 0.5, 0.1),
                    tuning_error);
}

TEST_CASE("synthetic fields are deterministic per seed") {
    ScalarField a = synth_field(SynthKind::power_law, {16, 16}, 42, 2.0);
    ScalarField b = synth_field(SynthKind::power_law, {16, 16}, 42, 2.0);
    ScalarField c = synth_field(SynthKind::power_law, {16, 16}, 43, 2.0);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);

    double mean = 0.0;
    for (double v : a.values) mean += v;
    CHECK(std::abs(mean / 256.0) < 1e-10); // spectral kinds are zero-mean by construction

    ScalarField k = synth_field(SynthKind::constant, {4}, 0, 3.0);
    CHECK(k.values == std::vector<double>{3.0, 3.0, 3.0, 3.0});
    ScalarField imp = synth_field(SynthKind::impulse, {4}, 0, 1.0);
    CHECK(imp.values[0] != 0.0);

    CHECK(synth_kind_from_name("white-noise") == SynthKind::white_noise);
    CHECK(synth_kind_from_name("exponential") == SynthKind::exponential);
    CHECK_THROWS_AS((void)synth_kind_from_name("bogus"), validation_error);
}
