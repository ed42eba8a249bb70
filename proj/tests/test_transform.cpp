#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "ffcz/transform.hpp"
#include "helpers.hpp"

using namespace ffcz;

namespace {

double max_rel_diff(const ComplexSpectrum& a, const ComplexSpectrum& b) {
    double scale = 0.0;
    for (const auto& v : b.values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]) / scale);
    return m;
}

} // namespace

TEST_CASE("forward transform matches the direct summation oracle") {
    const std::vector<Dims> shapes = {{17}, {64}, {1000}, {8, 8}, {16, 16},
                                      {12, 10}, {8, 8, 8}, {16, 16, 16}, {5, 4, 3}};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        CAPTURE(i);
        ScalarField f = testutil::noise_field(shapes[i], 100 + i);
        CHECK(max_rel_diff(forward_dft(f), brute_force_dft(f)) < 1e-9);
    }
}

TEST_CASE("energy identity: sum |X|^2 == N * sum |x|^2") {
    for (const Dims& dims : std::vector<Dims>{{33}, {16, 16}, {8, 6, 4}}) {
        ScalarField f = testutil::noise_field(dims, 7);
        ComplexSpectrum X = forward_dft(f);
        double ex = 0.0, es = 0.0;
        for (double v : f.values) es += v * v;
        for (const auto& v : X.values) ex += std::norm(v);
        CHECK(std::abs(ex - double(f.size()) * es) <= 1e-9 * ex);
    }
}

TEST_CASE("small closed-form transforms") {
    ScalarField impulse = ScalarField::create({4}, {1.0, 0.0, 0.0, 0.0});
    ComplexSpectrum X = forward_dft(impulse);
    for (const auto& v : X.values) {
        CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
    }

    ScalarField pair = ScalarField::create({2}, {3.0, -1.0});
    ComplexSpectrum Y = forward_dft(pair);
    CHECK(Y.values[0].real() == doctest::Approx(2.0));
    CHECK(Y.values[1].real() == doctest::Approx(4.0));
}

TEST_CASE("inverse transform round-trips and carries the 1/N factor") {
    for (const Dims& dims : std::vector<Dims>{{17}, {9, 5}, {4, 4, 4}}) {
        ScalarField f = testutil::noise_field(dims, 21);
        ScalarField back = inverse_dft(forward_dft(f));
        for (std::size_t n = 0; n < f.size(); ++n)
            CHECK(back.values[n] == doctest::Approx(f.values[n]).epsilon(1e-12));
    }
}

TEST_CASE("real input spectra satisfy conjugate symmetry") {
    ScalarField f = testutil::noise_field({12, 10}, 3);
    ComplexSpectrum X = forward_dft(f);
    CHECK(check_hermitian(X, 1e-9 * 120));
    CHECK(hermitian_residual(X) < 1e-9 * 120);

    X.values[1] += std::complex<double>(0.5, 0.5);
    CHECK_FALSE(check_hermitian(X, 1e-6));
}

TEST_CASE("inverse of a non-symmetric spectrum is rejected") {
    ComplexSpectrum bad{{2}, {{1.0, 0.0}, {0.0, 1.0}}};
    CHECK_THROWS_AS((void)inverse_dft(bad), symmetry_error);
    // The complex-to-complex inverse has no such gate.
    auto c = inverse_dft_complex(bad);
    CHECK(c.size() == 2);
}

TEST_CASE("imaginary residue tolerance scales with precision") {
    CHECK(imaginary_residue_tolerance(Precision::f32, 2.0) == doctest::Approx(2e-6));
    CHECK(imaginary_residue_tolerance(Precision::f64, 2.0) == doctest::Approx(2e-10));
}

TEST_CASE("direct-summation oracle refuses large fields") {
    ScalarField big = testutil::noise_field({4097}, 1);
    CHECK_THROWS_AS((void)brute_force_dft(big), validation_error);
}

TEST_CASE("single-sample field transforms to itself") {
    ScalarField one = ScalarField::create({1}, {2.5});
    ComplexSpectrum X = forward_dft(one);
    CHECK(X.values[0].real() == doctest::Approx(2.5));
    CHECK(inverse_dft(X).values[0] == doctest::Approx(2.5));
}
