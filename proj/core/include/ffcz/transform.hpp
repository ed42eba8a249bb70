#pragma once

#include "ffcz/field.hpp"

namespace ffcz {

// Unnormalized forward DFT (no 1/N on forward); 1D/2D/3D, mixed radix.
ComplexSpectrum forward_dft(const ScalarField& field);

// Inverse DFT with the 1/prod(dims) factor. The imaginary residue of the
// result must stay below the precision-dependent tolerance or a
// symmetry_error is thrown; the real parts become the output field.
ScalarField inverse_dft(const ComplexSpectrum& spectrum,
                        Precision out_precision = Precision::f64);

// Complex-to-complex inverse, 1/prod(dims) applied. No residue check.
std::vector<std::complex<double>> inverse_dft_complex(const ComplexSpectrum& spectrum);

// Direct O(N^2) summation of the defining sum. Test oracle only; refuses
// fields above 4096 samples. Shares no code with forward_dft.
ComplexSpectrum brute_force_dft(const ScalarField& field);

// Max deviation |X_k - conj(X_{(dims-k) mod dims})| <= tol for all k.
bool check_hermitian(const ComplexSpectrum& spectrum, double tol);

// The max deviation itself, for diagnostics.
double hermitian_residual(const ComplexSpectrum& spectrum);

// Allowed imaginary residue after inverting a Hermitian spectrum:
// 1e-6 * scale for f32, 1e-10 * scale for f64.
double imaginary_residue_tolerance(Precision p, double scale);

} // namespace ffcz
