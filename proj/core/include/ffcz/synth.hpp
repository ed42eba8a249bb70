#pragma once

#include <cstdint>
#include <string>

#include "ffcz/field.hpp"

namespace ffcz {

enum class SynthKind { white_noise, power_law, exponential, impulse, constant };

// Deterministic synthetic fields. power_law / exponential build a Hermitian
// spectrum with the target radial envelope (P(k) ~ k^-alpha resp.
// e^-(k/k0)) and random phases, then inverse-transform; param is alpha / k0.
ScalarField synth_field(SynthKind kind, const Dims& dims, std::uint64_t seed,
                        double param = 0.0, Precision precision = Precision::f64);

SynthKind synth_kind_from_name(const std::string& name);

} // namespace ffcz
