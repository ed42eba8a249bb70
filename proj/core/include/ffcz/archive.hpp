#pragma once

#include <cstdint>
#include <vector>

#include "ffcz/editset.hpp"
#include "ffcz/field.hpp"

namespace ffcz {

inline constexpr char kArchiveMagic[4] = {'F', 'F', 'C', 'Z'};
inline constexpr std::uint16_t kArchiveVersion = 1;

struct DecodedArchive {
    EditSet edits; // values dequantized
    QuantizationParams params;
    Dims dims;
    Precision precision = Precision::f64;
    bool converged = true;
    std::vector<EscapeEntry> escapes;
};

// Serializes the edit set (quantizing values through params), bounds and
// metadata into the on-disk container. Bit-exact for fixed inputs.
std::vector<std::uint8_t> write_archive(const EditSet& edits, const QuantizationParams& params,
                                        const Dims& dims, Precision precision, bool converged,
                                        const std::vector<EscapeEntry>& escapes);

// Validates magic, version, checksum and stream lengths; throws format_error.
DecodedArchive read_archive(const std::vector<std::uint8_t>& bytes);

// Dense edits reconstructed from an archive: spatial vector over all samples
// and the Hermitian-expanded full-spectrum frequency vector, with escape
// overrides applied.
struct DenseDecodedEdits {
    std::vector<double> spatial;
    std::vector<std::complex<double>> frequency_full;
};

DenseDecodedEdits expand_edits(const DecodedArchive& archive);

// decompressed + spatial edits + IFFT(frequency edits).
ScalarField apply_edits(const ScalarField& decompressed, const DecodedArchive& archive);

struct VerifyResult {
    bool ok = true;
    double max_spatial_excess = 0.0;
    double max_freq_excess = 0.0;
};

// Recomputes eps and delta from scratch against the original bounds.
VerifyResult verify_bounds(const ScalarField& original, const ScalarField& corrected,
                           const DualBounds& bounds_original);

std::uint32_t crc32c(const std::uint8_t* data, std::size_t len);

} // namespace ffcz
