#pragma once

#include <string>
#include <utility>

#include "ffcz/field.hpp"

namespace ffcz {

// Headerless raw binary field file: little-endian, row-major; dims and
// precision supplied out-of-band (flags or a key=value sidecar).
struct DatasetDescriptor {
    std::string path;
    Dims dims;
    Precision precision = Precision::f32;
    bool little_endian = true;
    std::string attribute; // optional label, carried through reports
};

ScalarField load_raw(const DatasetDescriptor& desc);
void save_raw(const ScalarField& field, const std::string& path);

// Loads original + decompressed produced by an external compressor run.
std::pair<ScalarField, ScalarField> file_pair_adapter(const DatasetDescriptor& original_desc,
                                                      const DatasetDescriptor& decompressed_desc);

// Sidecar text format, one key=value per line: dims=64x64x64, dtype=f32|f64.
DatasetDescriptor load_descriptor(const std::string& sidecar_path);

} // namespace ffcz
