#include "ffcz/io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ffcz {

namespace {

template <typename T>
T byteswap_if(T v, bool swap) {
    if (!swap) return v;
    auto bytes = std::bit_cast<std::array<std::uint8_t, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
}

} // namespace

ScalarField load_raw(const DatasetDescriptor& desc) {
    std::size_t total = validate_dims(desc.dims);
    std::size_t expected = total * bytes_per_sample(desc.precision);

    std::error_code ec;
    auto actual = std::filesystem::file_size(desc.path, ec);
    if (ec) throw io_error("cannot stat " + desc.path + ": " + ec.message());
    if (actual != expected)
        throw io_error("size mismatch for " + desc.path + ": expected " +
                       std::to_string(expected) + " bytes, file has " + std::to_string(actual));

    std::ifstream in(desc.path, std::ios::binary);
    if (!in) throw io_error("cannot open " + desc.path);

    const bool swap = !desc.little_endian;
    std::vector<double> values(total);
    if (desc.precision == Precision::f32) {
        std::vector<float> buf(total);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(expected));
        for (std::size_t i = 0; i < total; ++i) values[i] = byteswap_if(buf[i], swap);
    } else {
        in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(expected));
        if (swap)
            for (auto& v : values) v = byteswap_if(v, true);
    }
    if (!in) throw io_error("short read on " + desc.path);
    return ScalarField::create(desc.dims, std::move(values), desc.precision);
}

void save_raw(const ScalarField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + " for writing");
    if (field.precision == Precision::f32) {
        std::vector<float> buf(field.size());
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<float>(field.values[i]);
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(float)));
    } else {
        out.write(reinterpret_cast<const char*>(field.values.data()),
                  static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    }
    if (!out) throw io_error("write failed on " + path);
}

std::pair<ScalarField, ScalarField> file_pair_adapter(const DatasetDescriptor& original_desc,
                                                      const DatasetDescriptor& decompressed_desc) {
    if (original_desc.dims != decompressed_desc.dims ||
        original_desc.precision != decompressed_desc.precision)
        throw validation_error("file_pair_adapter: descriptor dims/precision mismatch");
    return {load_raw(original_desc), load_raw(decompressed_desc)};
}

DatasetDescriptor load_descriptor(const std::string& sidecar_path) {
    std::ifstream in(sidecar_path);
    if (!in) throw io_error("cannot open sidecar " + sidecar_path);
    DatasetDescriptor desc;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "path") {
            desc.path = val;
        } else if (key == "dims") {
            desc.dims.clear();
            std::stringstream ss(val);
            std::string part;
            while (std::getline(ss, part, 'x')) desc.dims.push_back(std::stoull(part));
        } else if (key == "dtype") {
            if (val == "f32")
                desc.precision = Precision::f32;
            else if (val == "f64")
                desc.precision = Precision::f64;
            else
                throw validation_error("sidecar dtype must be f32 or f64");
        } else if (key == "byteorder") {
            desc.little_endian = (val != "big");
        } else if (key == "attribute") {
            desc.attribute = val;
        }
    }
    validate_dims(desc.dims);
    return desc;
}

} // namespace ffcz
