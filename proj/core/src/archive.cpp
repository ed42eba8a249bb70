#include "ffcz/archive.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "ffcz/streams.hpp"
#include "ffcz/transform.hpp"

namespace ffcz {

namespace {

std::uint32_t crc32c_table_entry(std::uint32_t i) {
    std::uint32_t crc = i;
    for (int j = 0; j < 8; ++j)
        crc = (crc >> 1) ^ (0x82F63B78u & (~(crc & 1u) + 1u));
    return crc;
}

struct Writer {
    std::vector<std::uint8_t> buf;

    template <typename T>
    void pod(T v) {
        std::uint8_t tmp[sizeof(T)];
        std::memcpy(tmp, &v, sizeof(T));
        buf.insert(buf.end(), tmp, tmp + sizeof(T));
    }
    void bytes(const std::vector<std::uint8_t>& b) { buf.insert(buf.end(), b.begin(), b.end()); }
};

struct Reader {
    const std::vector<std::uint8_t>& buf;
    std::size_t off = 0;

    template <typename T>
    T pod() {
        if (off + sizeof(T) > buf.size()) throw format_error("archive truncated");
        T v;
        std::memcpy(&v, buf.data() + off, sizeof(T));
        off += sizeof(T);
        return v;
    }
    std::vector<std::uint8_t> bytes(std::size_t n) {
        if (off + n > buf.size()) throw format_error("archive truncated");
        std::vector<std::uint8_t> out(buf.begin() + off, buf.begin() + off + n);
        off += n;
        return out;
    }
};

constexpr std::uint8_t kTagSpatialPerPoint = 1u << 0;
constexpr std::uint8_t kTagFreqPerComponent = 1u << 1;
constexpr std::uint8_t kTagConverged = 1u << 2;

} // namespace

std::uint32_t crc32c(const std::uint8_t* data, std::size_t len) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) t[i] = crc32c_table_entry(i);
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i)
        crc = (crc >> 8) ^ table[(crc ^ data[i]) & 0xFFu];
    return crc ^ 0xFFFFFFFFu;
}

std::vector<std::uint8_t> write_archive(const EditSet& edits, const QuantizationParams& params,
                                        const Dims& dims, Precision precision, bool converged,
                                        const std::vector<EscapeEntry>& escapes) {
    std::size_t total = validate_dims(dims);
    params.bounds.validate_for(dims);
    if (edits.spatial_flags.size() != total || edits.frequency_flags.size() != half_count(dims))
        throw validation_error("write_archive: flag lengths do not match dims");
    if (edits.spatial_flags.popcount() != edits.spatial_values.size() ||
        edits.frequency_flags.popcount() != edits.frequency_values.size())
        throw validation_error("write_archive: flag popcount does not match value count");

    auto spat_idx = flagged_indices(edits.spatial_flags);
    auto freq_idx = flagged_indices(edits.frequency_flags);
    auto spat_q = quantize_edits(edits.spatial_values, spat_idx, params);
    auto freq_q = quantize_edits(dims, edits.frequency_values, freq_idx, params);

    EncodedStreams spat_streams = encode_streams(edits.spatial_flags, spat_q);
    EncodedStreams freq_streams = encode_streams(edits.frequency_flags, freq_q);

    Writer w;
    w.buf.insert(w.buf.end(), kArchiveMagic, kArchiveMagic + 4);
    w.pod<std::uint16_t>(kArchiveVersion);
    w.pod<std::uint8_t>(static_cast<std::uint8_t>(dims.size()));
    for (std::size_t d : dims) w.pod<std::uint64_t>(d);
    w.pod<std::uint8_t>(static_cast<std::uint8_t>(precision));
    std::uint8_t tags = 0;
    if (params.bounds.spatial.per_point) tags |= kTagSpatialPerPoint;
    if (params.bounds.frequency.per_component) tags |= kTagFreqPerComponent;
    if (converged) tags |= kTagConverged;
    w.pod<std::uint8_t>(tags);
    if (params.bounds.spatial.per_point)
        for (double v : params.bounds.spatial.values) w.pod<double>(v);
    else
        w.pod<double>(params.bounds.spatial.global);
    if (params.bounds.frequency.per_component) {
        for (double v : params.bounds.frequency.re) w.pod<double>(v);
        for (double v : params.bounds.frequency.im) w.pod<double>(v);
    } else {
        w.pod<double>(params.bounds.frequency.global);
    }
    w.pod<std::uint8_t>(static_cast<std::uint8_t>(params.m));
    w.pod<std::uint64_t>(edits.spatial_values.size());
    w.pod<std::uint64_t>(edits.frequency_values.size());
    w.pod<std::uint64_t>(spat_streams.flag_bytes.size());
    w.pod<std::uint64_t>(freq_streams.flag_bytes.size());
    w.pod<std::uint64_t>(spat_streams.index_bytes.size());
    w.pod<std::uint64_t>(freq_streams.index_bytes.size());
    w.pod<std::uint64_t>(escapes.size());
    w.pod<std::uint32_t>(crc32c(w.buf.data(), w.buf.size()));

    w.bytes(spat_streams.flag_bytes);
    w.bytes(freq_streams.flag_bytes);
    w.bytes(spat_streams.index_bytes);
    w.bytes(freq_streams.index_bytes);
    for (const EscapeEntry& e : escapes) {
        std::uint64_t packed = e.index;
        if (e.frequency) packed |= (1ull << 63);
        w.pod<std::uint64_t>(packed);
        w.pod<double>(e.re);
        if (e.frequency) w.pod<double>(e.im);
    }
    return w.buf;
}

DecodedArchive read_archive(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes};
    auto magic = r.bytes(4);
    if (std::memcmp(magic.data(), kArchiveMagic, 4) != 0)
        throw format_error("read_archive: bad magic");
    if (r.pod<std::uint16_t>() != kArchiveVersion)
        throw format_error("read_archive: unsupported version");
    std::uint8_t ndim = r.pod<std::uint8_t>();
    if (ndim < 1 || ndim > 3) throw format_error("read_archive: bad dimensionality");
    Dims dims(ndim);
    for (auto& d : dims) {
        d = r.pod<std::uint64_t>();
        if (d == 0) throw format_error("read_archive: zero extent");
    }
    std::size_t total = total_samples(dims);

    DecodedArchive out;
    out.dims = dims;
    std::uint8_t prec = r.pod<std::uint8_t>();
    if (prec > 1) throw format_error("read_archive: bad precision tag");
    out.precision = static_cast<Precision>(prec);
    std::uint8_t tags = r.pod<std::uint8_t>();
    out.converged = tags & kTagConverged;

    DualBounds bounds;
    if (tags & kTagSpatialPerPoint) {
        std::vector<double> e(total);
        for (auto& v : e) v = r.pod<double>();
        bounds.spatial = DualBounds::spatial_per_point(std::move(e));
    } else {
        bounds.spatial = DualBounds::spatial_global(r.pod<double>());
    }
    if (tags & kTagFreqPerComponent) {
        std::vector<double> re(total), im(total);
        for (auto& v : re) v = r.pod<double>();
        for (auto& v : im) v = r.pod<double>();
        bounds.frequency = DualBounds::frequency_per_component(dims, std::move(re), std::move(im));
    } else {
        bounds.frequency = DualBounds::frequency_global(r.pod<double>());
    }
    std::uint8_t m = r.pod<std::uint8_t>();
    if (m < 1 || m > 24) throw format_error("read_archive: bad quantization width");
    out.params = QuantizationParams{m, std::move(bounds)};

    std::uint64_t n_spat = r.pod<std::uint64_t>();
    std::uint64_t n_freq = r.pod<std::uint64_t>();
    std::uint64_t len_sf = r.pod<std::uint64_t>();
    std::uint64_t len_ff = r.pod<std::uint64_t>();
    std::uint64_t len_si = r.pod<std::uint64_t>();
    std::uint64_t len_fi = r.pod<std::uint64_t>();
    std::uint64_t n_escape = r.pod<std::uint64_t>();

    std::size_t header_len = r.off;
    std::uint32_t stored_crc = r.pod<std::uint32_t>();
    if (crc32c(bytes.data(), header_len) != stored_crc)
        throw format_error("read_archive: header checksum mismatch");

    EncodedStreams spat_streams{r.bytes(len_sf), std::vector<std::uint8_t>{}};
    EncodedStreams freq_streams{r.bytes(len_ff), std::vector<std::uint8_t>{}};
    spat_streams.index_bytes = r.bytes(len_si);
    freq_streams.index_bytes = r.bytes(len_fi);

    auto [spat_flags, spat_q] = decode_streams(spat_streams, total);
    auto [freq_flags, freq_q] = decode_streams(freq_streams, half_count(dims));
    if (spat_flags.popcount() != n_spat || spat_q.size() != n_spat)
        throw format_error("read_archive: spatial edit count mismatch");
    if (freq_flags.popcount() != n_freq || freq_q.size() != 2 * n_freq)
        throw format_error("read_archive: frequency edit count mismatch");

    auto spat_idx = flagged_indices(spat_flags);
    auto freq_idx = flagged_indices(freq_flags);
    out.edits.spatial_values = dequantize_edits(spat_q, spat_idx, out.params);
    out.edits.frequency_values = dequantize_edits(dims, freq_q, freq_idx, out.params);
    out.edits.spatial_flags = std::move(spat_flags);
    out.edits.frequency_flags = std::move(freq_flags);

    out.escapes.resize(n_escape);
    for (auto& e : out.escapes) {
        std::uint64_t packed = r.pod<std::uint64_t>();
        e.frequency = packed >> 63;
        e.index = packed & ~(1ull << 63);
        e.re = r.pod<double>();
        if (e.frequency) e.im = r.pod<double>();
        std::size_t limit = e.frequency ? half_count(dims) : total;
        if (e.index >= limit) throw format_error("read_archive: escape index out of range");
    }
    if (r.off != bytes.size()) throw format_error("read_archive: trailing bytes");
    return out;
}

DenseDecodedEdits expand_edits(const DecodedArchive& archive) {
    const Dims& dims = archive.dims;
    std::size_t total = total_samples(dims);
    std::size_t hn = half_count(dims);

    DenseDecodedEdits out;
    out.spatial.assign(total, 0.0);
    {
        auto idx = flagged_indices(archive.edits.spatial_flags);
        for (std::size_t i = 0; i < idx.size(); ++i)
            out.spatial[idx[i]] = archive.edits.spatial_values[i];
    }
    std::vector<std::complex<double>> half(hn, {0.0, 0.0});
    {
        auto idx = flagged_indices(archive.edits.frequency_flags);
        for (std::size_t i = 0; i < idx.size(); ++i)
            half[idx[i]] = archive.edits.frequency_values[i];
    }
    for (const EscapeEntry& e : archive.escapes) {
        if (e.frequency)
            half[e.index] = {e.re, e.im};
        else
            out.spatial[e.index] = e.re;
    }
    out.frequency_full.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t h = full_to_half(dims, k);
        if (h != std::numeric_limits<std::size_t>::max())
            out.frequency_full[k] = half[h];
        else
            out.frequency_full[k] = std::conj(half[full_to_half(dims, mirror_index(dims, k))]);
    }
    return out;
}

ScalarField apply_edits(const ScalarField& decompressed, const DecodedArchive& archive) {
    if (decompressed.dims != archive.dims)
        throw validation_error("apply_edits: field dims do not match archive dims");
    DenseDecodedEdits dense = expand_edits(archive);
    ScalarField freq_part =
        inverse_dft(ComplexSpectrum{archive.dims, std::move(dense.frequency_full)},
                    decompressed.precision);
    std::vector<double> values(decompressed.size());
    for (std::size_t n = 0; n < values.size(); ++n)
        values[n] = decompressed.values[n] + dense.spatial[n] + freq_part.values[n];
    return ScalarField{decompressed.dims, std::move(values), decompressed.precision};
}

VerifyResult verify_bounds(const ScalarField& original, const ScalarField& corrected,
                           const DualBounds& bounds_original) {
    if (original.dims != corrected.dims)
        throw validation_error("verify_bounds: dims mismatch");
    bounds_original.validate_for(original.dims);

    VerifyResult out;
    std::vector<double> eps(original.size());
    for (std::size_t n = 0; n < eps.size(); ++n) {
        eps[n] = corrected.values[n] - original.values[n];
        double ex = std::abs(eps[n]) - bounds_original.spatial.at(n);
        if (ex > 0.0) out.max_spatial_excess = std::max(out.max_spatial_excess, ex);
    }
    ComplexSpectrum delta = forward_dft(ScalarField{original.dims, std::move(eps), Precision::f64});
    for (std::size_t k = 0; k < delta.size(); ++k) {
        double ex_re = std::abs(delta.values[k].real()) - bounds_original.frequency.re_at(k);
        double ex_im = std::abs(delta.values[k].imag()) - bounds_original.frequency.im_at(k);
        double ex = std::max(ex_re, ex_im);
        if (ex > 0.0) out.max_freq_excess = std::max(out.max_freq_excess, ex);
    }
    out.ok = out.max_spatial_excess == 0.0 && out.max_freq_excess == 0.0;
    return out;
}

} // namespace ffcz
