#include "ffcz/huffman.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <queue>
#include <string>

#include "ffcz/errors.hpp"

namespace ffcz::huffman {

namespace {

struct BitWriter {
    std::vector<std::uint8_t>& out;
    std::uint8_t cur = 0;
    int used = 0;
    std::uint64_t bits_written = 0;

    void put(std::uint32_t code, int len) {
        for (int i = len - 1; i >= 0; --i) {
            cur = static_cast<std::uint8_t>((cur << 1) | ((code >> i) & 1u));
            if (++used == 8) {
                out.push_back(cur);
                cur = 0;
                used = 0;
            }
        }
        bits_written += static_cast<std::uint64_t>(len);
    }
    void flush() {
        if (used > 0) {
            out.push_back(static_cast<std::uint8_t>(cur << (8 - used)));
            cur = 0;
            used = 0;
        }
    }
};

struct BitReader {
    const std::uint8_t* data;
    std::size_t nbytes;
    std::uint64_t pos = 0; // bit position
    std::uint64_t limit;   // total valid bits

    int next() {
        if (pos >= limit) throw format_error("huffman: bitstream exhausted");
        std::size_t byte = pos >> 3;
        int bit = 7 - static_cast<int>(pos & 7);
        ++pos;
        return (data[byte] >> bit) & 1;
    }
};

template <typename T>
void append_pod(std::vector<std::uint8_t>& out, T v) {
    std::uint8_t buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.insert(out.end(), buf, buf + sizeof(T));
}

template <typename T>
T read_pod(const std::vector<std::uint8_t>& in, std::size_t& off) {
    if (off + sizeof(T) > in.size()) throw format_error("huffman: truncated stream");
    T v;
    std::memcpy(&v, in.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

// Code lengths via a pairing of the two least-frequent subtrees. Deterministic
// tie-breaking on (weight, smallest contained symbol).
std::vector<std::uint8_t> build_lengths(const std::vector<std::uint32_t>& symbols,
                                        const std::vector<std::uint64_t>& freqs) {
    std::size_t n = symbols.size();
    if (n == 1) return {1};

    struct Node {
        std::uint64_t weight;
        std::uint32_t tiebreak;
        int left, right; // -1 for leaves
        int symbol_idx;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n);
    auto cmp = [&nodes](int a, int b) {
        if (nodes[a].weight != nodes[b].weight) return nodes[a].weight > nodes[b].weight;
        return nodes[a].tiebreak > nodes[b].tiebreak;
    };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back({freqs[i], symbols[i], -1, -1, static_cast<int>(i)});
        heap.push(static_cast<int>(i));
    }
    while (heap.size() > 1) {
        int a = heap.top();
        heap.pop();
        int b = heap.top();
        heap.pop();
        nodes.push_back({nodes[a].weight + nodes[b].weight,
                         std::min(nodes[a].tiebreak, nodes[b].tiebreak), a, b, -1});
        heap.push(static_cast<int>(nodes.size()) - 1);
    }
    std::vector<std::uint8_t> lengths(n, 0);
    // Depth-first depth assignment from the root.
    std::vector<std::pair<int, int>> stack{{heap.top(), 0}};
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        if (nodes[idx].left < 0) {
            lengths[nodes[idx].symbol_idx] = static_cast<std::uint8_t>(depth);
        } else {
            stack.push_back({nodes[idx].left, depth + 1});
            stack.push_back({nodes[idx].right, depth + 1});
        }
    }
    return lengths;
}

struct CanonicalTable {
    std::vector<std::uint32_t> symbols; // sorted by (length, symbol)
    std::vector<std::uint8_t> lengths;  // matching
    std::vector<std::uint32_t> codes;

    void assign_codes() {
        codes.resize(symbols.size());
        std::uint32_t code = 0;
        int prev_len = 0;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            code <<= (lengths[i] - prev_len);
            codes[i] = code++;
            prev_len = lengths[i];
        }
    }
};

CanonicalTable canonicalize(std::vector<std::uint32_t> symbols, std::vector<std::uint8_t> lengths) {
    std::vector<std::size_t> order(symbols.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
        return symbols[a] < symbols[b];
    });
    CanonicalTable t;
    t.symbols.reserve(symbols.size());
    t.lengths.reserve(symbols.size());
    for (std::size_t i : order) {
        t.symbols.push_back(symbols[i]);
        t.lengths.push_back(lengths[i]);
    }
    t.assign_codes();
    return t;
}

void encode_block(std::vector<std::uint8_t>& out, const std::uint32_t* data, std::size_t n) {
    std::map<std::uint32_t, std::uint64_t> freq;
    for (std::size_t i = 0; i < n; ++i) ++freq[data[i]];

    std::vector<std::uint32_t> symbols;
    std::vector<std::uint64_t> counts;
    for (auto& [s, c] : freq) {
        symbols.push_back(s);
        counts.push_back(c);
    }
    CanonicalTable table = canonicalize(symbols, build_lengths(symbols, counts));

    append_pod<std::uint32_t>(out, static_cast<std::uint32_t>(n));
    append_pod<std::uint32_t>(out, static_cast<std::uint32_t>(table.symbols.size()));
    for (std::size_t i = 0; i < table.symbols.size(); ++i) {
        append_pod<std::uint32_t>(out, table.symbols[i]);
        append_pod<std::uint8_t>(out, table.lengths[i]);
    }

    std::map<std::uint32_t, std::pair<std::uint32_t, int>> code_of;
    for (std::size_t i = 0; i < table.symbols.size(); ++i)
        code_of[table.symbols[i]] = {table.codes[i], table.lengths[i]};

    std::size_t bitcount_pos = out.size();
    append_pod<std::uint64_t>(out, 0); // patched below
    BitWriter bw{out};
    for (std::size_t i = 0; i < n; ++i) {
        auto [code, len] = code_of[data[i]];
        bw.put(code, len);
    }
    bw.flush();
    std::uint64_t nbits = bw.bits_written;
    std::memcpy(out.data() + bitcount_pos, &nbits, sizeof(nbits));
}

void decode_block(const std::vector<std::uint8_t>& in, std::size_t& off,
                  std::vector<std::uint32_t>& out) {
    std::uint32_t n = read_pod<std::uint32_t>(in, off);
    std::uint32_t distinct = read_pod<std::uint32_t>(in, off);
    if (distinct == 0 || distinct > n) throw format_error("huffman: bad table size");

    std::vector<std::uint32_t> symbols(distinct);
    std::vector<std::uint8_t> lengths(distinct);
    for (std::uint32_t i = 0; i < distinct; ++i) {
        symbols[i] = read_pod<std::uint32_t>(in, off);
        lengths[i] = read_pod<std::uint8_t>(in, off);
        if (lengths[i] == 0 || lengths[i] > 32) throw format_error("huffman: bad code length");
    }
    CanonicalTable table = canonicalize(symbols, lengths);

    // first code and symbol offset per length, for canonical decoding
    int max_len = table.lengths.back();
    std::vector<std::uint32_t> first_code(max_len + 1, 0), first_idx(max_len + 1, 0),
        count(max_len + 1, 0);
    for (std::size_t i = 0; i < table.lengths.size(); ++i) ++count[table.lengths[i]];
    {
        std::uint32_t code = 0, idx = 0;
        for (int len = 1; len <= max_len; ++len) {
            code <<= 1;
            first_code[len] = code;
            first_idx[len] = idx;
            code += count[len];
            idx += count[len];
        }
    }

    std::uint64_t nbits = read_pod<std::uint64_t>(in, off);
    std::size_t nbytes = static_cast<std::size_t>((nbits + 7) / 8);
    if (off + nbytes > in.size()) throw format_error("huffman: truncated bitstream");
    BitReader br{in.data() + off, nbytes, 0, nbits};
    off += nbytes;

    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t code = 0;
        for (int len = 1;; ++len) {
            if (len > max_len) throw format_error("huffman: invalid code");
            code = (code << 1) | static_cast<std::uint32_t>(br.next());
            std::uint32_t rel = code - first_code[len];
            if (code >= first_code[len] && rel < count[len]) {
                out.push_back(table.symbols[first_idx[len] + rel]);
                break;
            }
        }
    }
}

} // namespace

std::vector<std::uint8_t> encode(const std::vector<std::uint32_t>& symbols) {
    std::vector<std::uint8_t> out;
    append_pod<std::uint64_t>(out, symbols.size());
    for (std::size_t start = 0; start < symbols.size(); start += kBlockSymbols)
        encode_block(out, symbols.data() + start,
                     std::min(kBlockSymbols, symbols.size() - start));
    return out;
}

std::vector<std::uint32_t> decode(const std::vector<std::uint8_t>& bytes) {
    std::size_t off = 0;
    std::uint64_t total = read_pod<std::uint64_t>(bytes, off);
    std::vector<std::uint32_t> out;
    out.reserve(total);
    while (out.size() < total) decode_block(bytes, off, out);
    if (out.size() != total || off != bytes.size())
        throw format_error("huffman: stream length mismatch");
    return out;
}

} // namespace ffcz::huffman
