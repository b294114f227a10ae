#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "setshaping/errors.hpp"
#include "setshaping/sequence.hpp"

namespace setshaping {

// A codeword is the low `length` bits of `bits`, most significant bit first.
struct CodeWord {
    std::uint64_t bits = 0;
    std::uint8_t length = 0;

    bool operator==(const CodeWord&) const = default;

    std::string to_string() const {
        std::string s(length, '0');
        for (unsigned i = 0; i < length; ++i)
            if ((bits >> (length - 1 - i)) & 1) s[i] = '1';
        return s;
    }
};

// Prefix-free map from the symbols with nonzero count to codewords.
// Codewords are canonical: a pure function of the length profile, assigned
// by (length ascending, symbol ascending).
struct CodeBook {
    Symbol ns = 0;
    std::vector<CodeWord> words; // indexed by symbol - 1; length 0 means absent

    bool contains(Symbol s) const {
        return s >= 1 && s <= ns && words[s - 1].length > 0;
    }
    bool operator==(const CodeBook&) const = default;
};

// Bit container packing MSB-first into bytes.
class BitString {
public:
    void push_bit(bool b) {
        if (nbits_ % 8 == 0) bytes_.push_back(0);
        if (b) bytes_[nbits_ / 8] |= static_cast<std::uint8_t>(0x80u >> (nbits_ % 8));
        ++nbits_;
    }

    void append(CodeWord w) {
        for (unsigned i = w.length; i-- > 0;) push_bit((w.bits >> i) & 1);
    }

    bool bit(std::size_t i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1; }
    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    std::string to_string() const {
        std::string s(nbits_, '0');
        for (std::size_t i = 0; i < nbits_; ++i)
            if (bit(i)) s[i] = '1';
        return s;
    }

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

// Huffman code over integer weights = counts, zero-count symbols excluded.
// Merge tie-break: repeatedly join the two nodes with the smallest
// (weight, smallest contained symbol). A lone symbol gets the 1-bit
// codeword "0".
inline CodeBook build_code(const Histogram& hist) {
    struct Node {
        std::uint64_t weight;
        Symbol minsym;
        int parent = -1;
    };
    std::vector<Node> nodes;
    std::vector<Symbol> leaf_symbol;
    for (Symbol s = 1; s <= hist.counts.size(); ++s) {
        if (hist.counts[s - 1] > 0) {
            nodes.push_back({hist.counts[s - 1], s});
            leaf_symbol.push_back(s);
        }
    }
    if (nodes.empty()) throw DomainError("all-zero histogram");

    CodeBook book;
    book.ns = static_cast<Symbol>(hist.counts.size());
    book.words.assign(hist.counts.size(), CodeWord{});
    if (nodes.size() == 1) {
        book.words[leaf_symbol[0] - 1] = CodeWord{0, 1};
        return book;
    }

    const auto heavier = [&nodes](std::size_t a, std::size_t b) {
        return std::tie(nodes[a].weight, nodes[a].minsym) > std::tie(nodes[b].weight, nodes[b].minsym);
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(heavier)> queue(heavier);
    for (std::size_t i = 0; i < nodes.size(); ++i) queue.push(i);
    while (queue.size() > 1) {
        const std::size_t a = queue.top();
        queue.pop();
        const std::size_t b = queue.top();
        queue.pop();
        const std::size_t merged = nodes.size();
        nodes.push_back({nodes[a].weight + nodes[b].weight,
                         std::min(nodes[a].minsym, nodes[b].minsym)});
        nodes[a].parent = static_cast<int>(merged);
        nodes[b].parent = static_cast<int>(merged);
        queue.push(merged);
    }

    std::vector<std::pair<std::uint8_t, Symbol>> profile; // (length, symbol)
    for (std::size_t i = 0; i < leaf_symbol.size(); ++i) {
        unsigned depth = 0;
        for (int p = nodes[i].parent; p != -1; p = nodes[p].parent) ++depth;
        if (depth > 64) throw DomainError("codeword length exceeds 64 bits");
        profile.emplace_back(static_cast<std::uint8_t>(depth), leaf_symbol[i]);
    }
    std::sort(profile.begin(), profile.end());

    std::uint64_t code = 0;
    std::uint8_t prev_len = profile.front().first;
    for (const auto& [len, sym] : profile) {
        code <<= (len - prev_len);
        book.words[sym - 1] = CodeWord{code, len};
        ++code;
        prev_len = len;
    }
    return book;
}

inline BitString encode(const Sequence& seq, const CodeBook& book) {
    BitString out;
    for (Symbol s : seq.symbols) {
        if (s > book.ns || !book.contains(s))
            throw DomainError("symbol " + std::to_string(s) + " has no codeword");
        out.append(book.words[s - 1]);
    }
    return out;
}

// Canonical decoding: accumulate bits and match against the contiguous
// code range of each length. Only valid for codebooks out of build_code.
inline Sequence decode(const BitString& bits, const CodeBook& book) {
    std::uint8_t max_len = 0;
    for (const CodeWord& w : book.words) max_len = std::max(max_len, w.length);
    if (max_len == 0) throw DomainError("empty codebook");

    // per length: first canonical code, symbols in canonical order
    std::vector<std::uint64_t> first_code(max_len + 1, 0);
    std::vector<std::vector<Symbol>> symbols_of(max_len + 1);
    std::vector<std::pair<std::uint8_t, Symbol>> profile;
    for (Symbol s = 1; s <= book.ns; ++s)
        if (book.words[s - 1].length > 0) profile.emplace_back(book.words[s - 1].length, s);
    std::sort(profile.begin(), profile.end());
    for (const auto& [len, sym] : profile) {
        if (symbols_of[len].empty()) first_code[len] = book.words[sym - 1].bits;
        symbols_of[len].push_back(sym);
    }

    std::vector<Symbol> out;
    std::uint64_t acc = 0;
    std::uint8_t len = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        acc = (acc << 1) | static_cast<std::uint64_t>(bits.bit(i));
        ++len;
        if (!symbols_of[len].empty() && acc >= first_code[len] &&
            acc - first_code[len] < symbols_of[len].size()) {
            out.push_back(symbols_of[len][static_cast<std::size_t>(acc - first_code[len])]);
            acc = 0;
            len = 0;
            continue;
        }
        if (len == max_len) throw DecodeError("bit group matches no codeword");
    }
    if (len != 0) throw DecodeError("dangling bits after last codeword");
    return Sequence(std::move(out), book.ns);
}

// Total encoded size in bits under the histogram's own code, without
// materializing the bit string.
inline std::uint64_t encoded_length(const Histogram& hist) {
    const CodeBook book = build_code(hist);
    std::uint64_t bits = 0;
    for (Symbol s = 1; s <= hist.counts.size(); ++s)
        bits += std::uint64_t{hist.counts[s - 1]} * book.words[s - 1].length;
    return bits;
}

// Exact bit length of seq encoded with the code built from its own
// frequencies.
inline std::uint64_t self_encoded_length(const Sequence& seq) {
    return encode(seq, build_code(empirical_histogram(seq))).size();
}

} // namespace setshaping
