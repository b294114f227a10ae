#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "setshaping/errors.hpp"

namespace setshaping {

using Symbol = std::uint32_t; // 1-based

// A finite sequence over the alphabet {1, .., ns}.
struct Sequence {
    std::vector<Symbol> symbols;
    Symbol ns = 0;

    Sequence() = default;
    Sequence(std::vector<Symbol> syms, Symbol alphabet_size)
        : symbols(std::move(syms)), ns(alphabet_size) {
        if (ns < 1) throw DomainError("alphabet size must be at least 1");
        for (Symbol s : symbols)
            if (s < 1 || s > ns) throw DomainError("symbol out of range 1..ns");
    }

    std::size_t size() const { return symbols.size(); }
    bool operator==(const Sequence&) const = default;
};

// Per-symbol occurrence counts; counts[s-1] is the count of symbol s.
struct Histogram {
    std::vector<std::uint32_t> counts;

    std::uint64_t total() const {
        return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }
    bool operator==(const Histogram&) const = default;
};

inline std::string sequence_to_string(const Sequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.symbols.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(seq.symbols[i]);
    }
    return out;
}

inline Histogram empirical_histogram(const Sequence& seq) {
    if (seq.symbols.empty()) throw DomainError("cannot take frequencies of an empty sequence");
    Histogram h;
    h.counts.assign(seq.ns, 0);
    for (Symbol s : seq.symbols) ++h.counts[s - 1];
    return h;
}

// Coding limit of any sequence with these counts, in bits:
// -sum over nonzero counts of c * log2(c / n). Symbols with zero count
// never contribute, so log2(0) cannot arise.
inline double type_coding_limit(const Histogram& hist) {
    const std::uint64_t n = hist.total();
    if (n == 0) throw DomainError("all-zero histogram");
    double lc = 0.0;
    for (std::uint32_t c : hist.counts)
        if (c > 0) lc -= static_cast<double>(c) * std::log2(static_cast<double>(c) / static_cast<double>(n));
    return lc;
}

// Coding limit Lc(x) = -sum_i log2 p(x_i) with p the within-sequence
// frequency. Depends only on the histogram, so it is computed through
// the exact same arithmetic path as type_coding_limit.
inline double coding_limit(const Sequence& seq) {
    return type_coding_limit(empirical_histogram(seq));
}

} // namespace setshaping
