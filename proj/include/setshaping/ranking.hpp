#pragma once

#include <cstdint>
#include <vector>

#include "setshaping/bigint.hpp"
#include "setshaping/errors.hpp"
#include "setshaping/sequence.hpp"
#include "setshaping/typespace.hpp"

namespace setshaping {

// Positional base-ns value of the digits (symbol - 1), most significant
// first. Bijective from length-n sequences onto [0, ns^n).
inline BigInt rank_lex(const Sequence& seq) {
    BigInt r = 0;
    for (Symbol s : seq.symbols) {
        r *= seq.ns;
        r += s - 1;
    }
    return r;
}

inline Sequence unrank_lex(BigInt r, std::uint64_t n, Symbol ns) {
    if (ns < 1) throw DomainError("alphabet size must be at least 1");
    if (r < 0 || r >= ipow(ns, n)) throw DomainError("lexicographic rank out of range [0, ns^n)");
    std::vector<Symbol> symbols(n);
    for (std::uint64_t i = n; i-- > 0;) {
        symbols[i] = static_cast<Symbol>(r % ns) + 1;
        r /= ns;
    }
    return Sequence(std::move(symbols), ns);
}

// Lexicographic rank of seq among the arrangements of its own histogram.
// Walks the positions keeping M = number of arrangements of the remaining
// multiset; class sizes shrink incrementally by multiply/divide, never
// through factorials.
inline BigInt rank_in_type(const Sequence& seq) {
    Histogram hist = empirical_histogram(seq);
    BigInt m = type_class_size(hist);
    BigInt r = 0;
    std::uint64_t remaining = seq.size();
    for (Symbol x : seq.symbols) {
        std::uint64_t smaller = 0;
        for (Symbol s = 1; s < x; ++s) smaller += hist.counts[s - 1];
        if (smaller > 0) {
            // arrangements starting with any symbol below x
            r += m * smaller / remaining;
        }
        m *= hist.counts[x - 1];
        m /= remaining;
        --hist.counts[x - 1];
        --remaining;
    }
    return r;
}

inline Sequence unrank_in_type(BigInt r, const Histogram& hist) {
    BigInt m = type_class_size(hist);
    if (r < 0 || r >= m) throw DomainError("in-type rank out of range [0, class size)");
    std::vector<std::uint32_t> counts = hist.counts;
    const Symbol ns = static_cast<Symbol>(counts.size());
    std::uint64_t remaining = hist.total();
    std::vector<Symbol> symbols;
    symbols.reserve(remaining);
    while (remaining > 0) {
        for (Symbol s = 1; s <= ns; ++s) {
            if (counts[s - 1] == 0) continue;
            BigInt starting_here = m * counts[s - 1] / remaining;
            if (r < starting_here) {
                symbols.push_back(s);
                m = std::move(starting_here);
                --counts[s - 1];
                --remaining;
                break;
            }
            r -= starting_here;
        }
    }
    return Sequence(std::move(symbols), ns);
}

// Global rank in the shaping order of length-n strings: the cumulative
// class sizes of all preceding types plus the in-type rank.
inline BigInt rank_shaped(const Sequence& seq, const ShapedIndex& index) {
    if (seq.size() != index.n() || seq.ns != index.ns())
        throw DomainError("sequence does not match index dimensions");
    const std::size_t t = index.find_type(empirical_histogram(seq));
    return index.cumulative_before(t) + rank_in_type(seq);
}

inline Sequence unrank_shaped(const BigInt& r, const ShapedIndex& index) {
    const auto loc = index.locate_rank(r);
    return unrank_in_type(loc.offset, index.histogram_at(loc.type_index));
}

} // namespace setshaping
