#pragma once

#include <cstdint>

#include "setshaping/bigint.hpp"
#include "setshaping/errors.hpp"
#include "setshaping/ranking.hpp"
#include "setshaping/sequence.hpp"
#include "setshaping/typespace.hpp"

namespace setshaping {

struct ShapingParams {
    Symbol ns = 0;                  // alphabet size, >= 2
    std::uint64_t input_length = 0; // N, >= 1
    std::uint64_t order = 1;        // K, the length increase, >= 1
    std::uint64_t budget = kDefaultTypeBudget;
};

// The shaping transform: length-N sequences mapped one-to-one onto the
// ns^N lowest-coding-limit sequences of length N+K. Realized without any
// correspondence table as unrank_shaped . rank_lex, with the shaped order
// fixed by the type index.
class Shaper {
public:
    explicit Shaper(const ShapingParams& params)
        : params_(validated(params)),
          index_(build_shaped_index(params.input_length + params.order, params.ns, params.budget)),
          image_size_(ipow(params.ns, params.input_length)) {}

    const ShapingParams& params() const { return params_; }
    const ShapedIndex& index() const { return index_; }
    const BigInt& image_size() const { return image_size_; } // ns^N

    Sequence shape(const Sequence& x) const {
        if (x.size() != params_.input_length || x.ns != params_.ns)
            throw DomainError("input does not match shaping parameters");
        return unrank_shaped(rank_lex(x), index_);
    }

    Sequence unshape(const Sequence& y) const {
        if (y.size() != params_.input_length + params_.order || y.ns != params_.ns)
            throw DomainError("input does not match shaping parameters");
        const BigInt r = rank_shaped(y, index_);
        if (r >= image_size_)
            throw NotInShapedSet("sequence lies outside the shaped image (rank " + r.str() +
                                 " >= ns^N = " + image_size_.str() + ")");
        return unrank_lex(r, params_.input_length, params_.ns);
    }

private:
    static const ShapingParams& validated(const ShapingParams& p) {
        if (p.ns < 2) throw DomainError("shaping needs an alphabet of at least 2 symbols");
        if (p.input_length < 1) throw DomainError("shaping needs input length >= 1");
        if (p.order < 1) throw DomainError("shaping order must be >= 1");
        return p;
    }

    ShapingParams params_;
    ShapedIndex index_;
    BigInt image_size_;
};

// One-shot conveniences; they build the index per call, so reuse a Shaper
// when transforming more than one sequence.
inline Sequence shape(const Sequence& x, const ShapingParams& params) {
    return Shaper(params).shape(x);
}

inline Sequence unshape(const Sequence& y, const ShapingParams& params) {
    return Shaper(params).unshape(y);
}

} // namespace setshaping
