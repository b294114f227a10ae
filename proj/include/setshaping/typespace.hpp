#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "setshaping/bigint.hpp"
#include "setshaping/errors.hpp"
#include "setshaping/sequence.hpp"

namespace setshaping {

inline constexpr std::uint64_t kDefaultTypeBudget = 20'000'000;

// Number of sequences sharing this histogram: n! / prod(counts_i!),
// accumulated as a product of binomials so every step stays integral.
inline BigInt type_class_size(const Histogram& hist) {
    BigInt size = 1;
    std::uint64_t assigned = 0;
    for (std::uint32_t c : hist.counts) {
        assigned += c;
        if (c > 0) size *= binomial(assigned, c);
    }
    return size;
}

// Exact ordering weight W = prod over counts of c^c (0^0 = 1). For fixed n,
// Lc = n*log2(n) - log2(W), so descending W is exactly ascending Lc with no
// floating point anywhere.
inline BigInt type_weight_of(std::span<const std::uint32_t> counts) {
    BigInt w = 1;
    for (std::uint32_t c : counts)
        if (c > 1) w *= ipow(c, c);
    return w;
}

inline BigInt type_weight(const Histogram& hist) { return type_weight_of(hist.counts); }

// Strict total order defining the shaped set: W descending, ties broken by
// histogram descending-lexicographic. Histograms must share n and ns.
inline bool shaping_type_precedes(const Histogram& a, const Histogram& b) {
    const BigInt wa = type_weight(a), wb = type_weight(b);
    if (wa != wb) return wa > wb;
    return std::lexicographical_compare(b.counts.begin(), b.counts.end(),
                                        a.counts.begin(), a.counts.end());
}

// Streams every way of placing n units into ns ordered slots, i.e. every
// candidate histogram of a length-n sequence, in descending-lexicographic
// order starting from (n, 0, .., 0). C(n+ns-1, ns-1) items in total.
class CompositionRange {
public:
    CompositionRange(std::uint64_t n, std::uint32_t ns) : n_(n), ns_(ns) {
        if (n < 1 || ns < 1) throw DomainError("compositions need n >= 1 and ns >= 1");
        if (n > 0xFFFFFFFFull) throw DomainError("composition length does not fit 32-bit counts");
    }

    class iterator {
    public:
        const std::vector<std::uint32_t>& operator*() const { return counts_; }

        iterator& operator++() {
            advance();
            return *this;
        }

        bool operator==(std::default_sentinel_t) const { return done_; }

    private:
        friend class CompositionRange;
        explicit iterator(std::uint32_t n, std::uint32_t ns) : n_(n), counts_(ns, 0) {
            counts_[0] = n;
        }

        void advance() {
            const std::size_t k = counts_.size();
            if (k == 1 || counts_[k - 1] == n_) {
                done_ = true;
                return;
            }
            std::size_t i = k - 2;
            while (counts_[i] == 0) --i;
            const std::uint32_t t = counts_[k - 1];
            counts_[k - 1] = 0;
            --counts_[i];
            counts_[i + 1] = t + 1;
        }

        std::uint32_t n_;
        std::vector<std::uint32_t> counts_;
        bool done_ = false;
    };

    iterator begin() const { return iterator(static_cast<std::uint32_t>(n_), ns_); }
    std::default_sentinel_t end() const { return {}; }

private:
    std::uint64_t n_;
    std::uint32_t ns_;
};

namespace detail {

template <class WKey>
WKey self_pow(std::uint32_t c);

template <>
inline unsigned __int128 self_pow<unsigned __int128>(std::uint32_t c) {
    unsigned __int128 r = 1;
    for (std::uint32_t i = 0; i < c; ++i) r *= c;
    return r;
}

template <>
inline BigInt self_pow<BigInt>(std::uint32_t c) {
    return c > 1 ? ipow(c, c) : BigInt(1);
}

// Walks every composition of n into ns parts while maintaining the ordering
// weight W and the class size M incrementally. One transition touches at
// most three slots: counts[i] a -> a-1, counts[i+1] 0 -> t+1 and
// counts[ns-1] t -> 0, so
//   W' = W / a^a * (a-1)^(a-1) / t^t * (t+1)^(t+1)
//   M' = M * a / (t+1)
// with every division exact. Emit receives (counts, w, m) per type.
template <class WKey, class Emit>
void enumerate_types_weighted(std::uint64_t n, std::uint32_t ns, Emit&& emit) {
    std::vector<std::uint32_t> counts(ns, 0);
    counts[0] = static_cast<std::uint32_t>(n);
    WKey w = self_pow<WKey>(static_cast<std::uint32_t>(n));
    BigInt m = 1;
    for (;;) {
        emit(std::span<const std::uint32_t>(counts), w, m);
        if (ns == 1 || counts[ns - 1] == n) break;
        std::size_t i = ns - 2;
        while (counts[i] == 0) --i;
        const std::uint32_t a = counts[i];
        const std::uint32_t t = counts[ns - 1];
        w /= self_pow<WKey>(a);
        w *= self_pow<WKey>(a - 1);
        w /= self_pow<WKey>(t);
        w *= self_pow<WKey>(t + 1);
        m *= a;
        m /= t + 1;
        counts[ns - 1] = 0;
        --counts[i];
        counts[i + 1] = t + 1;
    }
}

} // namespace detail

// The ordered table of every type class of length-n strings over {1, .., ns}:
// entries sorted by the shaping order with exact cumulative class sizes,
// binary-searchable from both sides (type -> cumulative, rank -> type).
// Immutable once built; safe to share across threads.
class ShapedIndex {
public:
    std::uint64_t n() const { return n_; }
    std::uint32_t ns() const { return ns_; }
    std::size_t type_count() const { return type_count_; }
    const BigInt& total() const { return total_; } // ns^n exactly

    std::span<const std::uint32_t> type_at(std::size_t i) const {
        return {counts_.data() + i * ns_, ns_};
    }

    Histogram histogram_at(std::size_t i) const {
        auto s = type_at(i);
        return Histogram{{s.begin(), s.end()}};
    }

    BigInt cumulative_before(std::size_t i) const { return cumulative_.get(i); }

    BigInt class_size_at(std::size_t i) const {
        return cumulative_.get(i + 1) - cumulative_.get(i);
    }

    // Position of a histogram in the shaping order.
    std::size_t find_type(const Histogram& hist) const {
        if (hist.counts.size() != ns_ || hist.total() != n_)
            throw DomainError("histogram does not match index dimensions");
        const BigInt probe_w = type_weight(hist);
        std::size_t lo = 0, hi = type_count_;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (entry_precedes(mid, probe_w, hist.counts))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == type_count_ || !std::equal(hist.counts.begin(), hist.counts.end(), type_at(lo).begin()))
            throw DomainError("histogram not present in index");
        return lo;
    }

    struct Location {
        std::size_t type_index;
        BigInt offset; // rank within the class
    };

    // Type containing global rank r, found by binary search on the
    // cumulative prefix sums.
    Location locate_rank(const BigInt& r) const {
        if (r < 0 || r >= total_) throw DomainError("rank out of range [0, ns^n)");
        const std::size_t j = cumulative_.upper_bound(r);
        return {j - 1, r - cumulative_.get(j - 1)};
    }

    bool operator==(const ShapedIndex&) const = default;

    void save(std::ostream& out) const {
        const char magic[8] = {'S', 'S', 'I', 'D', 'X', '0', '0', '1'};
        out.write(magic, 8);
        const std::uint64_t ns64 = ns_, tc = type_count_, limbs = cumulative_.limbs();
        out.write(reinterpret_cast<const char*>(&n_), 8);
        out.write(reinterpret_cast<const char*>(&ns64), 8);
        out.write(reinterpret_cast<const char*>(&tc), 8);
        out.write(reinterpret_cast<const char*>(&limbs), 8);
        out.write(reinterpret_cast<const char*>(counts_.data()),
                  static_cast<std::streamsize>(counts_.size() * sizeof(std::uint32_t)));
        out.write(reinterpret_cast<const char*>(cumulative_.raw().data()),
                  static_cast<std::streamsize>(cumulative_.raw().size() * sizeof(std::uint64_t)));
        if (!out) throw DomainError("failed to write index cache");
    }

    void save(const std::string& path) const {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw DomainError("cannot open index cache for writing: " + path);
        save(f);
    }

    static ShapedIndex load(std::istream& in) {
        char magic[8];
        in.read(magic, 8);
        if (!in || std::memcmp(magic, "SSIDX001", 8) != 0)
            throw DomainError("bad index cache magic/version");
        std::uint64_t n = 0, ns64 = 0, tc = 0, limbs = 0;
        in.read(reinterpret_cast<char*>(&n), 8);
        in.read(reinterpret_cast<char*>(&ns64), 8);
        in.read(reinterpret_cast<char*>(&tc), 8);
        in.read(reinterpret_cast<char*>(&limbs), 8);
        if (!in || ns64 == 0 || ns64 > 0xFFFFFFFFull) throw DomainError("bad index cache header");
        ShapedIndex idx;
        idx.n_ = n;
        idx.ns_ = static_cast<std::uint32_t>(ns64);
        idx.type_count_ = static_cast<std::size_t>(tc);
        idx.counts_.resize(idx.type_count_ * idx.ns_);
        idx.cumulative_ = PackedBigIntVector(idx.type_count_ + 1, static_cast<unsigned>(limbs));
        in.read(reinterpret_cast<char*>(idx.counts_.data()),
                static_cast<std::streamsize>(idx.counts_.size() * sizeof(std::uint32_t)));
        in.read(reinterpret_cast<char*>(idx.cumulative_.raw().data()),
                static_cast<std::streamsize>(idx.cumulative_.raw().size() * sizeof(std::uint64_t)));
        if (!in) throw DomainError("truncated index cache");
        idx.total_ = ipow(idx.ns_, idx.n_);
        if (idx.cumulative_.get(idx.type_count_) != idx.total_)
            throw DomainError("index cache failed consistency check");
        return idx;
    }

    static ShapedIndex load(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw DomainError("cannot open index cache: " + path);
        return load(f);
    }

private:
    friend ShapedIndex build_shaped_index(std::uint64_t, std::uint32_t, std::uint64_t);

    // True when entry i strictly precedes (probe_w, probe_counts).
    bool entry_precedes(std::size_t i, const BigInt& probe_w,
                        const std::vector<std::uint32_t>& probe_counts) const {
        const auto entry = type_at(i);
        const BigInt w = type_weight_of(entry);
        if (w != probe_w) return w > probe_w;
        return std::lexicographical_compare(probe_counts.begin(), probe_counts.end(),
                                            entry.begin(), entry.end());
    }

    std::uint64_t n_ = 0;
    std::uint32_t ns_ = 0;
    std::size_t type_count_ = 0;
    std::vector<std::uint32_t> counts_;  // type_count * ns, in shaping order
    PackedBigIntVector cumulative_;      // type_count + 1 prefix sums
    BigInt total_;
};

namespace detail {

template <class WKey>
void build_index_payload(std::uint64_t n, std::uint32_t ns, std::size_t type_count,
                         std::vector<std::uint32_t>& counts, PackedBigIntVector& cumulative) {
    struct Rec {
        WKey w;
        std::uint32_t idx;
    };
    std::vector<Rec> recs;
    recs.reserve(type_count);
    counts.reserve(type_count * ns);

    const BigInt total = ipow(ns, n);
    const unsigned limbs = static_cast<unsigned>(boost::multiprecision::msb(total)) / 64 + 1;
    PackedBigIntVector sizes(type_count, limbs);

    std::uint32_t next = 0;
    enumerate_types_weighted<WKey>(n, ns, [&](std::span<const std::uint32_t> c, const WKey& w, const BigInt& m) {
        counts.insert(counts.end(), c.begin(), c.end());
        sizes.set(next, m);
        recs.push_back({w, next});
        ++next;
    });
    if (next != type_count) throw DomainError("internal error: composition count mismatch");

    std::sort(recs.begin(), recs.end(), [&](const Rec& x, const Rec& y) {
        if (x.w != y.w) return x.w > y.w;
        const std::uint32_t* a = counts.data() + static_cast<std::size_t>(x.idx) * ns;
        const std::uint32_t* b = counts.data() + static_cast<std::size_t>(y.idx) * ns;
        return std::lexicographical_compare(b, b + ns, a, a + ns);
    });

    std::vector<std::uint32_t> sorted_counts(type_count * ns);
    for (std::size_t i = 0; i < type_count; ++i) {
        const std::uint32_t* src = counts.data() + static_cast<std::size_t>(recs[i].idx) * ns;
        std::copy(src, src + ns, sorted_counts.data() + i * ns);
    }
    counts = std::move(sorted_counts);

    cumulative = PackedBigIntVector(type_count + 1, limbs);
    BigInt acc = 0;
    cumulative.set(0, acc);
    for (std::size_t i = 0; i < type_count; ++i) {
        acc += sizes.get(recs[i].idx);
        cumulative.set(i + 1, acc);
    }
    if (acc != total) throw DomainError("internal error: class sizes do not sum to ns^n");
}

} // namespace detail

// Builds the full shaping-order index for length-n strings over ns symbols.
// Refuses with BudgetExceeded when the type count C(n+ns-1, ns-1) is above
// `budget` — the signal that exact enumeration is infeasible at this scale.
inline ShapedIndex build_shaped_index(std::uint64_t n, std::uint32_t ns,
                                      std::uint64_t budget = kDefaultTypeBudget) {
    if (n < 1 || ns < 1) throw DomainError("index needs n >= 1 and ns >= 1");
    if (n > 0xFFFFFFFFull) throw DomainError("index length does not fit 32-bit counts");
    const BigInt tc = binomial(n + ns - 1, ns - 1);
    if (tc > budget)
        throw BudgetExceeded("type count C(" + std::to_string(n + ns - 1) + ", " +
                             std::to_string(ns - 1) + ") = " + tc.str() +
                             " exceeds budget " + std::to_string(budget));
    const std::size_t type_count = static_cast<std::size_t>(tc.convert_to<std::uint64_t>());

    ShapedIndex idx;
    idx.n_ = n;
    idx.ns_ = ns;
    idx.type_count_ = type_count;
    idx.total_ = ipow(ns, n);
    // W <= n^n fits in 128 bits up to n = 26; the large-type-count regimes
    // the budget admits all live there, so they get the packed fast path.
    if (n <= 26)
        detail::build_index_payload<unsigned __int128>(n, ns, type_count, idx.counts_, idx.cumulative_);
    else
        detail::build_index_payload<BigInt>(n, ns, type_count, idx.counts_, idx.cumulative_);
    return idx;
}

} // namespace setshaping
