#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace setshaping {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(std::uint64_t base, std::uint64_t exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1) r *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return r;
}

// C(a, b) by the multiplicative formula; every intermediate division is exact.
inline BigInt binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    if (b > a - b) b = a - b;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

// Writes v as exactly `limbs` little-endian 64-bit limbs. v must fit.
inline void to_limbs(const BigInt& v, std::uint64_t* out, unsigned limbs) {
    std::fill(out, out + limbs, 0);
    if (v != 0) boost::multiprecision::export_bits(v, out, 64, false);
}

inline BigInt from_limbs(const std::uint64_t* in, unsigned limbs) {
    BigInt v;
    boost::multiprecision::import_bits(v, in, in + limbs, 64, false);
    return v;
}

// Fixed-stride array of non-negative big integers stored as raw limbs.
// Backs the multi-million-entry cumulative tables, where one heap block
// per value would roughly double the footprint and scatter the cache.
class PackedBigIntVector {
public:
    PackedBigIntVector() = default;
    PackedBigIntVector(std::size_t size, unsigned limbs)
        : size_(size), limbs_(limbs), data_(size * static_cast<std::size_t>(limbs), 0) {}

    std::size_t size() const { return size_; }
    unsigned limbs() const { return limbs_; }

    void set(std::size_t i, const BigInt& v) { to_limbs(v, data_.data() + i * limbs_, limbs_); }

    BigInt get(std::size_t i) const { return from_limbs(data_.data() + i * limbs_, limbs_); }

    // Three-way compare of entry i against a limb-expanded probe.
    int compare(std::size_t i, std::span<const std::uint64_t> probe) const {
        const std::uint64_t* e = data_.data() + i * limbs_;
        unsigned width = std::max<unsigned>(limbs_, static_cast<unsigned>(probe.size()));
        for (unsigned j = width; j-- > 0;) {
            std::uint64_t a = j < limbs_ ? e[j] : 0;
            std::uint64_t b = j < probe.size() ? probe[j] : 0;
            if (a != b) return a < b ? -1 : 1;
        }
        return 0;
    }

    // First index whose value exceeds v; entries must be non-decreasing.
    std::size_t upper_bound(const BigInt& v) const {
        if (v != 0 && boost::multiprecision::msb(v) >= 64u * limbs_) return size_;
        std::vector<std::uint64_t> probe(limbs_, 0);
        to_limbs(v, probe.data(), limbs_);
        std::size_t lo = 0, hi = size_;
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (compare(mid, probe) <= 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    std::span<const std::uint64_t> raw() const { return data_; }
    std::span<std::uint64_t> raw() { return data_; }

    bool operator==(const PackedBigIntVector&) const = default;

private:
    std::size_t size_ = 0;
    unsigned limbs_ = 0;
    std::vector<std::uint64_t> data_;
};

} // namespace setshaping
