#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <vector>

#include "setshaping/bigint.hpp"
#include "setshaping/errors.hpp"
#include "setshaping/experiment.hpp"
#include "setshaping/huffman.hpp"
#include "setshaping/sequence.hpp"
#include "setshaping/shaping.hpp"

// Brute-force ground truth at tiny scale. Everything here works on raw
// enumerated sequences, sorted directly with its own 128-bit weights —
// deliberately a different code path from the type index, so agreement
// between the two is meaningful evidence.

namespace setshaping {

struct CorrespondenceTable {
    Symbol ns = 0;
    std::uint64_t input_length = 0; // N
    std::uint64_t order = 0;        // K
    std::vector<Sequence> inputs;   // X^N in lexicographic order
    std::vector<Sequence> outputs;  // first ns^N sequences of length N+K in shaping order
};

struct VerifyReport {
    std::uint64_t rows = 0;
    std::uint64_t shape_mismatches = 0;
    std::uint64_t unshape_mismatches = 0;
    std::uint64_t nonimage_total = 0;
    std::uint64_t nonimage_accepted = 0; // non-image inputs unshape failed to reject

    bool ok() const {
        return shape_mismatches == 0 && unshape_mismatches == 0 && nonimage_accepted == 0;
    }
};

struct ExhaustiveStats {
    Symbol ns = 0;
    std::uint64_t input_length = 0;
    std::uint64_t order = 0;
    std::uint64_t inputs = 0;
    double mean_lc_x = 0;
    double mean_lc_y = 0;
    double delta = 0; // mean_lc_y - mean_lc_x
    std::uint64_t successes = 0;
    double success_fraction = 0;
    double success_pct = 0;
};

namespace oracle_detail {

inline void check_params(Symbol ns, std::uint64_t n_in, std::uint64_t k) {
    if (ns < 2) throw DomainError("oracle needs an alphabet of at least 2 symbols");
    if (n_in < 1 || k < 1) throw DomainError("oracle needs N >= 1 and K >= 1");
}

// All ns^m rows of length m, flattened, in lexicographic order.
inline std::vector<Symbol> enumerate_rows(Symbol ns, std::uint64_t m, std::uint64_t row_count) {
    std::vector<Symbol> rows(row_count * m, 1);
    for (std::uint64_t r = 1; r < row_count; ++r) {
        Symbol* prev = rows.data() + (r - 1) * m;
        Symbol* cur = rows.data() + r * m;
        std::copy(prev, prev + m, cur);
        for (std::uint64_t p = m; p-- > 0;) {
            if (cur[p] < ns) {
                ++cur[p];
                break;
            }
            cur[p] = 1;
        }
    }
    return rows;
}

inline unsigned __int128 row_weight(const Symbol* row, std::uint64_t m,
                                    std::vector<std::uint32_t>& scratch) {
    for (std::uint64_t i = 0; i < m; ++i) ++scratch[row[i] - 1];
    unsigned __int128 w = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint32_t c = scratch[row[i] - 1];
        if (c > 1) {
            for (std::uint32_t j = 0; j < c; ++j) w *= c;
        }
        scratch[row[i] - 1] = 0; // visit each distinct symbol once, and reset
    }
    return w;
}

// Sorted row order: W descending, histogram descending-lexicographic,
// then the sequence itself ascending. Comparing the per-row sorted copies
// ascending is exactly the histogram descending-lex comparison.
struct SortedSpace {
    Symbol ns = 0;
    std::uint64_t m = 0;
    std::uint64_t row_count = 0;
    std::vector<Symbol> rows;        // lexicographic enumeration
    std::vector<std::uint32_t> perm; // shaping order: rows[perm[i]]

    const Symbol* row(std::uint64_t i) const { return rows.data() + perm[i] * m; }

    Sequence sequence(std::uint64_t i) const {
        return Sequence(std::vector<Symbol>(row(i), row(i) + m), ns);
    }
};

inline SortedSpace sort_space(Symbol ns, std::uint64_t m, std::uint64_t row_count) {
    SortedSpace space;
    space.ns = ns;
    space.m = m;
    space.row_count = row_count;
    space.rows = enumerate_rows(ns, m, row_count);

    std::vector<unsigned __int128> weights(row_count);
    std::vector<std::uint32_t> scratch(ns, 0);
    for (std::uint64_t r = 0; r < row_count; ++r)
        weights[r] = row_weight(space.rows.data() + r * m, m, scratch);

    std::vector<Symbol> sorted_rows = space.rows;
    for (std::uint64_t r = 0; r < row_count; ++r) {
        Symbol* begin = sorted_rows.data() + r * m;
        std::sort(begin, begin + m);
    }

    space.perm.resize(row_count);
    std::iota(space.perm.begin(), space.perm.end(), 0);
    std::sort(space.perm.begin(), space.perm.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (weights[a] != weights[b]) return weights[a] > weights[b];
        const Symbol* sa = sorted_rows.data() + std::uint64_t{a} * m;
        const Symbol* sb = sorted_rows.data() + std::uint64_t{b} * m;
        for (std::uint64_t i = 0; i < m; ++i)
            if (sa[i] != sb[i]) return sa[i] < sb[i];
        return a < b; // rows are already lexicographic by construction
    });
    return space;
}

} // namespace oracle_detail

// Feasibility guards for the materialized table.
inline constexpr std::uint64_t kOracleMaxInputs = 1'000'000;
inline constexpr std::uint64_t kOracleMaxOutputs = 10'000'000;

// Builds the explicit table pairing X^N (lexicographic) with the first
// ns^N length-(N+K) sequences in the shaping order.
inline CorrespondenceTable build_table(Symbol ns, std::uint64_t n_in, std::uint64_t k) {
    oracle_detail::check_params(ns, n_in, k);
    if (ipow(ns, n_in) > kOracleMaxInputs || ipow(ns, n_in + k) > kOracleMaxOutputs)
        throw DomainError("oracle scale guard: table needs ns^N <= 1e6 and ns^(N+K) <= 1e7");
    const auto x_count = ipow(ns, n_in).convert_to<std::uint64_t>();
    const auto y_count = ipow(ns, n_in + k).convert_to<std::uint64_t>();

    CorrespondenceTable table;
    table.ns = ns;
    table.input_length = n_in;
    table.order = k;

    const auto x_rows = oracle_detail::enumerate_rows(ns, n_in, x_count);
    table.inputs.reserve(x_count);
    for (std::uint64_t r = 0; r < x_count; ++r)
        table.inputs.emplace_back(
            std::vector<Symbol>(x_rows.begin() + r * n_in, x_rows.begin() + (r + 1) * n_in), ns);

    const auto space = oracle_detail::sort_space(ns, n_in + k, y_count);
    table.outputs.reserve(x_count);
    for (std::uint64_t r = 0; r < x_count; ++r) table.outputs.push_back(space.sequence(r));
    return table;
}

// Checks the table-free transform cell by cell against the brute-force
// table, and that every sequence outside the image is rejected with
// NotInShapedSet. Mismatches are counted, not thrown.
inline VerifyReport verify_bijection(Symbol ns, std::uint64_t n_in, std::uint64_t k,
                                     std::uint64_t budget = kDefaultTypeBudget) {
    oracle_detail::check_params(ns, n_in, k);
    if (ipow(ns, n_in) > kOracleMaxInputs || ipow(ns, n_in + k) > kOracleMaxOutputs)
        throw DomainError("oracle scale guard: table needs ns^N <= 1e6 and ns^(N+K) <= 1e7");
    const auto x_count = ipow(ns, n_in).convert_to<std::uint64_t>();
    const auto y_count = ipow(ns, n_in + k).convert_to<std::uint64_t>();

    const auto x_rows = oracle_detail::enumerate_rows(ns, n_in, x_count);
    const auto space = oracle_detail::sort_space(ns, n_in + k, y_count);
    const Shaper shaper(ShapingParams{ns, n_in, k, budget});

    VerifyReport report;
    report.rows = x_count;
    report.nonimage_total = y_count - x_count;
    for (std::uint64_t r = 0; r < x_count; ++r) {
        const Sequence x(std::vector<Symbol>(x_rows.begin() + r * n_in,
                                             x_rows.begin() + (r + 1) * n_in), ns);
        const Sequence y = space.sequence(r);
        if (shaper.shape(x) != y) ++report.shape_mismatches;
        try {
            if (shaper.unshape(y) != x) ++report.unshape_mismatches;
        } catch (const Error&) {
            ++report.unshape_mismatches;
        }
    }
    for (std::uint64_t r = x_count; r < y_count; ++r) {
        try {
            (void)shaper.unshape(space.sequence(r));
            ++report.nonimage_accepted;
        } catch (const NotInShapedSet&) {
            // expected
        }
    }
    return report;
}

// Exact version of the experiment: every x in X^N visited once, paired
// with its transform by walking the shaped order in lockstep, so nothing
// is sampled and nothing is materialized per input.
inline ExhaustiveStats exhaustive_stats(Symbol ns, std::uint64_t n_in, std::uint64_t k,
                                        std::uint64_t budget = kDefaultTypeBudget) {
    oracle_detail::check_params(ns, n_in, k);
    if (ipow(ns, n_in) > kOracleMaxOutputs)
        throw DomainError("oracle scale guard: exhaustive statistics need ns^N <= 1e7");
    if (ipow(ns, n_in + k) > (BigInt(1) << 62))
        throw DomainError("oracle scale guard: class sizes must fit 64 bits");
    const auto x_count = ipow(ns, n_in).convert_to<std::uint64_t>();

    const ShapedIndex index = build_shaped_index(n_in + k, ns, budget);

    // walker over the shaped order, one whole type class at a time
    std::size_t type_idx = 0;
    std::uint64_t in_class_left = 0;
    double tlc_cur = 0;
    std::uint64_t codelen_cur = 0;
    const auto refresh = [&] {
        const Histogram h = index.histogram_at(type_idx);
        in_class_left = index.class_size_at(type_idx).convert_to<std::uint64_t>();
        tlc_cur = type_coding_limit(h);
        codelen_cur = encoded_length(h);
    };
    refresh();

    // odometer over X^N with incrementally maintained counts
    std::vector<Symbol> x(n_in, 1);
    std::vector<std::uint32_t> counts(ns, 0);
    counts[0] = static_cast<std::uint32_t>(n_in);
    const double n_in_d = static_cast<double>(n_in);

    detail::KahanSum lc_sum, tlc_sum;
    std::uint64_t successes = 0;
    for (std::uint64_t r = 0;; ++r) {
        double lc_x = 0;
        for (std::uint32_t c : counts)
            if (c > 0) lc_x -= static_cast<double>(c) * std::log2(static_cast<double>(c) / n_in_d);

        lc_sum.add(lc_x);
        tlc_sum.add(tlc_cur);
        if (static_cast<double>(codelen_cur) < lc_x) ++successes;

        if (r + 1 == x_count) break;

        // advance x and its counts
        for (std::uint64_t p = n_in; p-- > 0;) {
            if (x[p] < ns) {
                --counts[x[p] - 1];
                ++x[p];
                ++counts[x[p] - 1];
                break;
            }
            --counts[x[p] - 1];
            x[p] = 1;
            ++counts[0];
        }
        // advance the shaped-order walker
        if (--in_class_left == 0) {
            ++type_idx;
            refresh();
        }
    }

    ExhaustiveStats stats;
    stats.ns = ns;
    stats.input_length = n_in;
    stats.order = k;
    stats.inputs = x_count;
    stats.mean_lc_x = lc_sum.value() / static_cast<double>(x_count);
    stats.mean_lc_y = tlc_sum.value() / static_cast<double>(x_count);
    stats.delta = stats.mean_lc_y - stats.mean_lc_x;
    stats.successes = successes;
    stats.success_fraction = static_cast<double>(successes) / static_cast<double>(x_count);
    stats.success_pct = 100.0 * stats.success_fraction;
    return stats;
}

// x,y per row, symbols space-separated within each field.
inline void write_table_csv(std::ostream& out, const CorrespondenceTable& table) {
    out << "x,y\n";
    for (std::size_t i = 0; i < table.inputs.size(); ++i)
        out << sequence_to_string(table.inputs[i]) << ',' << sequence_to_string(table.outputs[i])
            << '\n';
}

} // namespace setshaping
