#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "setshaping/errors.hpp"
#include "setshaping/huffman.hpp"
#include "setshaping/rng.hpp"
#include "setshaping/sequence.hpp"
#include "setshaping/shaping.hpp"

namespace setshaping {

struct ExperimentConfig {
    Symbol ns = 0;
    std::uint64_t length = 0; // N
    std::uint64_t order = 1;  // K
    std::uint64_t history = 1000;
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultTypeBudget;
};

struct TrialRecord {
    double lc = 0;           // coding limit of the generated sequence
    double tlc = 0;          // coding limit of the transformed sequence
    std::uint64_t code_len = 0; // Huffman bits of the transformed sequence
    bool success = false;    // code_len < lc, strictly

    bool operator==(const TrialRecord&) const = default;
};

struct ExperimentReport {
    Symbol ns = 0;
    std::uint64_t length = 0;
    std::uint64_t order = 1;
    std::uint64_t history = 0;
    std::uint64_t seed = 0;
    double medlc = 0;
    double medtlc = 0;
    double medcodel = 0;
    std::uint64_t cs = 0;
    double pcs = 0;

    bool operator==(const ExperimentReport&) const = default;
};

inline Sequence random_sequence(Symbol ns, std::uint64_t length, SplitMix64& rng) {
    std::vector<Symbol> symbols(length);
    for (auto& s : symbols) s = rng.uniform_symbol(ns);
    return Sequence(std::move(symbols), ns);
}

// One measurement: coding limit of x, transform, round-trip check, coding
// limit and self-coded Huffman length of the transform. A round-trip
// mismatch is an implementation bug, not an input problem, so it escapes
// as logic_error.
inline TrialRecord evaluate_sequence(const Sequence& x, const Shaper& shaper) {
    TrialRecord rec;
    rec.lc = coding_limit(x);
    const Sequence y = shaper.shape(x);
    if (shaper.unshape(y) != x)
        throw std::logic_error("round-trip failure: inverse transform did not recover the input");
    rec.tlc = coding_limit(y);
    rec.code_len = self_encoded_length(y);
    rec.success = static_cast<double>(rec.code_len) < rec.lc;
    return rec;
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, const Shaper& shaper,
                             std::uint64_t trial_index) {
    SplitMix64 rng = trial_rng(cfg.seed, trial_index);
    return evaluate_sequence(random_sequence(cfg.ns, cfg.length, rng), shaper);
}

namespace detail {

class KahanSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0, comp_ = 0;
};

} // namespace detail

// Runs `history` independent trials against a prebuilt transform and
// aggregates the means and the success count. Trials use per-index
// substreams, and sums are compensated and taken in trial order, so the
// report is a pure function of the config.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg, const Shaper& shaper,
                                       std::vector<TrialRecord>* trials_out = nullptr) {
    if (cfg.history < 1) throw DomainError("experiment needs history >= 1");
    if (shaper.params().ns != cfg.ns || shaper.params().input_length != cfg.length ||
        shaper.params().order != cfg.order)
        throw DomainError("shaper does not match experiment config");

    detail::KahanSum lc_sum, tlc_sum, codel_sum;
    std::uint64_t cs = 0;
    for (std::uint64_t i = 0; i < cfg.history; ++i) {
        const TrialRecord rec = run_trial(cfg, shaper, i);
        lc_sum.add(rec.lc);
        tlc_sum.add(rec.tlc);
        codel_sum.add(static_cast<double>(rec.code_len));
        if (rec.success) ++cs;
        if (trials_out) trials_out->push_back(rec);
    }

    ExperimentReport rep;
    rep.ns = cfg.ns;
    rep.length = cfg.length;
    rep.order = cfg.order;
    rep.history = cfg.history;
    rep.seed = cfg.seed;
    rep.medlc = lc_sum.value() / static_cast<double>(cfg.history);
    rep.medtlc = tlc_sum.value() / static_cast<double>(cfg.history);
    rep.medcodel = codel_sum.value() / static_cast<double>(cfg.history);
    rep.cs = cs;
    rep.pcs = 100.0 * static_cast<double>(cs) / static_cast<double>(cfg.history);
    return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                       std::vector<TrialRecord>* trials_out = nullptr) {
    const Shaper shaper(ShapingParams{cfg.ns, cfg.length, cfg.order, cfg.budget});
    return run_experiment(cfg, shaper, trials_out);
}

inline nlohmann::ordered_json report_json(const ExperimentReport& r) {
    return nlohmann::ordered_json{
        {"ns", r.ns},         {"N", r.length},       {"K", r.order},
        {"history", r.history}, {"seed", r.seed},
        {"medlc", r.medlc},   {"medtlc", r.medtlc},  {"medcodel", r.medcodel},
        {"cs", r.cs},         {"pcs", r.pcs},
    };
}

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string report_csv_header() {
    return "ns,N,K,history,seed,medlc,medtlc,medcodel,cs,pcs";
}

inline std::string report_csv_row(const ExperimentReport& r) {
    std::string row;
    row += std::to_string(r.ns) + ',' + std::to_string(r.length) + ',' + std::to_string(r.order) +
           ',' + std::to_string(r.history) + ',' + std::to_string(r.seed) + ',';
    row += format_double(r.medlc) + ',' + format_double(r.medtlc) + ',' +
           format_double(r.medcodel) + ',';
    row += std::to_string(r.cs) + ',' + format_double(r.pcs);
    return row;
}

inline void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials) {
    out << "trial,lc,tlc,code_len,success\n";
    for (std::size_t i = 0; i < trials.size(); ++i) {
        out << i << ',' << format_double(trials[i].lc) << ',' << format_double(trials[i].tlc)
            << ',' << trials[i].code_len << ',' << (trials[i].success ? 1 : 0) << '\n';
    }
}

} // namespace setshaping
