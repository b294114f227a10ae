// Command-line surface for the shaping transform, the Huffman codec, the
// Monte-Carlo experiment and the brute-force verification tools.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "setshaping/setshaping.hpp"

namespace ss = setshaping;

namespace {

std::vector<ss::Symbol> parse_symbols(const std::string& text) {
    std::vector<ss::Symbol> symbols;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(token, &pos);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--seq", "'" + token + "' is not an integer symbol");
        }
        if (pos != token.size() || v == 0 || v > 0xFFFFFFFFul)
            throw CLI::ValidationError("--seq", "'" + token + "' is not a valid 1-based symbol");
        symbols.push_back(static_cast<ss::Symbol>(v));
    }
    return symbols;
}

ss::Sequence read_sequence(ss::Symbol ns, const std::string& seq, const std::string& seq_file) {
    if (seq.empty() == seq_file.empty())
        throw CLI::ValidationError("--seq", "provide exactly one of --seq and --seq-file");
    std::string text = seq;
    if (!seq_file.empty()) {
        std::ifstream f(seq_file);
        if (!f) throw CLI::ValidationError("--seq-file", "cannot open " + seq_file);
        std::ostringstream buf;
        buf << f.rdbuf();
        text = buf.str();
    }
    return ss::Sequence(parse_symbols(text), ns);
}

std::uint64_t budget_from_env() {
    const char* env = std::getenv("SST_BUDGET");
    if (!env) return ss::kDefaultTypeBudget;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        throw CLI::ValidationError("SST_BUDGET", "must be a positive integer");
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"set shaping transform, Huffman codec and experiment runner"};
    app.require_subcommand(1);

    std::uint32_t ns = 0;
    std::uint64_t len = 0, k = 1, history = 1000, seed = 1;
    std::string seq, seq_file, out_path, trials_csv;

    auto add_seq_flags = [&](CLI::App* cmd) {
        cmd->add_option("--seq", seq, "sequence as space-separated 1-based integers");
        cmd->add_option("--seq-file", seq_file, "file with the same token format");
    };

    auto* cmd_lc = app.add_subcommand("lc", "coding limit of a sequence, in bits");
    cmd_lc->add_option("--ns", ns, "alphabet size")->required();
    add_seq_flags(cmd_lc);

    auto* cmd_shape = app.add_subcommand("shape", "apply the shaping transform");
    cmd_shape->add_option("--ns", ns, "alphabet size")->required();
    cmd_shape->add_option("--k", k, "shaping order (default 1)");
    add_seq_flags(cmd_shape);

    auto* cmd_unshape = app.add_subcommand("unshape", "invert the shaping transform");
    cmd_unshape->add_option("--ns", ns, "alphabet size")->required();
    cmd_unshape->add_option("--k", k, "shaping order (default 1)");
    add_seq_flags(cmd_unshape);

    auto* cmd_huffman = app.add_subcommand("huffman", "codebook and self-coded size of a sequence");
    cmd_huffman->add_option("--ns", ns, "alphabet size")->required();
    add_seq_flags(cmd_huffman);

    auto* cmd_exp = app.add_subcommand("experiment", "Monte-Carlo transform-vs-coding-limit run");
    cmd_exp->add_option("--ns", ns, "alphabet size")->required();
    cmd_exp->add_option("--len", len, "sequence length N (default 2*ns)");
    cmd_exp->add_option("--k", k, "shaping order (default 1)");
    cmd_exp->add_option("--history", history, "number of trials (default 1000)");
    cmd_exp->add_option("--seed", seed, "RNG seed (default 1)");
    cmd_exp->add_option("--out", out_path, "write the JSON report to this file");
    cmd_exp->add_option("--trials-csv", trials_csv, "write per-trial records to this CSV file");

    auto* cmd_verify = app.add_subcommand("verify", "check the transform against the brute-force table");
    cmd_verify->add_option("--ns", ns, "alphabet size")->required();
    cmd_verify->add_option("--len", len, "input length N")->required();
    cmd_verify->add_option("--k", k, "shaping order (default 1)");

    auto* cmd_stats = app.add_subcommand("stats", "exact statistics over every input of length N");
    cmd_stats->add_option("--ns", ns, "alphabet size")->required();
    cmd_stats->add_option("--len", len, "input length N")->required();
    cmd_stats->add_option("--k", k, "shaping order (default 1)");

    try {
        app.parse(argc, argv);
        const std::uint64_t budget = budget_from_env();

        if (cmd_lc->parsed()) {
            const ss::Sequence s = read_sequence(ns, seq, seq_file);
            std::printf("%.6f\n", ss::coding_limit(s));
        } else if (cmd_shape->parsed()) {
            const ss::Sequence x = read_sequence(ns, seq, seq_file);
            const ss::ShapingParams params{ns, x.size(), k, budget};
            std::cout << ss::sequence_to_string(ss::shape(x, params)) << '\n';
        } else if (cmd_unshape->parsed()) {
            const ss::Sequence y = read_sequence(ns, seq, seq_file);
            if (y.size() <= k)
                throw ss::DomainError("transformed sequence must be longer than the shaping order");
            const ss::ShapingParams params{ns, y.size() - k, k, budget};
            std::cout << ss::sequence_to_string(ss::unshape(y, params)) << '\n';
        } else if (cmd_huffman->parsed()) {
            const ss::Sequence s = read_sequence(ns, seq, seq_file);
            const ss::CodeBook book = ss::build_code(ss::empirical_histogram(s));
            for (ss::Symbol sym = 1; sym <= book.ns; ++sym)
                if (book.contains(sym))
                    std::cout << sym << ' ' << book.words[sym - 1].to_string() << '\n';
            std::cout << "total_bits " << ss::self_encoded_length(s) << '\n';
        } else if (cmd_exp->parsed()) {
            ss::ExperimentConfig cfg;
            cfg.ns = ns;
            cfg.length = len > 0 ? len : 2 * std::uint64_t{ns};
            cfg.order = k;
            cfg.history = history;
            cfg.seed = seed;
            cfg.budget = budget;
            std::vector<ss::TrialRecord> trials;
            const ss::ExperimentReport rep =
                ss::run_experiment(cfg, trials_csv.empty() ? nullptr : &trials);
            const std::string json = ss::report_json(rep).dump();
            std::cout << json << '\n';
            if (!out_path.empty()) {
                std::ofstream f(out_path, std::ios::trunc);
                if (!f) throw ss::DomainError("cannot open --out file: " + out_path);
                f << json << '\n';
            }
            if (!trials_csv.empty()) {
                std::ofstream f(trials_csv, std::ios::trunc);
                if (!f) throw ss::DomainError("cannot open --trials-csv file: " + trials_csv);
                ss::write_trials_csv(f, trials);
            }
        } else if (cmd_verify->parsed()) {
            const ss::VerifyReport rep = ss::verify_bijection(ns, len, k, budget);
            std::cout << "rows " << rep.rows << '\n'
                      << "shape_mismatches " << rep.shape_mismatches << '\n'
                      << "unshape_mismatches " << rep.unshape_mismatches << '\n'
                      << "nonimage_total " << rep.nonimage_total << '\n'
                      << "nonimage_accepted " << rep.nonimage_accepted << '\n'
                      << (rep.ok() ? "PASS" : "FAIL") << '\n';
            return rep.ok() ? 0 : 1;
        } else if (cmd_stats->parsed()) {
            const ss::ExhaustiveStats st = ss::exhaustive_stats(ns, len, k, budget);
            nlohmann::ordered_json j{
                {"ns", st.ns},
                {"N", st.input_length},
                {"K", st.order},
                {"inputs", st.inputs},
                {"mean_lc_x", st.mean_lc_x},
                {"mean_lc_y", st.mean_lc_y},
                {"delta", st.delta},
                {"successes", st.successes},
                {"success_fraction", st.success_fraction},
                {"success_pct", st.success_pct},
            };
            std::cout << j.dump() << '\n';
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ss::Error& e) {
        std::cerr << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
