// qnt: experiment runner for the quantum counting pipelines.
//
// Subcommands: witness, count, primality, pnt, hl, sweep. Reports are JSON
// (default) or CSV; identical parameters and seed produce byte-identical
// output. Exit codes: 0 success, 2 invalid configuration, 3 simulation
// dimension cap exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnt/errors.hpp"
#include "qnt/report.hpp"

namespace {

using qnt::report::json;

constexpr std::size_t kMaxSweepRows = 4096;

struct CommonFlags {
    std::string format = "json";
    std::string out;
    double dump_threshold = -1.0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", flags.out, "Write the report to a file instead of stdout");
}

void emit(const std::string& text, const CommonFlags& flags) {
    if (flags.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) {
        throw qnt::ConfigError("cannot open output file '" + flags.out + "'");
    }
    file << text;
}

void emit_report(const json& report, const CommonFlags& flags) {
    if (flags.format == "csv") {
        emit(qnt::report::to_csv(report), flags);
    } else {
        emit(report.dump(2), flags);
    }
}

// Comma-separated integer list; an empty string denotes an empty range.
std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> values;
    if (text.empty()) {
        return values;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            throw qnt::ConfigError("empty element in range '" + text + "'");
        }
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            throw qnt::ConfigError("invalid range element '" + item + "'");
        }
        if (pos != item.size()) {
            throw qnt::ConfigError("invalid range element '" + item + "'");
        }
        values.push_back(v);
    }
    return values;
}

struct SweepOptions {
    std::string pipeline;
    std::string k = "15";
    std::string n = "16";
    std::string two_n = "16";
    std::string p = "8";
    std::string q = "16";
    std::string r = "1";
    std::uint64_t reps = 1;
    std::uint64_t seed = 0;
    double delta = 0.0;
    double nu = 0.5;
    double mu = 2.0;
};

json run_row(const SweepOptions& opt, std::uint64_t k, std::uint64_t n,
             std::uint64_t two_n, std::uint64_t p, std::uint64_t q, std::uint64_t r,
             std::uint64_t row_seed, bool validate_only) {
    if (opt.pipeline == "witness") {
        if (validate_only) {
            if (k < 2) {
                throw qnt::ConfigError("witness: k must be >= 2");
            }
            return {};
        }
        return qnt::report::witness_report(k);
    }
    if (opt.pipeline == "count") {
        const qnt::report::CountRunConfig config{k, p, r, opt.reps, row_seed, -1.0};
        if (validate_only) {
            config.validate();
            return {};
        }
        return qnt::report::count_report(config);
    }
    if (opt.pipeline == "primality") {
        const qnt::primality::PrimalityConfig config{k, p, r, row_seed};
        if (validate_only) {
            config.validate();
            return {};
        }
        return qnt::report::primality_report(config);
    }
    if (opt.pipeline == "pnt") {
        const qnt::pnt::PntConfig config{n, p, q, opt.reps, row_seed, opt.delta};
        if (validate_only) {
            config.validate();
            return {};
        }
        return qnt::report::pnt_report(qnt::pnt::run_prime_count(config));
    }
    if (opt.pipeline == "hl") {
        const qnt::hl::HlConfig config{two_n, p,        q,      opt.reps,
                                       row_seed, opt.nu, opt.mu};
        if (validate_only) {
            config.validate();
            return {};
        }
        return qnt::report::hl_report(qnt::hl::run_pair_count(config));
    }
    throw qnt::ConfigError("unknown sweep pipeline '" + opt.pipeline + "'");
}

void run_sweep(const SweepOptions& opt, const CommonFlags& flags) {
    struct Dim {
        const char* name;
        std::vector<std::uint64_t> values;
        bool used;
    };
    const bool uses_k = opt.pipeline == "witness" || opt.pipeline == "count" ||
                        opt.pipeline == "primality";
    const bool uses_pq = opt.pipeline != "witness";
    std::vector<Dim> dims = {
        {"k", parse_list(opt.k), uses_k},
        {"n", parse_list(opt.n), opt.pipeline == "pnt"},
        {"two_n", parse_list(opt.two_n), opt.pipeline == "hl"},
        {"p", parse_list(opt.p), uses_pq},
        {"q", parse_list(opt.q), opt.pipeline == "pnt" || opt.pipeline == "hl"},
        {"r", parse_list(opt.r),
         opt.pipeline == "count" || opt.pipeline == "primality"},
    };
    std::size_t rows = 1;
    for (Dim& d : dims) {
        if (!d.used) {
            d.values = {0};  // placeholder, ignored by run_row
            continue;
        }
        rows *= d.values.size();
    }
    if (rows > kMaxSweepRows) {
        throw qnt::ConfigError("sweep would produce more than " +
                               std::to_string(kMaxSweepRows) + " rows");
    }

    // deterministic odometer order, last dimension fastest; every row is
    // validated before any row runs, so invalid ranges produce no output
    std::vector<json> reports;
    const auto& kv = dims[0].values;
    const auto& nv = dims[1].values;
    const auto& tv = dims[2].values;
    const auto& pv = dims[3].values;
    const auto& qv = dims[4].values;
    const auto& rv = dims[5].values;
    for (const bool validate_only : {true, false}) {
        std::uint64_t row_index = 0;
        for (std::uint64_t k : kv) {
            for (std::uint64_t n : nv) {
                for (std::uint64_t two_n : tv) {
                    for (std::uint64_t p : pv) {
                        for (std::uint64_t q : qv) {
                            for (std::uint64_t r : rv) {
                                json row = run_row(opt, k, n, two_n, p, q, r,
                                                   opt.seed + row_index,
                                                   validate_only);
                                if (!validate_only) {
                                    reports.push_back(std::move(row));
                                }
                                ++row_index;
                            }
                        }
                    }
                }
            }
        }
    }

    if (flags.format == "json") {
        json array = json::array();
        for (const json& r : reports) {
            array.push_back(r);
        }
        emit(array.dump(2), flags);
        return;
    }
    if (reports.empty()) {
        emit(qnt::report::csv_header_for(opt.pipeline) + "\n", flags);
        return;
    }
    emit(qnt::report::to_csv_table(reports), flags);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulation test bench for quantum counting pipelines "
                 "over number-theoretic oracles"};
    app.require_subcommand(1);

    CommonFlags flags;

    // witness
    auto* witness_cmd =
        app.add_subcommand("witness", "Brute-force strong-witness count of k");
    std::uint64_t w_k = 9;
    witness_cmd->add_option("--k", w_k, "Number under test (>= 2)")->required();
    CommonFlags w_flags;
    add_common(witness_cmd, w_flags);

    // count
    auto* count_cmd = app.add_subcommand(
        "count", "Counting transform over the witness oracle of k");
    qnt::report::CountRunConfig c_config;
    count_cmd->add_option("--k", c_config.k, "Witness domain (>= 2)")->required();
    count_cmd->add_option("--p", c_config.p, "Ancilla dimension, power of two");
    count_cmd->add_option("--r", c_config.r, "Number of counting ancillas");
    count_cmd->add_option("--reps", c_config.repetitions, "Sampled repetitions");
    count_cmd->add_option("--seed", c_config.seed, "Base seed");
    count_cmd->add_option("--dump-state-threshold", c_config.dump_threshold,
                          "Include amplitudes with |amp|^2 above this value");
    CommonFlags c_flags;
    add_common(count_cmd, c_flags);

    // primality
    auto* prim_cmd = app.add_subcommand("primality", "Quantum primality test of k");
    qnt::primality::PrimalityConfig p_config;
    double p_dump = -1.0;
    prim_cmd->add_option("--k", p_config.k, "Number under test (>= 2)")->required();
    prim_cmd->add_option("--p", p_config.P, "Ancilla dimension, power of two >= 4");
    prim_cmd->add_option("--r", p_config.R, "Number of counting ancillas");
    prim_cmd->add_option("--seed", p_config.seed, "Measurement seed");
    prim_cmd->add_option("--dump-state-threshold", p_dump,
                         "Include amplitudes with |amp|^2 above this value");
    CommonFlags p_flags;
    add_common(prim_cmd, p_flags);

    // pnt
    auto* pnt_cmd =
        app.add_subcommand("pnt", "Count primes below n and test n/ln n");
    qnt::pnt::PntConfig n_config;
    double n_dump = -1.0;
    pnt_cmd->add_option("--n", n_config.n, "Domain bound, power of two >= 8")
        ->required();
    pnt_cmd->add_option("--p", n_config.p, "Inner precision, power of two");
    pnt_cmd->add_option("--q", n_config.q, "Outer precision, power of two");
    pnt_cmd->add_option("--reps", n_config.repetitions, "Measurement repetitions");
    pnt_cmd->add_option("--seed", n_config.seed, "Base seed");
    pnt_cmd->add_option("--delta", n_config.delta, "Theoretical precision exponent");
    pnt_cmd->add_option("--dump-state-threshold", n_dump,
                        "Include amplitudes with |amp|^2 above this value");
    CommonFlags n_flags;
    add_common(pnt_cmd, n_flags);

    // hl
    auto* hl_cmd = app.add_subcommand(
        "hl", "Count ordered prime-pair representations of an even 2N");
    qnt::hl::HlConfig h_config;
    double h_dump = -1.0;
    hl_cmd->add_option("--two-n", h_config.two_n, "Even target (>= 8)")->required();
    hl_cmd->add_option("--p", h_config.p, "Inner precision, power of two");
    hl_cmd->add_option("--q", h_config.q, "Outer precision, power of two");
    hl_cmd->add_option("--reps", h_config.repetitions, "Measurement repetitions");
    hl_cmd->add_option("--seed", h_config.seed, "Base seed");
    hl_cmd->add_option("--nu", h_config.nu, "Precision exponent of the check");
    hl_cmd->add_option("--mu", h_config.mu, "Conjectured power of log N");
    hl_cmd->add_option("--dump-state-threshold", h_dump,
                       "Include amplitudes with |amp|^2 above this value");
    CommonFlags h_flags;
    add_common(hl_cmd, h_flags);

    // sweep
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Run one pipeline over ranges of parameters (CSV by default)");
    SweepOptions s_opt;
    sweep_cmd
        ->add_option("--pipeline", s_opt.pipeline,
                     "witness, count, primality, pnt or hl")
        ->required()
        ->check(CLI::IsMember({"witness", "count", "primality", "pnt", "hl"}));
    sweep_cmd->add_option("--k", s_opt.k, "Comma-separated k values");
    sweep_cmd->add_option("--n", s_opt.n, "Comma-separated n values");
    sweep_cmd->add_option("--two-n", s_opt.two_n, "Comma-separated 2N values");
    sweep_cmd->add_option("--p", s_opt.p, "Comma-separated P values");
    sweep_cmd->add_option("--q", s_opt.q, "Comma-separated Q values");
    sweep_cmd->add_option("--r", s_opt.r, "Comma-separated R values");
    sweep_cmd->add_option("--reps", s_opt.reps, "Repetitions per row");
    sweep_cmd->add_option("--seed", s_opt.seed, "Base seed; row i uses seed + i");
    sweep_cmd->add_option("--delta", s_opt.delta, "pnt precision exponent");
    sweep_cmd->add_option("--nu", s_opt.nu, "hl precision exponent");
    sweep_cmd->add_option("--mu", s_opt.mu, "hl conjectured power");
    CommonFlags s_flags;
    s_flags.format = "csv";
    add_common(sweep_cmd, s_flags);

    try {
        app.parse(argc, argv);

        if (witness_cmd->parsed()) {
            emit_report(qnt::report::witness_report(w_k), w_flags);
        } else if (count_cmd->parsed()) {
            emit_report(qnt::report::count_report(c_config), c_flags);
        } else if (prim_cmd->parsed()) {
            emit_report(qnt::report::primality_report(p_config, p_dump), p_flags);
        } else if (pnt_cmd->parsed()) {
            const qnt::pnt::PntResult result =
                qnt::pnt::run_prime_count(n_config, nullptr, n_dump);
            emit_report(qnt::report::pnt_report(result, result.state_dump), n_flags);
        } else if (hl_cmd->parsed()) {
            const qnt::hl::HlResult result =
                qnt::hl::run_pair_count(h_config, nullptr, h_dump);
            emit_report(qnt::report::hl_report(result, result.state_dump), h_flags);
        } else if (sweep_cmd->parsed()) {
            run_sweep(s_opt, s_flags);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const qnt::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qnt::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
