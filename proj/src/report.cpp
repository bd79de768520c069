#include "qnt/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnt/counting.hpp"
#include "qnt/errors.hpp"
#include "qnt/ntcore.hpp"
#include "qnt/rng.hpp"

namespace qnt::report {

namespace {

constexpr std::size_t kMaxListedLiars = 64;

json base_report(const char* command) {
    json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

json estimate_json(const counting::CountEstimate& e) {
    return json{{"outcome", e.outcome},
                {"f", e.f},
                {"theta", e.theta},
                {"t", e.t},
                {"error_bound", e.error_bound}};
}

json budget_json(const pnt::ErrorBudget& budget) {
    json j;
    j["residual_norm_sq"] = budget.e_norm_sq;
    j["residual_bound"] = budget.e_bound;
    j["residual_ok"] = budget.e_norm_sq <= budget.e_bound;
    j["iterate_residual_norm_sq"] = budget.en_norm_sq;
    j["w_bound"] = budget.w_bound;
    return j;
}

json check_json(const pnt::PntCheck& check) {
    json j;
    j["t_estimate"] = check.t_estimate;
    j["t_true"] = check.t_true;
    j["n_over_log_n"] = check.n_over_log_n;
    j["abs_err"] = check.abs_err_exp;
    j["err_bound"] = check.err_bound_true;
    j["abs_err_theory"] = check.abs_err_th;
    j["beta_eff"] = check.beta_eff;
    j["beta_ok"] = check.beta_ok;
    j["ansatz_ok"] = check.ansatz_ok;
    if (check.pass.has_value()) {
        j["pass"] = *check.pass;
    } else {
        j["pass"] = nullptr;
    }
    return j;
}

}  // namespace

json witness_report(std::uint64_t k) {
    if (k < 2) {
        throw ConfigError("witness: k must be >= 2");
    }
    json j = base_report("witness");
    j["config"] = {{"k", k}};
    const std::vector<std::uint64_t> liars = nt::strong_liars(k);
    const std::uint64_t t_k = k - 1 - liars.size();
    const bool is_prime = nt::prime_table(k)[k];
    json result;
    result["t_k"] = t_k;
    result["is_prime"] = is_prime;
    result["gap_bound"] = 3.0 * static_cast<double>(k - 1) / 4.0;
    result["gap_ok"] = is_prime
                           ? t_k == 0
                           : 4 * t_k >= 3 * (k - 1);
    if (liars.size() <= kMaxListedLiars) {
        result["liars"] = liars;
        result["liars_omitted"] = false;
    } else {
        result["liars_omitted"] = true;
    }
    j["result"] = std::move(result);
    return j;
}

void CountRunConfig::validate() const {
    primality::PrimalityConfig{k, p, r, seed}.validate();
    if (repetitions < 1) {
        throw ConfigError("count: repetitions must be >= 1");
    }
}

json count_report(const CountRunConfig& config) {
    config.validate();
    json j = base_report("count");
    j["config"] = {{"k", config.k},
                   {"p", config.p},
                   {"r", config.r},
                   {"reps", config.repetitions},
                   {"seed", config.seed}};

    const std::uint64_t t_k = nt::count_witnesses(config.k);
    const double f = counting::peak_position(t_k, config.k, config.p);
    j["truth"] = {{"t_k", t_k},
                  {"f", f},
                  {"alpha", counting::sinc_weight(f, config.p)}};

    sv::QState state = primality::prepare_state(
        primality::PrimalityConfig{config.k, config.p, config.r, config.seed});
    const std::vector<double> joint =
        counting::ancilla_marginal(state.view(), config.r);
    const std::vector<double> analytic =
        counting::predict_distribution(config.k, t_k, config.p, config.r);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        max_dev = std::max(max_dev, std::abs(joint[i] - analytic[i]));
    }
    j["distribution"] = {{"joint_marginal", joint},
                         {"analytic", analytic},
                         {"max_abs_deviation", max_dev}};

    json outcomes = json::array();
    std::vector<counting::CountEstimate> estimates;
    for (std::uint64_t rep = 0; rep < config.repetitions; ++rep) {
        std::mt19937_64 rng(derive_stream(config.seed, rep));
        std::uint64_t idx = counting::sample_index(joint, rng);
        std::vector<std::uint64_t> tuple(config.r);
        for (std::size_t i = config.r; i-- > 0;) {
            tuple[i] = idx % config.p;
            idx /= config.p;
        }
        outcomes.push_back(tuple);
        for (std::uint64_t l : tuple) {
            estimates.push_back(counting::estimate_from_outcome(l, config.p, config.k));
        }
    }
    const counting::CountEstimate majority = counting::majority_estimate(estimates);
    j["samples"] = {{"outcomes", outcomes}, {"majority", estimate_json(majority)}};
    if (config.dump_threshold >= 0.0) {
        j["state_dump"] = json::parse(sv::dump_json(state.view(), config.dump_threshold));
    }
    return j;
}

json primality_report(const primality::PrimalityConfig& config,
                      double dump_threshold) {
    config.validate();
    json j = base_report("primality");
    j["config"] = {{"k", config.k},
                   {"p", config.P},
                   {"r", config.R},
                   {"seed", config.seed}};

    const std::uint64_t t_k = nt::count_witnesses(config.k);
    const double f_k = counting::peak_position(t_k, config.k, config.P);
    const double alpha = counting::sinc_weight(f_k, config.P);
    j["truth"] = {{"t_k", t_k},
                  {"is_prime", t_k == 0},
                  {"f_k", f_k},
                  {"alpha", alpha}};

    const primality::PrimalityOutcome outcome = primality::run_primality(config);
    const double zero_prob =
        primality::zero_probability(config.k, config.P, config.R);
    const double closed_form =
        std::pow(alpha * alpha, static_cast<double>(config.R));
    const bool bound_applicable =
        f_k >= static_cast<double>(config.P) / 3.0;

    json result;
    result["verdict"] = outcome.verdict == primality::Verdict::ProbablyPrime
                            ? "probably_prime"
                            : "composite_certain";
    result["measured"] = outcome.measured;
    result["error_probability_bound"] = outcome.error_probability_bound;
    result["all_zero_probability"] = zero_prob;
    result["alpha_pow_2r"] = closed_form;
    result["closed_form_abs_dev"] = std::abs(zero_prob - closed_form);
    result["bound_applicable"] = bound_applicable;
    if (bound_applicable) {
        result["bound_ok"] = zero_prob <= outcome.error_probability_bound;
    } else {
        result["bound_ok"] = nullptr;  // f_k below P/3; exact f_k reported above
    }
    j["result"] = std::move(result);
    if (dump_threshold >= 0.0) {
        sv::QState state = primality::prepare_state(config);
        j["state_dump"] = json::parse(sv::dump_json(state.view(), dump_threshold));
    }
    return j;
}

json pnt_report(const pnt::PntResult& result, const std::string& state_dump) {
    json j = base_report("pnt");
    j["config"] = {{"n", result.config.n},     {"p", result.config.p},
                   {"q", result.config.q},     {"reps", result.config.repetitions},
                   {"seed", result.config.seed}, {"delta", result.config.delta}};
    j["truth"] = {{"t_n", result.t_true},
                  {"theta", result.theta_true},
                  {"f_q", result.f_q},
                  {"n_over_log_n", result.check.n_over_log_n},
                  {"ansatz_ok", result.ansatz_ok}};
    j["estimate"] = {{"outcomes", result.outcomes},
                     {"majority", estimate_json(result.majority)}};
    j["error_budget"] = budget_json(result.budget);
    j["success"] = {{"target_outcomes", result.target_outcomes},
                    {"mass_exact", result.success_mass_exact},
                    {"mass_ideal", result.success_mass_ideal},
                    {"w_err", result.w_err_exact},
                    {"reference_level", 8.0 / (std::numbers::pi * std::numbers::pi)}};
    j["outcome_marginal"] = result.outcome_marginal;
    j["check"] = check_json(result.check);
    if (!state_dump.empty()) {
        j["state_dump"] = json::parse(state_dump);
    }
    return j;
}

json hl_report(const hl::HlResult& result, const std::string& state_dump) {
    json j = base_report("hl");
    j["config"] = {{"two_n", result.config.two_n}, {"p", result.config.p},
                   {"q", result.config.q},         {"reps", result.config.repetitions},
                   {"seed", result.config.seed},   {"nu", result.config.nu},
                   {"mu", result.config.mu}};
    j["truth"] = {{"r2", result.r2_true},
                  {"theta", result.theta_true},
                  {"f_q", result.f_q},
                  {"conjecture_scale", result.conjecture_scale},
                  {"ansatz_ok", result.ansatz_ok}};
    j["estimate"] = {{"outcomes", result.outcomes},
                     {"majority", estimate_json(result.majority)},
                     {"conjecture_ratio", result.conjecture_ratio}};
    j["error_budget"] = budget_json(result.budget);
    j["success"] = {{"target_outcomes", result.target_outcomes},
                    {"mass_exact", result.success_mass_exact},
                    {"mass_ideal", result.success_mass_ideal},
                    {"w_err", result.w_err_exact},
                    {"reference_level", 8.0 / (std::numbers::pi * std::numbers::pi)}};
    j["outcome_marginal"] = result.outcome_marginal;
    j["check"] = {{"r2_estimate", result.majority.t},
                  {"r2_true", result.r2_true},
                  {"abs_err", result.abs_err_exp},
                  {"err_bound", result.err_bound_true},
                  {"ansatz_ok", result.ansatz_ok},
                  {"pass", result.ansatz_ok
                               ? json(result.abs_err_exp <= result.err_bound_true)
                               : json(nullptr)}};
    if (!state_dump.empty()) {
        j["state_dump"] = json::parse(state_dump);
    }
    return j;
}

namespace {

struct Column {
    const char* header;
    const char* path;  // dotted JSON pointer within the report
};

const std::vector<Column>& columns_for(const std::string& command) {
    static const std::vector<Column> witness = {
        {"k", "config.k"},           {"t_k", "result.t_k"},
        {"is_prime", "result.is_prime"}, {"gap_bound", "result.gap_bound"},
        {"gap_ok", "result.gap_ok"},
    };
    static const std::vector<Column> count = {
        {"k", "config.k"},       {"p", "config.p"},
        {"r", "config.r"},       {"reps", "config.reps"},
        {"seed", "config.seed"}, {"t_k", "truth.t_k"},
        {"f", "truth.f"},        {"majority_t", "samples.majority.t"},
        {"error_bound", "samples.majority.error_bound"},
        {"max_abs_deviation", "distribution.max_abs_deviation"},
    };
    static const std::vector<Column> primality = {
        {"k", "config.k"},
        {"p", "config.p"},
        {"r", "config.r"},
        {"seed", "config.seed"},
        {"verdict", "result.verdict"},
        {"all_zero_probability", "result.all_zero_probability"},
        {"alpha_pow_2r", "result.alpha_pow_2r"},
        {"error_probability_bound", "result.error_probability_bound"},
        {"f_k", "truth.f_k"},
        {"t_k", "truth.t_k"},
        {"bound_applicable", "result.bound_applicable"},
        {"bound_ok", "result.bound_ok"},
    };
    static const std::vector<Column> pnt = {
        {"n", "config.n"},
        {"p", "config.p"},
        {"q", "config.q"},
        {"reps", "config.reps"},
        {"seed", "config.seed"},
        {"majority_t", "estimate.majority.t"},
        {"t_n", "truth.t_n"},
        {"n_over_log_n", "truth.n_over_log_n"},
        {"f_q", "truth.f_q"},
        {"ansatz_ok", "truth.ansatz_ok"},
        {"residual_norm_sq", "error_budget.residual_norm_sq"},
        {"residual_bound", "error_budget.residual_bound"},
        {"abs_err", "check.abs_err"},
        {"err_bound", "check.err_bound"},
        {"pass", "check.pass"},
    };
    static const std::vector<Column> hl = {
        {"two_n", "config.two_n"},
        {"p", "config.p"},
        {"q", "config.q"},
        {"reps", "config.reps"},
        {"seed", "config.seed"},
        {"r2_estimate", "estimate.majority.t"},
        {"r2_true", "truth.r2"},
        {"conjecture_ratio", "estimate.conjecture_ratio"},
        {"f_q", "truth.f_q"},
        {"ansatz_ok", "truth.ansatz_ok"},
        {"residual_norm_sq", "error_budget.residual_norm_sq"},
        {"residual_bound", "error_budget.residual_bound"},
        {"abs_err", "check.abs_err"},
        {"err_bound", "check.err_bound"},
        {"pass", "check.pass"},
    };
    if (command == "witness") return witness;
    if (command == "count") return count;
    if (command == "primality") return primality;
    if (command == "pnt") return pnt;
    if (command == "hl") return hl;
    throw ConfigError("csv: unknown command '" + command + "'");
}

const json* lookup(const json& root, const std::string& dotted) {
    const json* node = &root;
    std::size_t start = 0;
    while (start <= dotted.size()) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key = dotted.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) {
            return nullptr;
        }
        node = &(*node)[key];
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    return node;
}

std::string cell(const json* value) {
    if (value == nullptr || value->is_null()) {
        return "";
    }
    if (value->is_string()) {
        return value->get<std::string>();
    }
    return value->dump();
}

}  // namespace

std::string csv_header_for(const std::string& command) {
    const std::vector<Column>& cols = columns_for(command);
    std::string header;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i > 0) {
            header += ",";
        }
        header += cols[i].header;
    }
    return header;
}

std::string to_csv(const json& report) {
    return to_csv_table({report});
}

std::string to_csv_table(const std::vector<json>& reports) {
    if (reports.empty()) {
        throw ConfigError("csv: no reports");
    }
    const std::string command = reports.front().at("command").get<std::string>();
    const std::vector<Column>& cols = columns_for(command);
    std::string out = csv_header_for(command) + "\n";
    for (const json& report : reports) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i > 0) {
                out += ",";
            }
            out += cell(lookup(report, cols[i].path));
        }
        out += "\n";
    }
    return out;
}

}  // namespace qnt::report
