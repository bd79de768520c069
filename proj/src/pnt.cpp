#include "qnt/pnt.hpp"

#include <cmath>
#include <string>
#include <memory>
#include <numbers>
#include <utility>

#include "qnt/errors.hpp"
#include "qnt/ntcore.hpp"
#include "qnt/rng.hpp"

namespace qnt::pnt {

using sv::cplx;

std::uint64_t PrimeOracle::good_count(std::uint64_t domain_dim) const {
    std::uint64_t t = 0;
    for (std::uint64_t k = 2; k < domain_dim; ++k) {
        if (is_good(k)) {
            ++t;
        }
    }
    return t;
}

PrimeOracle standard_oracle(std::uint64_t max_value) {
    auto primes = std::make_shared<std::vector<bool>>(nt::prime_table(max_value));
    // witness marks for every k <= max_value, flattened row by row
    auto marks = std::make_shared<std::vector<std::vector<char>>>(max_value + 1);
    for (std::uint64_t k = 2; k <= max_value; ++k) {
        (*marks)[k].assign(k, 0);
        for (std::uint64_t a = 1; a < k; ++a) {
            (*marks)[k][a] = nt::is_witness(k, a) ? 1 : 0;
        }
    }
    PrimeOracle oracle;
    oracle.is_good = [primes](std::uint64_t k) {
        return k < primes->size() && (*primes)[k];
    };
    oracle.marked = [marks](std::uint64_t k, std::uint64_t a) {
        return k < marks->size() && a < (*marks)[k].size() && (*marks)[k][a] != 0;
    };
    return oracle;
}

void PntConfig::validate() const {
    if (!counting::is_power_of_two(n) || n < 8) {
        throw ConfigError("pnt: n must be a power of two >= 8");
    }
    if (!counting::is_power_of_two(p) || p < 2) {
        throw ConfigError("pnt: p must be a power of two >= 2");
    }
    if (!counting::is_power_of_two(q) || q < 2) {
        throw ConfigError("pnt: q must be a power of two >= 2");
    }
    if (repetitions < 1) {
        throw ConfigError("pnt: repetitions must be >= 1");
    }
    if (delta < 0.0) {
        throw ConfigError("pnt: delta must be >= 0");
    }
    const std::uint64_t cap = sv::dimension_cap();
    std::uint64_t total = 1;
    for (std::uint64_t factor : {q, n, p, n}) {
        if (total > cap / factor) {
            throw CapacityError("pnt: total dimension exceeds the cap of " +
                                std::to_string(cap));
        }
        total *= factor;
    }
    if (total > cap) {
        throw CapacityError("pnt: total dimension exceeds the cap of " +
                            std::to_string(cap));
    }
}

void apply_prime_flip(sv::StateView s, std::uint64_t p, const PrimeOracle& oracle) {
    const std::size_t k_index = s.layout->index_of("k");
    const sv::TargetMarker marker =
        [&oracle, k_index](std::uint64_t a, std::span<const std::uint64_t> tuple) {
            const std::uint64_t k = tuple[k_index];
            return a != 0 && k >= 2 && oracle.marked(k, a);
        };
    const auto branch_dim = [](std::uint64_t k) {
        return std::max<std::uint64_t>(k, 1);
    };

    sv::OpLog inner;
    sv::apply_fourier(s, "mp", p, sv::Direction::Forward, &inner);
    sv::apply_controlled_fourier(s, "k", "a", branch_dim, sv::Direction::Forward,
                                 &inner);
    const std::string controls[] = {"mp"};
    sv::apply_controlled_grover_power(s, controls, "a",
                                      sv::EffectiveDim::from_register("k"), marker,
                                      &inner);
    sv::apply_fourier(s, "mp", p, sv::Direction::Forward, &inner);

    const std::string zero_regs[] = {"mp"};
    sv::apply_phase_flip_zero(
        s, zero_regs,
        sv::ValueGate{"k", [](std::uint64_t k) { return k >= 2; }});

    sv::run_adjoint(s, inner);
}

void apply_main_iterate(sv::StateView s, std::uint64_t p, const PrimeOracle& oracle) {
    apply_prime_flip(s, p, oracle);
    const std::uint64_t n = s.layout->dim(s.layout->index_of("k"));
    sv::grover_step(s, "k", n, [](std::uint64_t) { return false; });
}

namespace {

sv::RegisterLayout flip_layout(std::uint64_t n, std::uint64_t p) {
    return sv::RegisterLayout({{"k", n}, {"mp", p}, {"a", n}});
}

// Flat superposition over k with both ancillas in |0>.
sv::QState flat_over_k(std::uint64_t n, std::uint64_t p) {
    sv::QState state = sv::QState::zero(flip_layout(n, p));
    sv::apply_fourier(state.view(), "k", n, sv::Direction::Forward);
    return state;
}

// Overlap of the current state with k_n|G> + l_n|B>, the exact two-plane
// rotation of the flat start after n ideal iterates.
double residual_vs_rotation(sv::StateView s, const PrimeOracle& oracle,
                            std::uint64_t n_iterates, double theta,
                            std::uint64_t t_good) {
    const sv::RegisterLayout& layout = *s.layout;
    const std::uint64_t n = layout.dim(layout.index_of("k"));
    const std::uint64_t k_stride = layout.stride(layout.index_of("k"));
    const double angle = (2.0 * static_cast<double>(n_iterates) + 1.0) * theta;
    const double good_amp =
        t_good > 0 ? std::sin(angle) / std::sqrt(static_cast<double>(t_good)) : 0.0;
    const double bad_amp =
        t_good < n ? std::cos(angle) / std::sqrt(static_cast<double>(n - t_good))
                   : 0.0;
    double overlap_re = 0.0;
    double ideal_norm_sq = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double ideal = (k >= 2 && oracle.is_good(k)) ? good_amp : bad_amp;
        overlap_re += ideal * s.amps[k * k_stride].real();
        ideal_norm_sq += ideal * ideal;
    }
    const double value = sv::norm_sq(s) + ideal_norm_sq - 2.0 * overlap_re;
    return std::max(value, 0.0);
}

}  // namespace

double prime_flip_residual(std::uint64_t n, std::uint64_t p,
                           const PrimeOracle* oracle) {
    const PrimeOracle std_oracle = oracle ? PrimeOracle{} : standard_oracle(n);
    const PrimeOracle& o = oracle ? *oracle : std_oracle;
    sv::QState state = flat_over_k(n, p);
    apply_prime_flip(state.view(), p, o);

    const sv::RegisterLayout& layout = state.layout();
    const std::uint64_t k_stride = layout.stride(0);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    double residual = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double sign = (k >= 2 && o.is_good(k)) ? -1.0 : 1.0;
        const cplx ideal{sign * inv_sqrt_n, 0.0};
        residual += std::norm(state.amps()[k * k_stride] - ideal);
    }
    // off-support amplitudes (ancillas not restored to zero) are pure error
    const std::uint64_t total = layout.total_dim();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (idx % k_stride != 0) {
            residual += std::norm(state.amps()[idx]);
        }
    }
    return residual;
}

ErrorBudget error_budget(std::uint64_t n, std::uint64_t p, std::uint64_t q,
                         const PrimeOracle* oracle) {
    const PrimeOracle std_oracle = oracle ? PrimeOracle{} : standard_oracle(n);
    const PrimeOracle& o = oracle ? *oracle : std_oracle;
    ErrorBudget budget;
    budget.e_norm_sq = prime_flip_residual(n, p, &o);
    budget.e_bound = 16.0 / (3.0 * static_cast<double>(p) * static_cast<double>(p));

    const std::uint64_t t_good = o.good_count(n);
    const double theta = std::asin(
        std::sqrt(static_cast<double>(t_good) / static_cast<double>(n)));
    sv::QState state = flat_over_k(n, p);
    budget.en_norm_sq.reserve(q + 1);
    budget.en_norm_sq.push_back(
        residual_vs_rotation(state.view(), o, 0, theta, t_good));
    for (std::uint64_t it = 1; it <= q; ++it) {
        apply_main_iterate(state.view(), p, o);
        budget.en_norm_sq.push_back(
            residual_vs_rotation(state.view(), o, it, theta, t_good));
    }
    budget.w_bound = 4.0 * std::sqrt(budget.en_norm_sq.back());
    return budget;
}

PntCheck check_prime_count(double t_estimate, const PntConfig& config,
                           std::uint64_t t_true) {
    PntCheck check;
    const double n = static_cast<double>(config.n);
    const double q = static_cast<double>(config.q);
    check.t_estimate = t_estimate;
    check.t_true = static_cast<double>(t_true);
    check.n_over_log_n = n / std::log(n);
    check.abs_err_exp = std::abs(t_estimate - check.t_true);
    check.err_bound_true =
        std::numbers::pi * n / q *
        (std::numbers::pi / q + 2.0 * std::sqrt(check.t_true / n));
    check.abs_err_th = n * std::pow(std::log(n), -config.delta - 1.0);
    check.beta_eff = std::log(q) / std::log(std::log(n));
    check.beta_ok = check.beta_eff > config.delta + 0.5;
    const double f_q =
        counting::peak_position(t_true, config.n, config.q);
    check.ansatz_ok = f_q > 1.0 && f_q < q / 2.0 - 1.0;
    if (check.ansatz_ok) {
        check.pass = check.abs_err_exp <= check.err_bound_true && check.beta_ok;
    }
    return check;
}

PntResult run_prime_count(const PntConfig& config, const PrimeOracle* oracle,
                          double dump_threshold) {
    config.validate();
    const PrimeOracle std_oracle = oracle ? PrimeOracle{} : standard_oracle(config.n);
    const PrimeOracle& o = oracle ? *oracle : std_oracle;

    PntResult result;
    result.config = config;
    result.t_true = o.good_count(config.n);
    result.theta_true = std::asin(std::sqrt(static_cast<double>(result.t_true) /
                                            static_cast<double>(config.n)));
    result.f_q = static_cast<double>(config.q) * result.theta_true / std::numbers::pi;
    result.ansatz_ok =
        result.f_q > 1.0 && result.f_q < static_cast<double>(config.q) / 2.0 - 1.0;

    sv::QState state = sv::QState::zero(sv::RegisterLayout(
        {{"mq", config.q}, {"k", config.n}, {"mp", config.p}, {"a", config.n}}));
    sv::apply_fourier(state.view(), "mq", config.q, sv::Direction::Forward);
    sv::apply_fourier(state.view(), "k", config.n, sv::Direction::Forward);

    // control-powered iterate: branch m of the control register receives m
    // applications; branches are contiguous because mq is the leading register
    const sv::RegisterLayout branch_layout = flip_layout(config.n, config.p);
    const std::uint64_t branch_size = branch_layout.total_dim();
    for (std::uint64_t m = 1; m < config.q; ++m) {
        sv::StateView branch{&branch_layout,
                             state.amps().subspan(m * branch_size, branch_size)};
        for (std::uint64_t it = 0; it < m; ++it) {
            apply_main_iterate(branch, config.p, o);
        }
    }
    sv::apply_fourier(state.view(), "mq", config.q, sv::Direction::Forward);
    if (dump_threshold >= 0.0) {
        result.state_dump = sv::dump_json(state.view(), dump_threshold);
    }

    result.outcome_marginal = sv::marginal(state.view(), "mq");
    result.target_outcomes = counting::peak_outcomes(result.f_q, config.q);
    const std::vector<double> ideal = counting::predict_distribution(
        config.n, result.t_true, config.q, 1);
    for (std::uint64_t target : result.target_outcomes) {
        result.success_mass_exact += result.outcome_marginal[target];
        result.success_mass_ideal += ideal[target];
    }
    result.w_err_exact =
        std::max(0.0, result.success_mass_ideal - result.success_mass_exact);

    for (std::uint64_t rep = 0; rep < config.repetitions; ++rep) {
        std::mt19937_64 rng(derive_stream(config.seed, rep));
        const std::uint64_t outcome =
            counting::sample_index(result.outcome_marginal, rng);
        result.outcomes.push_back(outcome);
        result.estimates.push_back(
            counting::estimate_from_outcome(outcome, config.q, config.n));
    }
    result.majority = counting::majority_estimate(result.estimates);
    result.budget = error_budget(config.n, config.p, config.q, &o);
    result.check = check_prime_count(result.majority.t, config, result.t_true);
    return result;
}

}  // namespace qnt::pnt
