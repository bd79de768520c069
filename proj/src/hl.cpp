#include "qnt/hl.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qnt/errors.hpp"
#include "qnt/rng.hpp"

namespace qnt::hl {

using sv::cplx;

void HlConfig::validate() const {
    if (two_n < 8 || two_n % 2 != 0) {
        throw ConfigError("hl: 2N must be even and >= 8");
    }
    if (!counting::is_power_of_two(p) || p < 2) {
        throw ConfigError("hl: p must be a power of two >= 2");
    }
    if (!counting::is_power_of_two(q) || q < 2) {
        throw ConfigError("hl: q must be a power of two >= 2");
    }
    if (repetitions < 1) {
        throw ConfigError("hl: repetitions must be >= 1");
    }
    if (nu <= 0.0) {
        throw ConfigError("hl: nu must be > 0");
    }
    if (mu <= 0.0) {
        throw ConfigError("hl: mu must be > 0");
    }
    const std::uint64_t cap = sv::dimension_cap();
    std::uint64_t total = 1;
    for (std::uint64_t factor : {q, two_n, p, p, two_n, two_n}) {
        if (total > cap / factor) {
            throw CapacityError("hl: total dimension exceeds the cap of " +
                                std::to_string(cap));
        }
        total *= factor;
    }
    if (total > cap) {
        throw CapacityError("hl: total dimension exceeds the cap of " +
                            std::to_string(cap));
    }
}

std::uint64_t good_pair_count(std::uint64_t two_n, const pnt::PrimeOracle& oracle) {
    std::uint64_t count = 0;
    for (std::uint64_t k = 2; k < two_n; ++k) {
        if (two_n - k >= 2 && oracle.is_good(k) && oracle.is_good(two_n - k)) {
            ++count;
        }
    }
    return count;
}

namespace {

bool good_pair(std::uint64_t k, std::uint64_t two_n, const pnt::PrimeOracle& o) {
    return k >= 2 && two_n - k >= 2 && o.is_good(k) && o.is_good(two_n - k);
}

}  // namespace

void apply_pair_flip(sv::StateView s, std::uint64_t p,
                     const pnt::PrimeOracle& oracle) {
    const sv::RegisterLayout& layout = *s.layout;
    const std::size_t k_index = layout.index_of("k");
    const std::uint64_t two_n = layout.dim(k_index);
    const auto first_dim = [](std::uint64_t k) {
        return std::max<std::uint64_t>(k, 1);
    };
    const auto partner_dim = [two_n](std::uint64_t k) {
        return std::max<std::uint64_t>(two_n - k, 1);
    };
    const sv::TargetMarker mark_first =
        [&oracle, k_index](std::uint64_t a, std::span<const std::uint64_t> tuple) {
            const std::uint64_t k = tuple[k_index];
            return a != 0 && k >= 2 && oracle.marked(k, a);
        };
    const sv::TargetMarker mark_partner =
        [&oracle, k_index, two_n](std::uint64_t a,
                                  std::span<const std::uint64_t> tuple) {
            const std::uint64_t partner = two_n - tuple[k_index];
            return a != 0 && partner >= 2 && oracle.marked(partner, a);
        };

    sv::OpLog inner;
    sv::apply_fourier(s, "mp1", p, sv::Direction::Forward, &inner);
    sv::apply_fourier(s, "mp2", p, sv::Direction::Forward, &inner);
    sv::apply_controlled_fourier(s, "k", "a1", first_dim, sv::Direction::Forward,
                                 &inner);
    sv::apply_controlled_fourier(s, "k", "a2", partner_dim, sv::Direction::Forward,
                                 &inner);
    const std::string controls1[] = {"mp1"};
    sv::apply_controlled_grover_power(s, controls1, "a1",
                                      sv::EffectiveDim::from_register("k"),
                                      mark_first, &inner);
    const std::string controls2[] = {"mp2"};
    sv::apply_controlled_grover_power(
        s, controls2, "a2", sv::EffectiveDim::from_register("k", partner_dim),
        mark_partner, &inner);
    sv::apply_fourier(s, "mp1", p, sv::Direction::Forward, &inner);
    sv::apply_fourier(s, "mp2", p, sv::Direction::Forward, &inner);

    const std::string zero_regs[] = {"mp1", "mp2"};
    sv::apply_phase_flip_zero(
        s, zero_regs,
        sv::ValueGate{"k", [two_n](std::uint64_t k) {
                          return k >= 2 && two_n - k >= 2;
                      }});

    sv::run_adjoint(s, inner);
}

void apply_main_iterate(sv::StateView s, std::uint64_t p,
                        const pnt::PrimeOracle& oracle) {
    apply_pair_flip(s, p, oracle);
    const std::uint64_t two_n = s.layout->dim(s.layout->index_of("k"));
    sv::grover_step(s, "k", two_n, [](std::uint64_t) { return false; });
}

namespace {

sv::RegisterLayout flip_layout(std::uint64_t two_n, std::uint64_t p) {
    return sv::RegisterLayout(
        {{"k", two_n}, {"mp1", p}, {"mp2", p}, {"a1", two_n}, {"a2", two_n}});
}

sv::QState flat_over_k(std::uint64_t two_n, std::uint64_t p) {
    sv::QState state = sv::QState::zero(flip_layout(two_n, p));
    sv::apply_fourier(state.view(), "k", two_n, sv::Direction::Forward);
    return state;
}

double residual_vs_rotation(sv::StateView s, const pnt::PrimeOracle& oracle,
                            std::uint64_t n_iterates, double theta,
                            std::uint64_t t_good) {
    const sv::RegisterLayout& layout = *s.layout;
    const std::uint64_t two_n = layout.dim(layout.index_of("k"));
    const std::uint64_t k_stride = layout.stride(layout.index_of("k"));
    const double angle = (2.0 * static_cast<double>(n_iterates) + 1.0) * theta;
    const double good_amp =
        t_good > 0 ? std::sin(angle) / std::sqrt(static_cast<double>(t_good)) : 0.0;
    const double bad_amp =
        t_good < two_n
            ? std::cos(angle) / std::sqrt(static_cast<double>(two_n - t_good))
            : 0.0;
    double overlap_re = 0.0;
    double ideal_norm_sq = 0.0;
    for (std::uint64_t k = 0; k < two_n; ++k) {
        const double ideal = good_pair(k, two_n, oracle) ? good_amp : bad_amp;
        overlap_re += ideal * s.amps[k * k_stride].real();
        ideal_norm_sq += ideal * ideal;
    }
    const double value = sv::norm_sq(s) + ideal_norm_sq - 2.0 * overlap_re;
    return std::max(value, 0.0);
}

}  // namespace

double pair_flip_residual(std::uint64_t two_n, std::uint64_t p,
                          const pnt::PrimeOracle* oracle) {
    const pnt::PrimeOracle std_oracle =
        oracle ? pnt::PrimeOracle{} : pnt::standard_oracle(two_n);
    const pnt::PrimeOracle& o = oracle ? *oracle : std_oracle;
    sv::QState state = flat_over_k(two_n, p);
    apply_pair_flip(state.view(), p, o);

    const std::uint64_t k_stride = state.layout().stride(0);
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(two_n));
    double residual = 0.0;
    for (std::uint64_t k = 0; k < two_n; ++k) {
        const double sign = good_pair(k, two_n, o) ? -1.0 : 1.0;
        residual += std::norm(state.amps()[k * k_stride] - cplx{sign * inv_sqrt, 0.0});
    }
    const std::uint64_t total = state.layout().total_dim();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (idx % k_stride != 0) {
            residual += std::norm(state.amps()[idx]);
        }
    }
    return residual;
}

pnt::ErrorBudget error_budget(std::uint64_t two_n, std::uint64_t p, std::uint64_t q,
                              const pnt::PrimeOracle* oracle) {
    const pnt::PrimeOracle std_oracle =
        oracle ? pnt::PrimeOracle{} : pnt::standard_oracle(two_n);
    const pnt::PrimeOracle& o = oracle ? *oracle : std_oracle;
    pnt::ErrorBudget budget;
    budget.e_norm_sq = pair_flip_residual(two_n, p, &o);
    budget.e_bound = 16.0 / (3.0 * static_cast<double>(p) * static_cast<double>(p));

    const std::uint64_t t_good = good_pair_count(two_n, o);
    const double theta = std::asin(
        std::sqrt(static_cast<double>(t_good) / static_cast<double>(two_n)));
    sv::QState state = flat_over_k(two_n, p);
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

HlResult run_pair_count(const HlConfig& config, const pnt::PrimeOracle* oracle,
                        double dump_threshold) {
    config.validate();
    const pnt::PrimeOracle std_oracle =
        oracle ? pnt::PrimeOracle{} : pnt::standard_oracle(config.two_n);
    const pnt::PrimeOracle& o = oracle ? *oracle : std_oracle;

    HlResult result;
    result.config = config;
    result.r2_true = good_pair_count(config.two_n, o);
    result.theta_true = std::asin(std::sqrt(static_cast<double>(result.r2_true) /
                                            static_cast<double>(config.two_n)));
    result.f_q = static_cast<double>(config.q) * result.theta_true / std::numbers::pi;
    result.ansatz_ok =
        result.f_q > 1.0 && result.f_q < static_cast<double>(config.q) / 2.0 - 1.0;

    sv::QState state = sv::QState::zero(sv::RegisterLayout({{"mq", config.q},
                                                            {"k", config.two_n},
                                                            {"mp1", config.p},
                                                            {"mp2", config.p},
                                                            {"a1", config.two_n},
                                                            {"a2", config.two_n}}));
    sv::apply_fourier(state.view(), "mq", config.q, sv::Direction::Forward);
    sv::apply_fourier(state.view(), "k", config.two_n, sv::Direction::Forward);

    const sv::RegisterLayout branch_layout = flip_layout(config.two_n, config.p);
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
        config.two_n, result.r2_true, config.q, 1);
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
            counting::estimate_from_outcome(outcome, config.q, config.two_n));
    }
    result.majority = counting::majority_estimate(result.estimates);
    result.budget = error_budget(config.two_n, config.p, config.q, &o);

    const double big_n = static_cast<double>(config.two_n) / 2.0;
    const double two_n_d = static_cast<double>(config.two_n);
    const double q_d = static_cast<double>(config.q);
    result.abs_err_exp =
        std::abs(result.majority.t - static_cast<double>(result.r2_true));
    result.err_bound_true =
        std::numbers::pi * two_n_d / q_d *
        (std::numbers::pi / q_d +
         2.0 * std::sqrt(static_cast<double>(result.r2_true) / two_n_d));
    result.conjecture_scale = big_n / std::pow(std::log(big_n), config.mu);
    result.conjecture_ratio =
        result.majority.t * std::pow(std::log(big_n), config.mu) / big_n;
    return result;
}

}  // namespace qnt::hl
