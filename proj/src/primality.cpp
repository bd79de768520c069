#include "qnt/primality.hpp"

#include <cmath>
#include <utility>

#include "qnt/counting.hpp"
#include "qnt/errors.hpp"
#include "qnt/ntcore.hpp"
#include "qnt/rng.hpp"

namespace qnt::primality {

void PrimalityConfig::validate() const {
    if (k < 2) {
        throw ConfigError("primality: k must be >= 2");
    }
    if (!counting::is_power_of_two(P) || P < 4) {
        throw ConfigError("primality: P must be a power of two >= 4");
    }
    if (R < 1) {
        throw ConfigError("primality: R must be >= 1");
    }
    const std::uint64_t cap = sv::dimension_cap();
    std::uint64_t total = k;
    for (std::uint64_t i = 0; i < R; ++i) {
        if (total > cap / P) {
            throw CapacityError("primality: total dimension exceeds the cap of " +
                                std::to_string(cap));
        }
        total *= P;
    }
    if (total > cap) {
        throw CapacityError("primality: total dimension exceeds the cap of " +
                            std::to_string(cap));
    }
}

namespace {

counting::CountSetup witness_setup(const PrimalityConfig& config) {
    counting::CountSetup setup;
    setup.domain_dim = config.k;
    setup.ancilla_dim = config.P;
    setup.repetitions = config.R;
    const std::uint64_t k = config.k;
    setup.marked = [k](std::uint64_t a) { return a != 0 && nt::is_witness(k, a); };
    return setup;
}

}  // namespace

sv::QState prepare_state(const PrimalityConfig& config) {
    config.validate();
    const counting::CountSetup setup = witness_setup(config);
    sv::QState state = counting::make_count_state(setup);
    counting::count_transform(state.view(), setup);
    return state;
}

PrimalityOutcome run_primality(const PrimalityConfig& config) {
    sv::QState state = prepare_state(config);
    PrimalityOutcome out;
    out.error_probability_bound = error_bound(config.P, config.R);
    bool all_zero = true;
    for (std::uint64_t i = 0; i < config.R; ++i) {
        std::mt19937_64 rng(derive_stream(config.seed, i));
        const std::string reg = "m" + std::to_string(i + 1);
        const std::uint64_t outcome = sv::measure(state.view(), reg, rng);
        out.measured.push_back(outcome);
        all_zero = all_zero && outcome == 0;
    }
    out.verdict = all_zero ? Verdict::ProbablyPrime : Verdict::CompositeCertain;
    return out;
}

double zero_probability(std::uint64_t k, std::uint64_t P, std::uint64_t R) {
    PrimalityConfig config{k, P, R, 0};
    sv::QState state = prepare_state(config);
    const std::vector<double> joint =
        counting::ancilla_marginal(state.view(), R);
    return joint[0];
}

double witness_peak(std::uint64_t k, std::uint64_t P) {
    return counting::peak_position(nt::count_witnesses(k), k, P);
}

double alpha_closed_form(std::uint64_t k, std::uint64_t P) {
    return counting::sinc_weight(witness_peak(k, P), P);
}

double error_bound(std::uint64_t P, std::uint64_t R) {
    const double per_round = 4.0 / (3.0 * static_cast<double>(P) *
                                    static_cast<double>(P));  // (2/(sqrt(3)P))^2
    return std::pow(per_round, static_cast<double>(R));
}

}  // namespace qnt::primality
