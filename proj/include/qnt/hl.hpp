#pragma once

// Counting the ordered representations of an even number 2N as a sum of
// two primes. The pair branch is stored as the single index k (the partner
// 2N - k is functionally determined); two nested witness counts build an
// approximate phase flip of the branches where both members are prime, and
// the outer loop mirrors the prime-counting pipeline.

#include <cstdint>
#include <string>
#include <vector>

#include "qnt/pnt.hpp"

namespace qnt::hl {

struct HlConfig {
    std::uint64_t two_n = 16;  // even, >= 8
    std::uint64_t p = 8;       // inner counting precision, power of two
    std::uint64_t q = 16;      // outer counting precision, power of two
    std::uint64_t repetitions = 1;
    std::uint64_t seed = 0;
    double nu = 0.5;           // precision exponent of the theoretical check
    double mu = 2.0;           // conjectured power of log N

    void validate() const;
};

/// Approximate phase flip of the good-pair branches. Acts on any state
/// whose layout contains "k" (dim 2N), "mp1"/"mp2" (dim p) and "a1"/"a2"
/// (dim 2N; effective dimensions k and 2N-k per branch). The flip of the
/// joint inner-ancilla zero subspace is gated on k >= 2 and 2N - k >= 2.
void apply_pair_flip(sv::StateView s, std::uint64_t p,
                     const pnt::PrimeOracle& oracle);

/// One outer Grover iterate over the pair branch register.
void apply_main_iterate(sv::StateView s, std::uint64_t p,
                        const pnt::PrimeOracle& oracle);

/// <E'|E'> of a single pair flip against the ideal signed state.
double pair_flip_residual(std::uint64_t two_n, std::uint64_t p,
                          const pnt::PrimeOracle* oracle = nullptr);

pnt::ErrorBudget error_budget(std::uint64_t two_n, std::uint64_t p,
                              std::uint64_t q,
                              const pnt::PrimeOracle* oracle = nullptr);

struct HlResult {
    HlConfig config;
    std::uint64_t r2_true = 0;
    double theta_true = 0.0;
    double f_q = 0.0;
    bool ansatz_ok = false;
    std::vector<std::uint64_t> outcomes;
    std::vector<counting::CountEstimate> estimates;
    counting::CountEstimate majority;
    pnt::ErrorBudget budget;
    std::vector<double> outcome_marginal;
    std::vector<std::uint64_t> target_outcomes;
    double success_mass_exact = 0.0;
    double success_mass_ideal = 0.0;
    double w_err_exact = 0.0;
    double abs_err_exp = 0.0;        // |r2 estimate - r2 truth|
    double err_bound_true = 0.0;     // pi 2N/q (pi/q + 2 sqrt(r2/2N))
    double conjecture_scale = 0.0;   // N / (ln N)^mu
    double conjecture_ratio = 0.0;   // r2 estimate * (ln N)^mu / N
    std::string state_dump;          // pre-measurement state, only when requested
};

HlResult run_pair_count(const HlConfig& config,
                        const pnt::PrimeOracle* oracle = nullptr,
                        double dump_threshold = -1.0);

/// Number of ordered good pairs seen by an oracle (both k and 2N-k good).
std::uint64_t good_pair_count(std::uint64_t two_n, const pnt::PrimeOracle& oracle);

}  // namespace qnt::hl
