#pragma once

// Counting the primes below N with a unitary pipeline: an inner witness
// count builds an approximate phase flip of the prime branches, an outer
// Grover iterate amplifies them, and a Fourier-analyzed control register
// estimates their number. The residual of the inner subroutine against the
// ideal phase flip is tracked numerically throughout.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qnt/counting.hpp"
#include "qnt/statevec.hpp"

namespace qnt::pnt {

/// Classical definition of the set being counted and of the witness marks
/// used by the inner count. Tests substitute forced variants; the default
/// is primality with strong witnesses.
struct PrimeOracle {
    std::function<bool(std::uint64_t)> is_good;                  // k >= 2 only
    std::function<bool(std::uint64_t, std::uint64_t)> marked;    // (k, a), a >= 1

    std::uint64_t good_count(std::uint64_t domain_dim) const;
};

/// Table-backed oracle: is_good = prime, marked = strong witness, for all
/// values below max_value.
PrimeOracle standard_oracle(std::uint64_t max_value);

struct PntConfig {
    std::uint64_t n = 16;       // domain bound, power of two >= 8
    std::uint64_t p = 8;        // inner counting precision, power of two
    std::uint64_t q = 16;       // outer counting precision, power of two
    std::uint64_t repetitions = 1;
    std::uint64_t seed = 0;
    double delta = 0.0;         // precision exponent of the theoretical check

    void validate() const;
};

/// Approximate phase flip of the good branches, built unitarily from an
/// inner counting transform and its full uncomputation. Acts on any state
/// whose layout contains registers "k" (the branch), "mp" (dim p) and "a"
/// (the witness domain, effective dimension k per branch). The flip of the
/// inner ancilla zero subspace is gated on k >= 2, where the witness domain
/// is nondegenerate.
void apply_prime_flip(sv::StateView s, std::uint64_t p, const PrimeOracle& oracle);

/// One outer Grover iterate: the flat-state reflection over the k register
/// composed onto the approximate phase flip.
void apply_main_iterate(sv::StateView s, std::uint64_t p, const PrimeOracle& oracle);

struct ErrorBudget {
    double e_norm_sq = 0.0;            // residual of one flip vs the ideal
    double e_bound = 0.0;              // 4 (2/(sqrt(3) p))^2
    std::vector<double> en_norm_sq;    // residual after n iterates, n = 0..q
    double w_bound = 0.0;              // 4 sqrt(en_norm_sq[q])
};

/// <E|E> of a single flip applied to the flat superposition, measured as a
/// numeric residual against the ideal signed state.
double prime_flip_residual(std::uint64_t n, std::uint64_t p,
                           const PrimeOracle* oracle = nullptr);

/// Residual after each of the first q iterates, plus the single-flip value.
ErrorBudget error_budget(std::uint64_t n, std::uint64_t p, std::uint64_t q,
                         const PrimeOracle* oracle = nullptr);

struct PntCheck {
    double t_estimate = 0.0;
    double t_true = 0.0;
    double n_over_log_n = 0.0;
    double abs_err_exp = 0.0;     // |t_estimate - t_true|
    double err_bound_true = 0.0;  // pi n/q (pi/q + 2 sqrt(t_true/n))
    double abs_err_th = 0.0;      // n (ln n)^(-delta-1)
    double beta_eff = 0.0;        // ln q / ln ln n
    bool beta_ok = false;         // beta_eff > delta + 1/2
    bool ansatz_ok = false;       // 1 < f_q < q/2 - 1
    std::optional<bool> pass;     // empty when the ansatz is violated
};

PntCheck check_prime_count(double t_estimate, const PntConfig& config,
                           std::uint64_t t_true);

struct PntResult {
    PntConfig config;
    std::uint64_t t_true = 0;
    double theta_true = 0.0;
    double f_q = 0.0;
    bool ansatz_ok = false;
    std::vector<std::uint64_t> outcomes;
    std::vector<counting::CountEstimate> estimates;
    counting::CountEstimate majority;
    ErrorBudget budget;
    std::vector<double> outcome_marginal;        // exact, length q
    std::vector<std::uint64_t> target_outcomes;  // floor/ceil of f_q + mirrors
    double success_mass_exact = 0.0;
    double success_mass_ideal = 0.0;
    double w_err_exact = 0.0;  // ideal minus exact mass on the targets
    PntCheck check;
    std::string state_dump;  // pre-measurement state, only when requested
};

/// Full pipeline: prepare, apply the control-powered iterate, Fourier the
/// control register, then sample `repetitions` outcomes from the exact
/// marginal with per-repetition seed streams and majority-combine them.
/// A non-negative dump_threshold captures the pre-measurement state as JSON.
PntResult run_prime_count(const PntConfig& config,
                          const PrimeOracle* oracle = nullptr,
                          double dump_threshold = -1.0);

}  // namespace qnt::pnt
