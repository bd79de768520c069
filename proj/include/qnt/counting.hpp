#pragma once

// The generic counting transform: controlled Grover powers followed by a
// Fourier transform on each ancilla, its exact analytic outcome
// distribution, and the estimator mapping a measured outcome to a
// cardinality with an a-priori error bound.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "qnt/statevec.hpp"

namespace qnt::counting {

/// sin(pi x) / (P sin(pi x / P)); the limit value 1 is used at x = 0 (mod P).
double sinc_weight(double x, std::uint64_t P);

/// Location of the outcome peak for a marked set of size t in a domain of
/// size N, measured with an ancilla of dimension P: f = P asin(sqrt(t/N))/pi,
/// in [0, P/2].
double peak_position(std::uint64_t t, std::uint64_t domain_dim, std::uint64_t P);

/// The pair of weights s_-(l), s_+(l) that govern the outcome distribution
/// around a peak position f. Their squares, averaged, sum to 1 over l.
struct SincWeights {
    double f = 0.0;
    std::uint64_t P = 2;

    double s_minus(std::uint64_t l) const {
        return sinc_weight(static_cast<double>(l) - f, P);
    }
    double s_plus(std::uint64_t l) const {
        return sinc_weight(static_cast<double>(l) + f, P);
    }
};

struct CountEstimate {
    std::uint64_t outcome = 0;   // measured ancilla value in [0, P)
    double f = 0.0;              // min(outcome, P - outcome), no interpolation
    double theta = 0.0;          // pi f / P
    double t = 0.0;              // domain_dim * sin^2(theta)
    double error_bound = 0.0;    // pi N/P (pi/P + 2 sqrt(t/N)), a priori
};

CountEstimate estimate_from_outcome(std::uint64_t outcome, std::uint64_t P,
                                    std::uint64_t domain_dim);

/// Most frequent rounded estimate; ties broken toward the smaller value.
/// Returns the member estimate closest to the winning rounded value.
CountEstimate majority_estimate(std::span<const CountEstimate> estimates);

struct CountSetup {
    std::uint64_t domain_dim = 2;   // N >= 2
    std::uint64_t ancilla_dim = 2;  // P, an integer power of two
    std::uint64_t repetitions = 1;  // R >= 1 ancilla registers
    std::function<bool(std::uint64_t)> marked;

    void validate() const;  // throws ConfigError
};

/// Layout [m1..mR (dim P each), a (dim N)] with every register flat.
sv::QState make_count_state(const CountSetup& setup);

/// Controlled G^(m1+...+mR) on the domain register followed by a forward
/// Fourier transform on each ancilla. Expects the state of
/// make_count_state.
void count_transform(sv::StateView s, const CountSetup& setup);

/// Joint Born marginal over the R ancillas, indexed l1*P^(R-1)+...+lR.
std::vector<double> ancilla_marginal(sv::StateView s, std::uint64_t repetitions);

/// Index of the all-ancillas tuple (l1..lR) in the joint marginal.
std::uint64_t tuple_index(std::span<const std::uint64_t> ls, std::uint64_t P);

/// Exact analytic outcome distribution of the counting transform:
/// Pr(l1..lR) = ((prod_i s_+(l_i))^2 + (prod_i s_-(l_i))^2) / 2.
/// The relative phase between the two branches cancels in every
/// probability; the transform tests assert this against direct simulation.
std::vector<double> predict_distribution(std::uint64_t domain_dim, std::uint64_t t,
                                         std::uint64_t P, std::uint64_t repetitions);

bool is_power_of_two(std::uint64_t v);

/// Deduplicated {floor(f), ceil(f), P - floor(f), P - ceil(f)} mod P: the
/// outcomes carrying the bulk of the distribution around a peak at f.
std::vector<std::uint64_t> peak_outcomes(double f, std::uint64_t P);

/// Draw one index from a discrete distribution with a 53-bit uniform deviate.
std::uint64_t sample_index(std::span<const double> probs, std::mt19937_64& rng);

}  // namespace qnt::counting
