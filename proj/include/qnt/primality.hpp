#pragma once

// Quantum primality test: an R-fold counting transform over the strong
// witness oracle of a fixed k. A prime k leaves every counting ancilla in
// |0> with amplitude exactly 1; a composite k spreads the ancillas with an
// all-zero probability bounded by (2 / (sqrt(3) P))^(2R).

#include <cstdint>
#include <vector>

#include "qnt/statevec.hpp"

namespace qnt::primality {

struct PrimalityConfig {
    std::uint64_t k = 2;     // number under test, >= 2
    std::uint64_t P = 8;     // ancilla dimension, power of two >= 4
    std::uint64_t R = 1;     // number of counting ancillas
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Verdict { CompositeCertain, ProbablyPrime };

struct PrimalityOutcome {
    Verdict verdict = Verdict::ProbablyPrime;
    std::vector<std::uint64_t> measured;   // one outcome per ancilla
    double error_probability_bound = 0.0;  // (2/(sqrt(3) P))^(2R)
};

/// Pre-measurement state of the test: ancillas and the witness-domain
/// register after the counting transform with the witness oracle of k.
/// The base a = 0 (outside the witness domain) is treated as a non-witness,
/// which keeps the prime case exact.
sv::QState prepare_state(const PrimalityConfig& config);

/// Full pipeline: prepare, measure every ancilla, map the all-zero tuple to
/// ProbablyPrime and anything else to CompositeCertain.
PrimalityOutcome run_primality(const PrimalityConfig& config);

/// Exact probability of the all-zero ancilla tuple; equals
/// alpha_closed_form(k, P)^(2R).
double zero_probability(std::uint64_t k, std::uint64_t P, std::uint64_t R);

/// alpha_k = sin(pi f_k) / (P sin(pi f_k / P)) with f_k the witness-count
/// peak position of k.
double alpha_closed_form(std::uint64_t k, std::uint64_t P);

/// f_k = P asin(sqrt(t_k / k)) / pi from the brute-force witness count.
double witness_peak(std::uint64_t k, std::uint64_t P);

double error_bound(std::uint64_t P, std::uint64_t R);

}  // namespace qnt::primality
