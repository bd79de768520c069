#pragma once

// Classical number theory: the strong compositeness witness that defines
// every quantum oracle in this project, plus brute-force counters used as
// ground truth for the quantum estimates.

#include <cstdint>
#include <vector>

namespace qnt::nt {

struct OddDecomposition {
    std::uint32_t h = 0;  // power of two
    std::uint64_t l = 1;  // odd part; 2^h * l reconstructs the input
};

/// Factor n >= 1 as 2^h * l with l odd. Rejects n == 0.
OddDecomposition decompose_odd(std::uint64_t n);

/// base^exp mod m via repeated squaring. Requires 2 <= m < 2^32.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

enum class WitnessVerdict { Witness, NonWitness };

/// Strong (Miller-Rabin) witness test. With k-1 = 2^h * l, l odd, the base
/// a is a non-witness iff a^l = 1 (mod k) or a^(l*2^i) = -1 (mod k) for
/// some 0 <= i < h; every other a certifies that k is composite.
/// Requires k >= 2 and 1 <= a < k.
WitnessVerdict witness(std::uint64_t k, std::uint64_t a);

inline bool is_witness(std::uint64_t k, std::uint64_t a) {
    return witness(k, a) == WitnessVerdict::Witness;
}

/// Number of witnesses in [1, k). Zero exactly when k is prime; at least
/// 3(k-1)/4 when k is composite.
std::uint64_t count_witnesses(std::uint64_t k);

/// Non-witness bases in [1, k) ("strong liars"), ascending.
std::vector<std::uint64_t> strong_liars(std::uint64_t k);

struct SieveResult {
    std::uint64_t count = 0;             // primes strictly below the bound
    std::vector<std::uint64_t> primes;   // ascending
};

/// Exact prime count below n (n >= 2) via a sieve of Eratosthenes.
SieveResult sieve_pi(std::uint64_t n);

/// table[v] == true iff v is prime, for v in [0, n_inclusive].
std::vector<bool> prime_table(std::uint64_t n_inclusive);

/// Ordered representations of an even number 2N as a sum of two primes:
/// #{ k in [0, 2N) : k prime and 2N - k prime }. Rejects odd input and
/// values below 4.
std::uint64_t r2_pairs(std::uint64_t two_n);

}  // namespace qnt::nt
