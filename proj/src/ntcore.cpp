#include "qnt/ntcore.hpp"

#include <bit>

#include "qnt/errors.hpp"

namespace qnt::nt {

OddDecomposition decompose_odd(std::uint64_t n) {
    if (n == 0) {
        throw ConfigError("decompose_odd: n must be >= 1");
    }
    OddDecomposition d;
    d.h = static_cast<std::uint32_t>(std::countr_zero(n));
    d.l = n >> d.h;
    return d;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m < 2) {
        throw ConfigError("mod_pow: modulus must be >= 2");
    }
    if (m >= (1ULL << 32)) {
        throw ConfigError("mod_pow: modulus must fit in 32 bits");
    }
    std::uint64_t result = 1;
    std::uint64_t b = base % m;
    while (exp > 0) {
        if (exp & 1) {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    return result;
}

WitnessVerdict witness(std::uint64_t k, std::uint64_t a) {
    if (k < 2) {
        throw ConfigError("witness: k must be >= 2");
    }
    if (a == 0 || a >= k) {
        throw ConfigError("witness: base must satisfy 1 <= a < k");
    }
    const OddDecomposition d = decompose_odd(k - 1);
    std::uint64_t x = mod_pow(a, d.l, k);
    if (x == 1 || x == k - 1) {
        return WitnessVerdict::NonWitness;
    }
    for (std::uint32_t i = 1; i < d.h; ++i) {
        x = x * x % k;
        if (x == k - 1) {
            return WitnessVerdict::NonWitness;
        }
        if (x == 1) {
            break;  // reached 1 without passing -1; a is a witness
        }
    }
    return WitnessVerdict::Witness;
}

std::uint64_t count_witnesses(std::uint64_t k) {
    if (k < 2) {
        throw ConfigError("count_witnesses: k must be >= 2");
    }
    std::uint64_t t = 0;
    for (std::uint64_t a = 1; a < k; ++a) {
        if (is_witness(k, a)) {
            ++t;
        }
    }
    return t;
}

std::vector<std::uint64_t> strong_liars(std::uint64_t k) {
    if (k < 2) {
        throw ConfigError("strong_liars: k must be >= 2");
    }
    std::vector<std::uint64_t> liars;
    for (std::uint64_t a = 1; a < k; ++a) {
        if (!is_witness(k, a)) {
            liars.push_back(a);
        }
    }
    return liars;
}

std::vector<bool> prime_table(std::uint64_t n_inclusive) {
    std::vector<bool> prime(n_inclusive + 1, true);
    prime[0] = false;
    if (n_inclusive >= 1) {
        prime[1] = false;
    }
    for (std::uint64_t p = 2; p * p <= n_inclusive; ++p) {
        if (!prime[p]) {
            continue;
        }
        for (std::uint64_t q = p * p; q <= n_inclusive; q += p) {
            prime[q] = false;
        }
    }
    return prime;
}

SieveResult sieve_pi(std::uint64_t n) {
    if (n < 2) {
        throw ConfigError("sieve_pi: bound must be >= 2");
    }
    const std::vector<bool> table = prime_table(n - 1);
    SieveResult result;
    for (std::uint64_t v = 2; v < n; ++v) {
        if (table[v]) {
            result.primes.push_back(v);
        }
    }
    result.count = result.primes.size();
    return result;
}

std::uint64_t r2_pairs(std::uint64_t two_n) {
    if (two_n < 4 || two_n % 2 != 0) {
        throw ConfigError("r2_pairs: input must be even and >= 4");
    }
    const std::vector<bool> table = prime_table(two_n);
    std::uint64_t count = 0;
    for (std::uint64_t k = 0; k < two_n; ++k) {
        if (table[k] && table[two_n - k]) {
            ++count;
        }
    }
    return count;
}

}  // namespace qnt::nt
