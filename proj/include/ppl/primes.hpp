#pragma once

#include <cstdint>
#include <vector>

#include "ppl/config.hpp"
#include "ppl/errors.hpp"
#include "ppl/integer.hpp"

namespace ppl {

/// All primes <= limit, ascending. Limit is checked against the configured
/// sieve budget (PPL_SIEVE_LIMIT, default 1e8).
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
    if (limit > sieve_budget())
        throw budget_error("sieve limit " + std::to_string(limit) +
                           " exceeds configured budget " + std::to_string(sieve_budget()));
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    for (std::uint64_t p = 2; p <= limit; ++p)
        if (!composite[p]) primes.push_back(p);
    return primes;
}

namespace detail {

inline bool mr_witness(const Integer& n, unsigned long a, const Integer& d, unsigned long r) {
    Integer base(a), x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Integer n1 = n - 1;
    if (x == 1 || x == n1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n1) return false;
    }
    return true; // a proves n composite
}

} // namespace detail

/// Deterministic for |n| < 3.317e24 (Miller-Rabin with the 13 smallest
/// prime bases); strong probable-prime test beyond that.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static const unsigned long small[] = {2,  3,  5,  7,  11, 13, 17,
                                          19, 23, 29, 31, 37, 41};
    for (unsigned long p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    // write n-1 = d * 2^r
    Integer d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    d = floor_div_2exp(d, r);
    static const Integer deterministic_cap("3317044064679887385961981");
    if (n < deterministic_cap) {
        for (unsigned long a : small)
            if (detail::mr_witness(n, a, d, r)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

/// Primes p with lo < p <= hi, ascending.
inline std::vector<std::uint64_t> primes_in(std::uint64_t lo_exclusive, std::uint64_t hi_inclusive) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : sieve_primes(hi_inclusive))
        if (p > lo_exclusive) out.push_back(p);
    return out;
}

} // namespace ppl
