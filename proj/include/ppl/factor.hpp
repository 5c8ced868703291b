#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ppl/errors.hpp"
#include "ppl/integer.hpp"
#include "ppl/primes.hpp"

namespace ppl {

/// Signed exact factorization: value = sign * prod p_i^e_i, primes ascending.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Integer, unsigned long>> factors;

    Integer value() const {
        Integer v = sign;
        for (const auto& [p, e] : factors) v *= pow_ui(p, e);
        return v;
    }
};

struct FactorBudget {
    std::uint64_t trial_limit = 1000000;
    std::uint64_t rho_iterations = 50000000;
};

namespace detail {

// Brent-variant Pollard rho with a deterministic polynomial schedule.
// Returns a nontrivial factor of composite odd n, or throws when the
// iteration budget runs out.
inline Integer rho_factor(const Integer& n, std::uint64_t& budget) {
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, q = 1, g = 1, x, ys;
        std::uint64_t r = 1;
        const std::uint64_t block = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t steps = std::min<std::uint64_t>(block, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    if (budget == 0)
                        throw incomplete_factorization(
                            "rho budget exhausted with composite cofactor " + n.get_str());
                    --budget;
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += block;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack the last block one step at a time
            g = 1;
            while (g == 1) {
                if (budget == 0)
                    throw incomplete_factorization(
                        "rho budget exhausted with composite cofactor " + n.get_str());
                --budget;
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            }
        }
        if (g != n) return g;
        // cycle collapsed for this c; retry with the next polynomial
    }
}

inline void factor_into(const Integer& n, std::map<Integer, unsigned long>& out,
                        std::uint64_t& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    // perfect powers collapse before rho sees them
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = 2; e <= bit_length(n); ++e) {
            Integer root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                std::map<Integer, unsigned long> sub;
                factor_into(root, sub, budget);
                for (const auto& [p, k] : sub) out[p] += k * e;
                return;
            }
        }
    }
    Integer g = rho_factor(n, budget);
    factor_into(g, out, budget);
    factor_into(n / g, out, budget);
}

} // namespace detail

/// Exact deterministic factorization: trial division up to the budget's
/// trial limit, then Pollard rho. Throws incomplete_factorization when a
/// composite cofactor survives the rho budget.
inline Factorization factorize(const Integer& n, const FactorBudget& budget = {}) {
    if (n == 0) throw std::invalid_argument("factorize: zero input");
    Factorization f;
    f.sign = sign_of(n) < 0 ? -1 : 1;
    Integer m = abs(n);
    if (m == 1) return f;

    unsigned long e2 = mpz_scan1(m.get_mpz_t(), 0);
    if (e2 > 0) {
        f.factors.emplace_back(2, e2);
        m = floor_div_2exp(m, e2);
    }
    // primality short-circuits keep the scan from sweeping the whole trial
    // range when the cofactor is already prime
    if (m > 1 && is_prime(m)) {
        f.factors.emplace_back(m, 1);
        m = 1;
    }
    for (std::uint64_t p = 3; p <= budget.trial_limit && Integer(p) * p <= m; p += 2) {
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= static_cast<unsigned long>(p);
            ++e;
        }
        f.factors.emplace_back(p, e);
        if (m > 1 && is_prime(m)) {
            f.factors.emplace_back(m, 1);
            m = 1;
        }
    }
    if (m > 1) {
        std::map<Integer, unsigned long> rest;
        std::uint64_t work = budget.rho_iterations;
        detail::factor_into(m, rest, work);
        for (const auto& [p, e] : rest) f.factors.emplace_back(p, e);
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return f;
}

/// n = core * root^ell with core ell-th-power-free, root >= 1, and the sign
/// carried by core. Canonical: core = sgn(n) * prod p^(e mod ell).
struct PowerFreePart {
    Integer core;
    Integer root;
    unsigned long exponent;
};

inline PowerFreePart power_free_part(const Integer& n, unsigned long ell,
                                     const FactorBudget& budget = {}) {
    if (n == 0) throw std::invalid_argument("power_free_part: zero input");
    if (ell < 2) throw std::invalid_argument("power_free_part: exponent must be >= 2");
    Factorization f = factorize(n, budget);
    PowerFreePart out{Integer(f.sign), Integer(1), ell};
    for (const auto& [p, e] : f.factors) {
        if (e % ell) out.core *= pow_ui(p, e % ell);
        if (e / ell) out.root *= pow_ui(p, e / ell);
    }
    return out;
}

/// Exact r with r^ell = n, when one exists. Odd ell handles negatives.
inline std::optional<Integer> is_perfect_ell_power(const Integer& n, unsigned long ell) {
    if (ell < 2) throw std::invalid_argument("is_perfect_ell_power: exponent must be >= 2");
    if (n == 0) return Integer(0);
    if (n < 0 && ell % 2 == 0) return std::nullopt;
    Integer m = abs(n), root;
    if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), ell) == 0) return std::nullopt;
    return n < 0 ? Integer(-root) : root;
}

} // namespace ppl
