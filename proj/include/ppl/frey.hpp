#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ppl/certified.hpp"
#include "ppl/errors.hpp"
#include "ppl/factor.hpp"
#include "ppl/primes.hpp"
#include "ppl/ternary.hpp"

namespace ppl {

/// Y^2 = X(X - A)(X + B) with A = a u^ell, B = b v^ell.
struct FreyCurve {
    Integer A;
    Integer B;
    TernaryTriple provenance;
};

enum class ReductionType { Good, Multiplicative, Additive };

inline const char* to_string(ReductionType r) {
    switch (r) {
        case ReductionType::Good: return "good";
        case ReductionType::Multiplicative: return "multiplicative";
        default: return "additive";
    }
}

struct TraceResult {
    std::uint64_t q;
    Integer a_q;
    Integer point_count;
};

struct LevelBound {
    Integer rad2_abc;
    unsigned r_max = 5;
    Integer level_max;      // 2^5 * rad2_abc
    Integer divisor_bound;  // 2^4 * prod of primes q <= k, q != p
    bool level_divides_twice_bound;
};

inline FreyCurve frey_curve(const TernaryTriple& t) {
    validate_triple(t);
    Integer A = t.a * pow_ui(t.u, t.ell);
    Integer B = t.b * pow_ui(t.v, t.ell);
    if (A == 0 || B == 0 || A + B == 0)
        throw std::invalid_argument("frey_curve: degenerate roots");
    return FreyCurve{A, B, t};
}

inline Integer discriminant(const FreyCurve& e) {
    Integer core = e.A * e.B * (e.A + e.B);
    return 16 * core * core;
}

inline ReductionType reduction_type(const FreyCurve& e, std::uint64_t q) {
    if (q == 2) throw std::invalid_argument("reduction_type: q = 2 is out of scope");
    if (!is_prime(Integer(q))) throw std::invalid_argument("reduction_type: q must be prime");
    Integer Q(q);
    if (discriminant(e) % Q != 0) return ReductionType::Good;
    // roots 0, A, -B collide mod q; both A and B vanishing means all three do
    if (e.A % Q == 0 && e.B % Q == 0) return ReductionType::Additive;
    return ReductionType::Multiplicative;
}

/// Exact point count of Y^2 = X^3 + c2 X^2 + c1 X over F_q (affine plus the
/// point at infinity) by a square-table scan; q odd, good reduction, q <= 1e7.
inline TraceResult count_points(const FreyCurve& e, std::uint64_t q) {
    if (q == 2 || !is_prime(Integer(q)))
        throw std::invalid_argument("count_points: q must be an odd prime");
    if (q > 10000000) throw budget_error("count_points: q exceeds the 1e7 naive budget");
    if (reduction_type(e, q) != ReductionType::Good)
        throw std::invalid_argument("count_points: bad reduction at q");

    Integer Q(q);
    Integer c2_int = e.B - e.A;
    Integer c1_int = -e.A * e.B;
    std::uint64_t c2 = mpz_fdiv_ui(c2_int.get_mpz_t(), q);
    std::uint64_t c1 = mpz_fdiv_ui(c1_int.get_mpz_t(), q);

    std::vector<bool> is_square(q, false);
    for (std::uint64_t t = 0; t <= q / 2; ++t) is_square[(t * t) % q] = true;

    std::uint64_t affine = 0;
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t fx = (((x * x % q) * x % q) + (c2 * (x * x % q) % q) + c1 * x % q) % q;
        if (fx == 0)
            affine += 1;
        else if (is_square[fx])
            affine += 2;
    }
    Integer count = Integer(affine) + 1;
    Integer a_q = Q + 1 - count;
    if (a_q * a_q > 4 * Q)
        throw std::logic_error("count_points: Hasse bound violated");
    return TraceResult{q, a_q, count};
}

/// Product of the distinct odd primes dividing n (1 for powers of two).
inline Integer rad2(const Integer& n) {
    if (n == 0) throw std::invalid_argument("rad2: zero input");
    Integer r = 1;
    for (const auto& [p, e] : factorize(n).factors)
        if (p != 2) r *= p;
    return r;
}

inline LevelBound level_bound(const TernaryTriple& t, unsigned long k, unsigned long p) {
    if (!is_prime(Integer(p))) throw std::invalid_argument("level_bound: p must be prime");
    if (!(2 * p > k && p <= k)) throw std::invalid_argument("level_bound: need k/2 < p <= k");
    LevelBound lb;
    lb.rad2_abc = rad2(t.a * t.b * t.c);
    lb.level_max = Integer(32) * lb.rad2_abc;
    lb.divisor_bound = 16;
    for (std::uint64_t q : sieve_primes(k))
        if (q != p) lb.divisor_bound *= Integer(q);
    lb.level_divides_twice_bound = (2 * lb.divisor_bound) % lb.level_max == 0;
    return lb;
}

/// Enclosure of (sqrt(p) + 1)^(2 degree).
inline CertifiedReal trace_obstruction_bound(std::uint64_t p, unsigned long degree,
                                             unsigned bits = default_precision()) {
    if (degree == 0) return CertifiedReal(Integer(1));
    CertifiedReal base = sqrt_enclosure(Integer(p), bits + 16) + CertifiedReal(Integer(1));
    CertifiedReal sq = (base * base).rounded(bits + 16);  // (sqrt p + 1)^2 > 0
    CertifiedReal acc = sq;
    for (unsigned long i = 1; i < degree; ++i) acc = (acc * sq).rounded(bits + 16);
    return acc.rounded(bits);
}

/// Enclosure of 2 * degree * log(sqrt(p) + 1), the log form of the above.
inline CertifiedReal trace_obstruction_log(std::uint64_t p, unsigned long degree,
                                           unsigned bits = default_precision()) {
    CertifiedReal base = sqrt_enclosure(Integer(p), bits + 16) + CertifiedReal(Integer(1));
    CertifiedReal lg = log_certified(base, bits + 16);
    return (CertifiedReal(Integer(2 * degree)) * lg).rounded(bits);
}

/// Certifies 2 sqrt(p) < p + 1, the strict Hasse gap that keeps q + 1 - c_q
/// away from zero.
inline Truth trace_nonvanishing(std::uint64_t p, unsigned bits = default_precision()) {
    CertifiedReal two_sqrt = CertifiedReal(Integer(2)) * sqrt_enclosure(Integer(p), bits);
    return certified_less(two_sqrt, CertifiedReal(Integer(p + 1)));
}

} // namespace ppl
