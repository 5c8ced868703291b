#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppl {

// Exact arbitrary-precision integers and rationals. All arithmetic in the
// library is exact unless a value is explicitly an interval endpoint.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer pow_ui(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline int sign_of(const Integer& n) { return mpz_sgn(n.get_mpz_t()); }

/// Number of bits in |n|; 0 for n = 0.
inline std::size_t bit_length(const Integer& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline Integer shift_left(const Integer& n, unsigned long s) {
    Integer r;
    mpz_mul_2exp(r.get_mpz_t(), n.get_mpz_t(), s);
    return r;
}

/// floor(n / 2^s), exact toward -infinity.
inline Integer floor_div_2exp(const Integer& n, unsigned long s) {
    Integer r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), n.get_mpz_t(), s);
    return r;
}

/// ceil(n / 2^s), exact toward +infinity.
inline Integer ceil_div_2exp(const Integer& n, unsigned long s) {
    Integer r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), n.get_mpz_t(), s);
    return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer isqrt_floor(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor: negative input");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Multiplicity of p in n (n != 0, p >= 2).
inline unsigned long ord_at(const Integer& n, const Integer& p) {
    if (n == 0) throw std::invalid_argument("ord_at: zero input");
    Integer rem;
    return static_cast<unsigned long>(
        mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

/// num/den in lowest terms with positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer parse_integer(const std::string& s) {
    try {
        return Integer(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
}

} // namespace ppl
