#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppl/factor.hpp"
#include "ppl/integer.hpp"
#include "ppl/primes.hpp"

namespace ppl {

/// Termwise power-free decomposition of n + i d^ell = a_i z_i^ell.
struct ApDecomposition {
    unsigned long k;
    unsigned long ell;
    Integer n;
    Integer d;
    std::vector<std::pair<Integer, Integer>> terms;  // (a_i, z_i)

    Integer modulus() const { return pow_ui(d, ell); }
    Integer term_value(unsigned long i) const { return n + Integer(i) * modulus(); }
};

/// a u^ell + b v^ell + c w^ell = 0 with ell-th-power-free coefficients.
struct TernaryTriple {
    Integer a, b, c;
    Integer u, v, w;
    unsigned long ell;

    std::array<Integer, 3> terms() const {
        return {a * pow_ui(u, ell), b * pow_ui(v, ell), c * pow_ui(w, ell)};
    }
};

enum class ReductionKind { PDividesModulus, SingleFactor, DoubleFactor };

struct ReductionCase {
    ReductionKind kind;
    unsigned long index;  // factor index for SingleFactor / DoubleFactor; 0 otherwise
};

inline const char* to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::PDividesModulus: return "p-divides-modulus";
        case ReductionKind::SingleFactor: return "single-factor";
        default: return "double-factor";
    }
}

/// Is every coefficient ell-th-power-free, nonzero, with the terms summing
/// to zero? Throws with a description when not.
inline void validate_triple(const TernaryTriple& t) {
    if (t.a == 0 || t.b == 0 || t.c == 0 || t.u == 0 || t.v == 0 || t.w == 0)
        throw std::invalid_argument("ternary triple: zero entry");
    auto tm = t.terms();
    if (tm[0] + tm[1] + tm[2] != 0)
        throw std::invalid_argument("ternary triple: terms do not sum to zero");
    for (const Integer* coef : {&t.a, &t.b, &t.c}) {
        if (power_free_part(*coef, t.ell).root != 1)
            throw std::invalid_argument("ternary triple: coefficient not power-free");
    }
}

inline ApDecomposition decompose_progression(const Integer& n, const Integer& d,
                                             unsigned long k, unsigned long ell) {
    if (k < 2) throw std::invalid_argument("decompose_progression: k >= 2 required");
    if (!is_prime(Integer(ell))) throw std::invalid_argument("decompose_progression: ell must be prime");
    if (gcd(n, d) != 1) throw std::invalid_argument("decompose_progression: gcd(n, d) != 1");
    ApDecomposition dec{k, ell, n, d, {}};
    Integer modulus = dec.modulus();
    dec.terms.reserve(k);
    for (unsigned long i = 0; i < k; ++i) {
        Integer t = n + Integer(i) * modulus;
        if (t == 0)
            throw std::invalid_argument("decompose_progression: term " + std::to_string(i) +
                                        " is zero");
        PowerFreePart pf = power_free_part(t, ell);
        dec.terms.emplace_back(pf.core, pf.root);
    }
    return dec;
}

/// gcd(n + i d^ell, n + j d^ell) divides j - i whenever gcd(n, d) = 1.
inline bool gcd_pair_bound_check(const ApDecomposition& dec, unsigned long i, unsigned long j) {
    if (!(i < j && j <= dec.k - 1))
        throw std::invalid_argument("gcd_pair_bound_check: need 0 <= i < j <= k-1");
    Integer g = gcd(dec.term_value(i), dec.term_value(j));
    return Integer(j - i) % g == 0;
}

/// (n+(i+p)D)(n+iD) - (n+(i+p-1)D)(n+(i+1)D) + (p-1)D^2 with D = d^ell.
/// Identically zero as a polynomial; returned for direct inspection.
inline Integer check_identity(const Integer& n, const Integer& d, unsigned long ell,
                              const Integer& i, const Integer& p) {
    Integer D = pow_ui(d, ell);
    return (n + (i + p) * D) * (n + i * D) - (n + (i + p - 1) * D) * (n + (i + 1) * D) +
           (p - 1) * D * D;
}

namespace detail {

inline std::vector<unsigned long> indices_divisible_by_p(const ApDecomposition& dec,
                                                         const Integer& p) {
    std::vector<unsigned long> idx;
    for (unsigned long i = 0; i < dec.k; ++i)
        if (dec.term_value(i) % p == 0) idx.push_back(i);
    return idx;
}

} // namespace detail

/// The constructive reduction at a prime p with k/2 < p <= k: from the local
/// hypothesis ord_p of the full product being a multiple of ell, produce a
/// ternary triple whose coefficients avoid p and with p dividing exactly one
/// of u, v, w.
inline std::pair<TernaryTriple, ReductionCase> reduce_at_p(const Integer& n, const Integer& d,
                                                           unsigned long k, unsigned long ell,
                                                           unsigned long p) {
    if (!is_prime(Integer(ell))) throw std::invalid_argument("reduce_at_p: ell must be prime");
    if (ell <= k) throw std::invalid_argument("reduce_at_p: ell > k required");
    if (!is_prime(Integer(p))) throw std::invalid_argument("reduce_at_p: p must be prime");
    if (!(2 * p > k && p <= k)) throw std::invalid_argument("reduce_at_p: need k/2 < p <= k");
    if (gcd(n, d) != 1) throw std::invalid_argument("reduce_at_p: gcd(n, d) != 1");

    ApDecomposition dec = decompose_progression(n, d, k, ell);  // rejects zero terms
    Integer P(p);

    if (d % P == 0) {
        // all factors are units mod p; the modulus carries p
        TernaryTriple t{Integer(1), dec.terms[0].first, -dec.terms[1].first,
                        d, dec.terms[0].second, dec.terms[1].second, ell};
        validate_triple(t);
        return {t, ReductionCase{ReductionKind::PDividesModulus, 0}};
    }

    std::vector<unsigned long> div = detail::indices_divisible_by_p(dec, P);
    // p <= k guarantees at least one divisible factor; k < 2p at most two
    unsigned long ord_total = 0;
    for (unsigned long i : div) ord_total += ord_at(dec.term_value(i), P);
    if (ord_total % ell != 0)
        throw std::invalid_argument("reduce_at_p: ord_p of the product is not a multiple of ell");

    if (div.size() == 1) {
        unsigned long i = div[0];
        TernaryTriple t =
            i < k - 1
                ? TernaryTriple{dec.terms[i].first, -dec.terms[i + 1].first, Integer(1),
                                dec.terms[i].second, dec.terms[i + 1].second, d, ell}
                : TernaryTriple{dec.terms[k - 1].first, -dec.terms[k - 2].first, Integer(-1),
                                dec.terms[k - 1].second, dec.terms[k - 2].second, d, ell};
        validate_triple(t);
        return {t, ReductionCase{ReductionKind::SingleFactor, i}};
    }
    if (div.size() != 2 || div[1] != div[0] + p)
        throw std::invalid_argument("reduce_at_p: impossible p-divisibility pattern");

    // two divisible factors i and i+p: pair them off through the identity
    unsigned long i = div[0];
    PowerFreePart alpha = power_free_part(dec.terms[i].first * dec.terms[i + p].first, ell);
    PowerFreePart beta =
        power_free_part(dec.terms[i + 1].first * dec.terms[i + p - 1].first, ell);
    TernaryTriple t{alpha.core,
                    -beta.core,
                    Integer(p - 1),
                    alpha.root * dec.terms[i].second * dec.terms[i + p].second,
                    beta.root * dec.terms[i + 1].second * dec.terms[i + p - 1].second,
                    d * d,
                    ell};
    validate_triple(t);
    return {t, ReductionCase{ReductionKind::DoubleFactor, i}};
}

/// Per-condition report for a triple relative to (k, p): coefficients
/// power-free; coefficient primes bounded by k; p coprime to abc; p dividing
/// exactly one of u, v, w. Failed conditions carry a witness.
struct ConditionStatus {
    bool holds = true;
    std::optional<Integer> witness;
    std::string detail;
};

struct ConditionReport {
    ConditionStatus coefficients_power_free;
    ConditionStatus support_bounded;
    ConditionStatus coprime_to_p;
    ConditionStatus single_p_divisor;

    bool all() const {
        return coefficients_power_free.holds && support_bounded.holds && coprime_to_p.holds &&
               single_p_divisor.holds;
    }
};

inline ConditionReport verify_conditions(const TernaryTriple& t, unsigned long k,
                                         unsigned long p) {
    ConditionReport r;
    const std::pair<const char*, const Integer*> coefs[] = {{"a", &t.a}, {"b", &t.b}, {"c", &t.c}};
    for (const auto& [name, coef] : coefs) {
        PowerFreePart pf = power_free_part(*coef, t.ell);
        if (pf.root != 1) {
            r.coefficients_power_free.holds = false;
            r.coefficients_power_free.witness = pf.root;
            r.coefficients_power_free.detail =
                std::string(name) + " carries the ell-th power " + to_string(pf.root) + "^" +
                std::to_string(t.ell);
            break;
        }
    }
    Integer abc = t.a * t.b * t.c;
    for (const auto& [q, e] : factorize(abc).factors) {
        if (q > k) {
            r.support_bounded.holds = false;
            r.support_bounded.witness = q;
            r.support_bounded.detail = "prime " + to_string(q) + " divides abc but exceeds k";
            break;
        }
    }
    if (abc % Integer(p) == 0) {
        r.coprime_to_p.holds = false;
        r.coprime_to_p.witness = Integer(p);
        r.coprime_to_p.detail = "p divides abc";
    }
    int count = 0;
    for (const Integer* v : {&t.u, &t.v, &t.w})
        if (*v % Integer(p) == 0) ++count;
    if (count != 1) {
        r.single_p_divisor.holds = false;
        r.single_p_divisor.witness = Integer(count);
        r.single_p_divisor.detail = "p divides " + std::to_string(count) + " of u, v, w";
    }
    return r;
}

/// Divide the three terms by their gcd (the quotients are pairwise coprime
/// for any zero-sum triple), then permute and globally negate so the first
/// term is 3 mod 4 and the second is even; first valid assignment in
/// lexicographic permutation-then-sign order. Coefficients of the output are
/// re-canonicalized to stay ell-th-power-free.
inline TernaryTriple normalize_triple(const TernaryTriple& t) {
    validate_triple(t);
    auto tm = t.terms();
    Integer g = gcd(gcd(tm[0], tm[1]), tm[2]);
    for (auto& x : tm) x /= g;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (gcd(tm[i], tm[j]) != 1)
                throw std::invalid_argument("normalize_triple: terms not coprime after gcd removal");

    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& perm : perms) {
        for (int sign : {1, -1}) {
            Integer t1 = Integer(sign) * tm[perm[0]];
            Integer t2 = Integer(sign) * tm[perm[1]];
            if ((t1 % 4 + 4) % 4 == 3 && t2 % 2 == 0) {
                Integer t3 = Integer(sign) * tm[perm[2]];
                PowerFreePart p1 = power_free_part(t1, t.ell);
                PowerFreePart p2 = power_free_part(t2, t.ell);
                PowerFreePart p3 = power_free_part(t3, t.ell);
                TernaryTriple out{p1.core, p2.core, p3.core, p1.root, p2.root, p3.root, t.ell};
                validate_triple(out);
                return out;
            }
        }
    }
    // exactly one term is even and an odd term can always be steered to
    // 3 mod 4 by the global sign, so this is unreachable for coprime terms
    throw std::logic_error("normalize_triple: no valid assignment found");
}

} // namespace ppl
