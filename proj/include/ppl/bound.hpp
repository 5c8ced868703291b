#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppl/certified.hpp"
#include "ppl/config.hpp"
#include "ppl/integer.hpp"
#include "ppl/parallel.hpp"
#include "ppl/primes.hpp"
#include "ppl/theta.hpp"

namespace ppl {

enum class PStrategy { LargestPrime, ScanAll };
enum class Verdict { Certified, Failed, Indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Failed: return "failed";
        default: return "indeterminate";
    }
}

struct PipelineConfig {
    unsigned long k_min = 35;
    unsigned long k_max = 35;
    PStrategy p_strategy = PStrategy::LargestPrime;
    unsigned precision = default_precision();
    std::vector<unsigned long> coefficient_primes;
    bool allow_small_k = false;         // explore k < 35 outside theorem mode
    unsigned long value_route_cap = 10000;  // largest k compared against exact 3^k
    unsigned threads = 1;
};

/// Primes p with k/2 < p <= k; the pool the reduction picks from.
inline std::vector<unsigned long> p_candidates(unsigned long k) {
    if (k < 3) throw std::invalid_argument("p_candidates: k >= 3 required");
    std::vector<unsigned long> out;
    for (std::uint64_t q : primes_in(k / 2, k)) out.push_back(static_cast<unsigned long>(q));
    if (out.empty()) throw std::logic_error("p_candidates: empty in (k/2, k]");
    return out;
}

inline unsigned long select_p(unsigned long k) { return p_candidates(k).back(); }

/// Read-only caches shared across per-k bound computations: theta table,
/// primorial prefixes for the exact route, per-prime log enclosures, and the
/// small log constants.
class BoundContext {
public:
    BoundContext(unsigned long k_max, unsigned bits = default_precision(),
                 unsigned long value_cap = 10000, unsigned threads = 1)
        : bits_(bits),
          value_cap_(value_cap),
          table_(std::max<unsigned long>(k_max, 2), bits),
          log2_(log2_constant(bits)),
          log3_(log_enclosure(Rational(3), bits)),
          log6_((log2_constant(bits) + log_enclosure(Rational(3), bits)).rounded(bits)),
          log16_((CertifiedReal(Integer(4)) * log2_constant(bits)).rounded(bits)) {
        const auto& ps = table_.primes();
        std::vector<CertifiedReal> lp(ps.size()), lsq(ps.size()), llsq(ps.size());
        parallel_for(ps.size(), threads, [&](std::size_t i) {
            unsigned long p = static_cast<unsigned long>(ps[i]);
            lp[i] = log_enclosure(Rational(p), bits_);
            CertifiedReal base =
                (sqrt_enclosure(Integer(p), bits_ + 16) + CertifiedReal(Integer(1)))
                    .rounded(bits_ + 16);
            CertifiedReal lg = log_certified(base, bits_).rounded(bits_);
            lsq[i] = lg;
            llsq[i] = log_certified(lg, bits_).rounded(bits_);
        });
        Integer acc = 1;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (ps[i] <= value_cap_) {
                acc *= Integer(ps[i]);
                primorial_primes_.push_back(ps[i]);
                primorial_products_.push_back(acc);
            }
            unsigned long p = static_cast<unsigned long>(ps[i]);
            log_p_.emplace(p, std::move(lp[i]));
            log_sqrtp1_.emplace(p, std::move(lsq[i]));
            log_log_sqrtp1_.emplace(p, std::move(llsq[i]));
        }
    }

    unsigned precision_bits() const { return bits_; }
    unsigned long value_cap() const { return value_cap_; }
    const ThetaTable& theta() const { return table_; }
    const CertifiedReal& log2() const { return log2_; }
    const CertifiedReal& log3() const { return log3_; }
    const CertifiedReal& log6() const { return log6_; }
    const CertifiedReal& log16() const { return log16_; }

    const CertifiedReal& log_prime(unsigned long p) const { return log_p_.at(p); }
    const CertifiedReal& log_sqrtp1(unsigned long p) const { return log_sqrtp1_.at(p); }
    const CertifiedReal& log_log_sqrtp1(unsigned long p) const { return log_log_sqrtp1_.at(p); }

    /// 2^4 * prod of primes q <= k with q != p, exactly (k <= value_cap).
    Integer divisor_bound_exact(unsigned long k, unsigned long p) const {
        if (k > value_cap_) throw std::invalid_argument("divisor_bound_exact: k beyond cap");
        auto it = std::upper_bound(primorial_primes_.begin(), primorial_primes_.end(), k);
        if (it == primorial_primes_.begin())
            throw std::invalid_argument("divisor_bound_exact: no primes <= k");
        const Integer& prod = primorial_products_[(it - primorial_primes_.begin()) - 1];
        return Integer(16) * prod / Integer(p);
    }

private:
    unsigned bits_;
    unsigned long value_cap_;
    ThetaTable table_;
    CertifiedReal log2_, log3_, log6_, log16_;
    std::vector<std::uint64_t> primorial_primes_;
    std::vector<Integer> primorial_products_;  // prefix products, aligned with the primes
    std::map<unsigned long, CertifiedReal> log_p_;
    std::map<unsigned long, CertifiedReal> log_sqrtp1_;
    std::map<unsigned long, CertifiedReal> log_log_sqrtp1_;
};

/// Coefficient primes of the generalized variant must be primes <= k/2 —
/// then they are already absorbed by the divisor product.
inline void validate_coefficient_primes(const std::vector<unsigned long>& coeffs,
                                        unsigned long k) {
    for (unsigned long q : coeffs) {
        if (!is_prime(Integer(q)))
            throw std::invalid_argument("coefficient " + std::to_string(q) + " is not prime");
        if (2 * q > k)
            throw std::invalid_argument("coefficient prime " + std::to_string(q) +
                                        " exceeds k/2 = " + std::to_string(k / 2));
    }
}

/// Enclosure of log(2^4 prod_{q <= k, q != p} q) = log 16 + theta(k) - log p.
inline CertifiedReal log_divisor_bound(unsigned long k, unsigned long p,
                                       const std::vector<unsigned long>& coefficient_primes,
                                       const BoundContext& ctx) {
    auto cands = p_candidates(k);
    if (std::find(cands.begin(), cands.end(), p) == cands.end())
        throw std::invalid_argument("log_divisor_bound: p not in (k/2, k]");
    validate_coefficient_primes(coefficient_primes, k);
    return (ctx.log16() + ctx.theta().theta(k) - ctx.log_prime(p))
        .rounded(ctx.precision_bits());
}

struct ExponentBoundReport {
    unsigned long k = 0;
    bool theorem_mode = false;
    bool coefficients_absorbed = false;
    unsigned long p_chosen = 0;
    std::vector<unsigned long> candidates;
    CertifiedReal log_divisor_bound;
    std::optional<Integer> divisor_bound;        // exact, k <= value cap
    std::optional<CertifiedReal> degree_bound;   // (D+1)/12
    std::optional<CertifiedReal> log_ell_bound;  // (D+1)/6 * log(sqrt p + 1)
    std::optional<Integer> threshold_exact;      // 3^k
    CertifiedReal log_log_ell_bound;             // log of the ell bound
    CertifiedReal threshold_log;                 // k log 3
    std::optional<Truth> value_route;            // ell bound < 3^k in value space
    Truth log_route = Truth::Indeterminate;      // same comparison in log space
    Verdict verdict = Verdict::Indeterminate;
};

namespace detail {

inline ExponentBoundReport bound_for_p(unsigned long k, unsigned long p,
                                       const PipelineConfig& config, const BoundContext& ctx) {
    unsigned bits = ctx.precision_bits();
    ExponentBoundReport r;
    r.k = k;
    r.theorem_mode = k >= 35;
    r.coefficients_absorbed = !config.coefficient_primes.empty();
    r.p_chosen = p;
    r.log_divisor_bound = log_divisor_bound(k, p, config.coefficient_primes, ctx);
    r.threshold_log = (CertifiedReal(Integer(k)) * ctx.log3()).rounded(bits);

    CertifiedReal log_d1_over6;  // log((D+1)/6)
    if (k <= ctx.value_cap()) {
        Integer D = ctx.divisor_bound_exact(k, p);
        r.divisor_bound = D;
        r.degree_bound = CertifiedReal(make_rational(D + 1, 12));
        CertifiedReal ell_bound =
            (CertifiedReal(make_rational(D + 1, 6)) * ctx.log_sqrtp1(p)).rounded(bits);
        r.log_ell_bound = ell_bound;
        r.threshold_exact = pow_ui(Integer(3), k);
        r.value_route = certified_less(ell_bound, CertifiedReal(*r.threshold_exact));
        log_d1_over6 = log_enclosure(make_rational(D + 1, 6), bits);
    } else {
        // log(D+1) <= log D + log 2; the extra log 2 is immaterial slack here
        CertifiedReal log_d1(r.log_divisor_bound.lower(),
                             (r.log_divisor_bound + ctx.log2()).upper());
        log_d1_over6 = (log_d1 - ctx.log6()).rounded(bits);
    }
    r.log_log_ell_bound = (log_d1_over6 + ctx.log_log_sqrtp1(p)).rounded(bits);
    r.log_route = certified_less(r.log_log_ell_bound, r.threshold_log);

    bool any_false = r.log_route == Truth::False ||
                     (r.value_route && *r.value_route == Truth::False);
    bool any_indet = r.log_route == Truth::Indeterminate ||
                     (r.value_route && *r.value_route == Truth::Indeterminate);
    r.verdict = any_false ? Verdict::Failed
                          : (any_indet ? Verdict::Indeterminate : Verdict::Certified);
    return r;
}

} // namespace detail

inline ExponentBoundReport exponent_bound(unsigned long k, const PipelineConfig& config,
                                          const BoundContext& ctx) {
    if (k < 35 && !config.allow_small_k)
        throw std::invalid_argument("exponent_bound: k < 35 needs the small-k override");
    validate_coefficient_primes(config.coefficient_primes, k);
    auto candidates = p_candidates(k);
    ExponentBoundReport best;
    if (config.p_strategy == PStrategy::LargestPrime) {
        best = detail::bound_for_p(k, candidates.back(), config, ctx);
    } else {
        bool have = false;
        for (unsigned long p : candidates) {
            ExponentBoundReport r = detail::bound_for_p(k, p, config, ctx);
            auto upper = [](const ExponentBoundReport& rep) {
                return rep.log_ell_bound ? rep.log_ell_bound->upper()
                                         : rep.log_log_ell_bound.upper();
            };
            if (!have || upper(r) < upper(best)) {
                best = r;
                have = true;
            }
        }
    }
    best.candidates = candidates;
    return best;
}

inline ExponentBoundReport exponent_bound(unsigned long k, const PipelineConfig& config) {
    BoundContext ctx(k, config.precision, config.value_route_cap, config.threads);
    return exponent_bound(k, config, ctx);
}

struct VerifyRangeResult {
    std::vector<ExponentBoundReport> reports;
    Verdict overall = Verdict::Certified;
    std::optional<unsigned long> first_not_certified;
    Rational max_ratio;  // max of (ell bound upper)/(3^k), over the exact-route ks
    unsigned long max_ratio_k = 0;
};

inline VerifyRangeResult verify_theorem_range(const PipelineConfig& config) {
    if (!(35 <= config.k_min && config.k_min <= config.k_max))
        throw std::invalid_argument("verify_theorem_range: need 35 <= k_min <= k_max");
    BoundContext ctx(config.k_max, config.precision, config.value_route_cap, config.threads);
    VerifyRangeResult out;
    std::size_t count = config.k_max - config.k_min + 1;
    out.reports.resize(count);
    parallel_for(count, config.threads, [&](std::size_t i) {
        out.reports[i] = exponent_bound(config.k_min + i, config, ctx);
    });
    out.max_ratio = 0;
    for (const auto& r : out.reports) {
        if (r.verdict != Verdict::Certified) {
            if (!out.first_not_certified) out.first_not_certified = r.k;
            if (r.verdict == Verdict::Failed) out.overall = Verdict::Failed;
            else if (out.overall == Verdict::Certified) out.overall = Verdict::Indeterminate;
        }
        if (r.log_ell_bound && r.threshold_exact) {
            Rational ratio = r.log_ell_bound->upper() / Rational(*r.threshold_exact);
            if (ratio > out.max_ratio) {
                out.max_ratio = ratio;
                out.max_ratio_k = r.k;
            }
        }
    }
    return out;
}

/// The closed-form slack inequality behind the range verdicts:
/// 1.000081 k + 4 log 2 - log p + log log(sqrt p + 1) - log 6 < k log 3.
inline Truth slack_inequality(unsigned long k, unsigned long p, const BoundContext& ctx) {
    unsigned bits = ctx.precision_bits();
    CertifiedReal lhs = (CertifiedReal(make_rational(Integer(1000081) * Integer(k), 1000000)) +
                         ctx.log16() - ctx.log_prime(p) + ctx.log_log_sqrtp1(p) - ctx.log6())
                            .rounded(bits);
    CertifiedReal rhs = (CertifiedReal(Integer(k)) * ctx.log3()).rounded(bits);
    return certified_less(lhs, rhs);
}

struct SmallKStatus {
    unsigned long k;
    std::string settled_by;
    unsigned long range_lo;
    unsigned long range_hi;
};

/// Prior work settling 2 <= k <= 34 — citation data, nothing recomputed.
inline SmallKStatus small_k_status(unsigned long k) {
    if (k >= 2 && k <= 4) return {k, "Sander", 2, 4};
    if (k == 5) return {k, "Lakhal-Sander", 5, 5};
    if (k >= 6 && k <= 11) return {k, "BBGH", 6, 11};
    if (k >= 12 && k <= 34) return {k, "GHP", 12, 34};
    throw std::invalid_argument("small_k_status: k outside [2, 34]");
}

} // namespace ppl
