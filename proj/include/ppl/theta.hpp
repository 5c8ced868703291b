#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppl/certified.hpp"
#include "ppl/config.hpp"
#include "ppl/integer.hpp"
#include "ppl/primes.hpp"

namespace ppl {

/// Certified prefix sums of log p over primes: theta(x) = sum_{p <= x} log p.
/// Endpoints are stored as integers at a fixed dyadic scale, so the table for
/// a million-entry sieve stays a few megabytes.
class ThetaTable {
public:
    explicit ThetaTable(std::uint64_t limit, unsigned bits = default_precision())
        : bits_(bits),
          work_(bits + 24),
          limit_(limit),
          scale_(pow_ui(Integer(2), bits + 24)),
          primes_(sieve_primes(limit)) {
        prefix_lo_.reserve(primes_.size());
        prefix_hi_.reserve(primes_.size());
        Integer lo = 0, hi = 0;
        CertifiedReal logp;
        std::uint64_t prev = 0;
        for (std::uint64_t p : primes_) {
            if (prev == 0) {
                logp = log_enclosure(Rational(static_cast<unsigned long>(p)), work_);
            } else {
                // log p = log prev + 2 atanh((p-prev)/(p+prev)); the gap ratio
                // shrinks fast, so the series needs only a few terms per prime
                Rational t = make_rational(Integer(p - prev), Integer(p + prev));
                CertifiedReal at = detail::atanh_enclosure(t, work_);
                logp = (logp + at + at).rounded(work_);
            }
            prev = p;
            lo += scaled_floor(logp.lower());
            hi += scaled_ceil(logp.upper());
            prefix_lo_.push_back(lo);
            prefix_hi_.push_back(hi);
        }
    }

    std::uint64_t limit() const { return limit_; }
    unsigned precision_bits() const { return bits_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    CertifiedReal theta(std::uint64_t x) const {
        if (x > limit_) throw std::invalid_argument("theta: argument beyond table limit");
        auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
        std::size_t idx = static_cast<std::size_t>(it - primes_.begin());
        if (idx == 0) return CertifiedReal(Integer(0));
        return CertifiedReal(make_rational(prefix_lo_[idx - 1], scale_),
                             make_rational(prefix_hi_[idx - 1], scale_));
    }

    /// Checks theta(q) < 1.000081 q at every prime q in the table; the step
    /// function theta attains its supremum on [q, next prime) at q, so these
    /// checkpoints cover every real x <= limit.
    std::optional<std::uint64_t> schoenfeld_violation() const {
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            // prefix_hi / 2^W < 1000081/1000000 * p
            Integer lhs = prefix_hi_[i] * 1000000;
            Integer rhs = Integer(1000081) * Integer(primes_[i]) * scale_;
            if (!(lhs < rhs)) return primes_[i];
        }
        return std::nullopt;
    }

private:
    Integer scaled_floor(const Rational& q) const {
        return floor_div(shift_left(q.get_num(), work_), q.get_den());
    }
    Integer scaled_ceil(const Rational& q) const {
        return ceil_div(shift_left(q.get_num(), work_), q.get_den());
    }

    unsigned bits_;
    unsigned work_;
    std::uint64_t limit_;
    Integer scale_;
    std::vector<std::uint64_t> primes_;
    std::vector<Integer> prefix_lo_;
    std::vector<Integer> prefix_hi_;
};

/// One-off theta(k); build a ThetaTable instead when querying repeatedly.
inline CertifiedReal theta_value(std::uint64_t k, unsigned bits = default_precision()) {
    return ThetaTable(k, bits).theta(k);
}

} // namespace ppl
