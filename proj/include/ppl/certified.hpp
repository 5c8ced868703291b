#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "ppl/config.hpp"
#include "ppl/errors.hpp"
#include "ppl/integer.hpp"

namespace ppl {

/// Three-valued comparison verdict for interval-certified reals.
enum class Truth { True, False, Indeterminate };

inline const char* to_string(Truth t) {
    switch (t) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        default: return "indeterminate";
    }
}

/// A real number enclosed by exact rational endpoints lo <= hi. Arithmetic
/// is outward-directed, so the true value never escapes the interval.
class CertifiedReal {
public:
    CertifiedReal() : lo_(0), hi_(0) {}
    explicit CertifiedReal(const Integer& v) : lo_(v), hi_(v) {}
    explicit CertifiedReal(const Rational& v) : lo_(v), hi_(v) {}
    CertifiedReal(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw std::invalid_argument("CertifiedReal: inverted endpoints");
    }

    const Rational& lower() const { return lo_; }
    const Rational& upper() const { return hi_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }
    Rational width() const { return hi_ - lo_; }
    bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }

    CertifiedReal operator-() const { return CertifiedReal(-hi_, -lo_); }

    CertifiedReal& operator+=(const CertifiedReal& o) {
        lo_ += o.lo_;
        hi_ += o.hi_;
        return *this;
    }
    CertifiedReal& operator-=(const CertifiedReal& o) { return *this += -o; }
    CertifiedReal& operator*=(const CertifiedReal& o) {
        Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
        lo_ = std::min(std::min(a, b), std::min(c, d));
        hi_ = std::max(std::max(a, b), std::max(c, d));
        return *this;
    }

    friend CertifiedReal operator+(CertifiedReal a, const CertifiedReal& b) { return a += b; }
    friend CertifiedReal operator-(CertifiedReal a, const CertifiedReal& b) { return a -= b; }
    friend CertifiedReal operator*(CertifiedReal a, const CertifiedReal& b) { return a *= b; }

    /// Widen endpoints outward onto the dyadic grid with denominator 2^bits.
    /// Keeps endpoint sizes bounded across long computations.
    CertifiedReal rounded(unsigned bits) const {
        return CertifiedReal(dyadic_floor(lo_, bits), dyadic_ceil(hi_, bits));
    }

    static Rational dyadic_floor(const Rational& q, unsigned bits) {
        Integer n = floor_div(shift_left(q.get_num(), bits), q.get_den());
        return make_rational(n, pow_ui(Integer(2), bits));
    }
    static Rational dyadic_ceil(const Rational& q, unsigned bits) {
        Integer n = ceil_div(shift_left(q.get_num(), bits), q.get_den());
        return make_rational(n, pow_ui(Integer(2), bits));
    }

private:
    Rational lo_, hi_;
};

/// True when a < b over the whole enclosures, False when b < a, else
/// Indeterminate (caller refines precision).
inline Truth certified_less(const CertifiedReal& a, const CertifiedReal& b) {
    if (a.upper() < b.lower()) return Truth::True;
    if (b.upper() < a.lower()) return Truth::False;
    return Truth::Indeterminate;
}

namespace detail {

// atanh(t) enclosure for an exact rational |t| <= 1/3, via the odd series
// in dyadic interval arithmetic at `work` fractional bits.
inline CertifiedReal atanh_enclosure(const Rational& t, unsigned work) {
    Integer an = abs(t.get_num());
    if (an * 3 > t.get_den()) throw std::invalid_argument("atanh_enclosure: |t| > 1/3");
    CertifiedReal ti = CertifiedReal(t).rounded(work);
    CertifiedReal t2 = (ti * ti).rounded(work);
    CertifiedReal sum = ti;
    CertifiedReal pow = ti;
    Rational eps = make_rational(Integer(1), pow_ui(Integer(2), work + 4));
    for (unsigned long n = 1;; ++n) {
        pow = (pow * t2).rounded(work);
        Rational pa = abs(pow.lower());
        Rational pb = abs(pow.upper());
        Rational term_bound = (pa > pb ? pa : pb) / (2 * n + 1);
        if (term_bound < eps) {
            // remaining tail is geometric with ratio t^2 <= 1/9, so it is
            // dominated by 2 * term_bound with lots of room
            Rational tail = 2 * term_bound;
            sum += CertifiedReal(-tail, tail);
            break;
        }
        CertifiedReal term(pow.lower() / (2 * n + 1), pow.upper() / (2 * n + 1));
        sum = (sum + term).rounded(work);
    }
    return sum;
}

} // namespace detail

/// Enclosure of log 2 at the requested precision (cached).
inline CertifiedReal log2_constant(unsigned bits) {
    static std::mutex m;
    static std::map<unsigned, CertifiedReal> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    // log 2 = 2 atanh(1/3)
    CertifiedReal v = detail::atanh_enclosure(make_rational(1, 3), bits + 32);
    v = (v + v).rounded(bits + 16);
    cache.emplace(bits, v);
    return v;
}

/// Enclosure of log q for an exact rational q > 0.
inline CertifiedReal log_enclosure(const Rational& q, unsigned bits = default_precision()) {
    if (q <= 0) throw std::invalid_argument("log_enclosure: nonpositive argument");
    unsigned work = bits + 32;
    // split q = m * 2^e with m in [3/4, 3/2)
    long e = static_cast<long>(bit_length(q.get_num())) -
             static_cast<long>(bit_length(q.get_den()));
    Integer num = q.get_num(), den = q.get_den();
    auto scaled = [&](long shift) {  // returns (num', den') for q / 2^shift
        if (shift >= 0) return std::pair<Integer, Integer>(num, shift_left(den, shift));
        return std::pair<Integer, Integer>(shift_left(num, -shift), den);
    };
    auto [mn, md] = scaled(e);
    if (4 * mn < 3 * md) {
        --e;
        std::tie(mn, md) = scaled(e);
    } else if (2 * mn >= 3 * md) {
        ++e;
        std::tie(mn, md) = scaled(e);
    }
    // log m = 2 atanh((m-1)/(m+1)), with t in [-1/7, 1/5]
    Rational t = make_rational(mn - md, mn + md);
    CertifiedReal lm = detail::atanh_enclosure(t, work);
    lm += lm;
    CertifiedReal result = lm + CertifiedReal(Integer(e)) * log2_constant(work);
    return result.rounded(bits);
}

/// Enclosure of log over a positive interval (monotone hull).
inline CertifiedReal log_certified(const CertifiedReal& x,
                                   unsigned bits = default_precision()) {
    if (x.lower() <= 0) throw std::invalid_argument("log_certified: interval reaches <= 0");
    return CertifiedReal(log_enclosure(x.lower(), bits).lower(),
                         log_enclosure(x.upper(), bits).upper());
}

/// Enclosure of sqrt(n) for an integer n >= 0, width 2^-bits.
inline CertifiedReal sqrt_enclosure(const Integer& n, unsigned bits = default_precision()) {
    if (n < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
    Integer s = isqrt_floor(shift_left(n, 2 * bits));
    Integer den = pow_ui(Integer(2), bits);
    Rational lo = make_rational(s, den);
    Rational hi = make_rational(s + 1, den);
    if (s * s == shift_left(n, 2 * bits)) hi = lo;  // exact square hit
    return CertifiedReal(lo, hi);
}

/// Short decimal rendering of a rational (display only, not certified).
inline std::string decimal_string(const Rational& q, unsigned digits = 17) {
    mpf_class f(q, 64 + 4 * digits);
    mp_exp_t exp;
    std::string mant = f.get_str(exp, 10, digits);
    if (mant.empty()) return "0";
    bool neg = mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    std::string out = neg ? "-" : "";
    out += d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    out += "e" + std::to_string(exp - 1);
    return out;
}

inline std::string decimal_string(const CertifiedReal& x, unsigned digits = 17) {
    return decimal_string(x.midpoint(), digits);
}

} // namespace ppl
