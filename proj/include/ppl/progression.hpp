#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ppl/factor.hpp"
#include "ppl/integer.hpp"
#include "ppl/parallel.hpp"

namespace ppl {

/// The curve x(x+1)...(x+k-1) = y^ell.
struct CurveInstance {
    unsigned long k;
    unsigned long ell;

    CurveInstance(unsigned long k_, unsigned long ell_) : k(k_), ell(ell_) {
        if (k < 2 || ell < 2) throw std::invalid_argument("CurveInstance: need k, ell >= 2");
    }
};

struct RationalPoint {
    Rational x;
    Rational y;
};

/// Cleared-denominator form: x = n/d^ell, y = m/d^k, and
/// n (n+d^ell) (n+2 d^ell) ... (n+(k-1) d^ell) = m^ell.
struct IntegerForm {
    Integer n;
    Integer d;
    Integer m;
    unsigned long k;
    unsigned long ell;
};

inline Rational pow_rational(const Rational& q, unsigned long e) {
    return make_rational(pow_ui(q.get_num(), e), pow_ui(q.get_den(), e));
}

inline Rational evaluate_product(const Rational& x, unsigned long k) {
    if (k < 2) throw std::invalid_argument("evaluate_product: k >= 2 required");
    Rational prod = x;
    Rational term = x;
    for (unsigned long i = 1; i < k; ++i) {
        term += 1;
        prod *= term;
    }
    return prod;
}

inline bool is_on_curve(const RationalPoint& p, const CurveInstance& c) {
    return evaluate_product(p.x, c.k) == pow_rational(p.y, c.ell);
}

inline bool is_trivial(const RationalPoint& p) { return p.y == 0; }

namespace detail {

// Structural split x = n/d^ell, y = m/d^k without the on-curve check;
// clear_denominators layers validation on top of this.
inline IntegerForm denominator_split(const RationalPoint& p, const CurveInstance& c) {
    const Integer& dx = p.x.get_den();
    auto d = is_perfect_ell_power(dx, c.ell);
    if (!d) throw std::invalid_argument("denominator of x is not an ell-th power");
    if (p.y.get_den() != pow_ui(*d, c.k))
        throw std::invalid_argument("denominator of y is not d^k");
    return IntegerForm{p.x.get_num(), *d, p.y.get_num(), c.k, c.ell};
}

} // namespace detail

/// For gcd(k, ell) = 1 and y != 0, an on-curve point has x = n/d^ell and
/// y = m/d^k in lowest terms; recover (n, d, m) and check the integer-form
/// identity exactly.
inline IntegerForm clear_denominators(const RationalPoint& p, const CurveInstance& c) {
    if (gcd(Integer(c.k), Integer(c.ell)) != 1)
        throw std::invalid_argument("clear_denominators: gcd(k, ell) != 1");
    if (p.y == 0) throw std::invalid_argument("clear_denominators: y = 0");
    if (!is_on_curve(p, c)) throw std::invalid_argument("clear_denominators: point not on curve");
    IntegerForm f = detail::denominator_split(p, c);
    Integer modulus = pow_ui(f.d, c.ell);
    Integer prod = 1;
    for (unsigned long i = 0; i < c.k; ++i) prod *= f.n + Integer(i) * modulus;
    if (prod != pow_ui(f.m, c.ell))
        throw std::invalid_argument("clear_denominators: integer-form identity failed");
    return f;
}

enum class Family { SquarePair, HalfInteger, CubicSporadic };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::SquarePair: return "square-pair";
        case Family::HalfInteger: return "half-integer";
        default: return "cubic-sporadic";
    }
}

struct FamilyPoint {
    RationalPoint point;
    CurveInstance curve;
    bool on_curve;
};

/// k=2, ell=2: x = a^2/(b^2-a^2), y = ab/(b^2-a^2).
inline FamilyPoint square_pair_point(const Integer& a, const Integer& b) {
    Integer den = b * b - a * a;
    if (den == 0) throw std::invalid_argument("square_pair_point: b^2 = a^2");
    CurveInstance c(2, 2);
    RationalPoint p{make_rational(a * a, den), make_rational(a * b, den)};
    return FamilyPoint{p, c, is_on_curve(p, c)};
}

/// k=2j, ell=2: x = (1-2j)/2 with y = (2j-1)!!/2^j. The k terms are the
/// half-integers -(2j-1)/2 ... (2j-1)/2, whose product is negative for odd j,
/// so the pair lies on the curve only when j is even; on_curve reports which.
inline FamilyPoint half_integer_point(unsigned long j) {
    if (j < 1) throw std::invalid_argument("half_integer_point: j >= 1 required");
    CurveInstance c(2 * j, 2);
    Integer dbl_fact = 1;
    for (unsigned long t = 1; t <= j; ++t) dbl_fact *= 2 * t - 1;
    RationalPoint p{make_rational(Integer(1) - Integer(2) * Integer(j), 2),
                    make_rational(dbl_fact, pow_ui(Integer(2), j))};
    return FamilyPoint{p, c, is_on_curve(p, c)};
}

/// k=3, ell=3: the two sporadic points.
inline FamilyPoint cubic_sporadic_point(int index) {
    CurveInstance c(3, 3);
    RationalPoint p;
    if (index == 1)
        p = RationalPoint{make_rational(-4, 3), make_rational(2, 3)};
    else if (index == 2)
        p = RationalPoint{make_rational(-2, 3), make_rational(-2, 3)};
    else
        throw std::invalid_argument("cubic_sporadic_point: index must be 1 or 2");
    return FamilyPoint{p, c, is_on_curve(p, c)};
}

/// Which known family, if any, produces this nontrivial on-curve point with
/// parameters bounded by param_bound?
inline std::optional<Family> attribute_family(const RationalPoint& p, const CurveInstance& c,
                                              const Integer& param_bound = Integer(1000)) {
    if (p.y == 0) return std::nullopt;
    if (c.k == 3 && c.ell == 3) {
        for (int idx : {1, 2})
            if (cubic_sporadic_point(idx).point.x == p.x && cubic_sporadic_point(idx).point.y == p.y)
                return Family::CubicSporadic;
    }
    if (c.ell == 2 && c.k % 2 == 0) {
        unsigned long j = c.k / 2;
        FamilyPoint h = half_integer_point(j);
        if (h.on_curve && h.point.x == p.x && (h.point.y == p.y || h.point.y == -p.y))
            return Family::HalfInteger;
    }
    if (c.k == 2 && c.ell == 2 && p.x != 0) {
        // y/x = b/a in lowest terms pins the parameters up to scaling
        Rational ratio = p.y / p.x;
        Integer a = ratio.get_den(), b = ratio.get_num();
        if (a * a != b * b && abs(a) <= param_bound && abs(b) <= param_bound) {
            FamilyPoint s = square_pair_point(a, b);
            if (s.point.x == p.x && s.point.y == p.y) return Family::SquarePair;
        }
    }
    return std::nullopt;
}

/// All rational points with max(|num x|, den x) <= height, trivial y=0 points
/// included, ordered by (x, y). When gcd(k, ell) = 1 the denominators of
/// nontrivial points must be perfect ell-th powers, so only those are scanned.
inline std::vector<RationalPoint> search_rational_points(const CurveInstance& c,
                                                         const Integer& height,
                                                         unsigned threads = 1) {
    if (height < 1) throw std::invalid_argument("search_rational_points: height >= 1");
    std::vector<Integer> dens;
    if (gcd(Integer(c.k), Integer(c.ell)) == 1) {
        for (Integer e = 1;; ++e) {
            Integer den = pow_ui(e, c.ell);
            if (den > height) break;
            dens.push_back(den);
        }
    } else {
        for (Integer den = 1; den <= height; ++den) dens.push_back(den);
    }

    std::vector<std::vector<RationalPoint>> slots(dens.size());
    parallel_for(dens.size(), threads, [&](std::size_t idx) {
        const Integer& den = dens[idx];
        auto& out = slots[idx];
        for (Integer num = -height; num <= height; ++num) {
            if (gcd(num, den) != 1) continue;
            Rational x = make_rational(num, den);
            Rational prod = evaluate_product(x, c.k);
            if (prod == 0) {
                out.push_back(RationalPoint{x, Rational(0)});
                continue;
            }
            auto yn = is_perfect_ell_power(prod.get_num(), c.ell);
            if (!yn) continue;
            auto yd = is_perfect_ell_power(prod.get_den(), c.ell);
            if (!yd) continue;
            Rational y = make_rational(*yn, *yd);
            if (c.ell % 2 == 0) {
                out.push_back(RationalPoint{x, -y});
                out.push_back(RationalPoint{x, y});
            } else {
                out.push_back(RationalPoint{x, y});
            }
        }
    });

    std::vector<RationalPoint> points;
    for (auto& s : slots)
        points.insert(points.end(), s.begin(), s.end());
    std::sort(points.begin(), points.end(), [](const RationalPoint& l, const RationalPoint& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.y < r.y;
    });
    return points;
}

struct IntegerSolution {
    Integer x;
    unsigned long k;
    unsigned long ell;
    Integer y;
};

/// Exhaustive scan for x(x+1)...(x+k-1) = y^ell over 2 <= k <= k_max,
/// 2 <= ell <= ell_max, with x >= 1 and x+k-1 <= x_max (positive mode) or
/// -x_max <= x <= -1 (negative probe). Ordered by (x, k, ell).
inline std::vector<IntegerSolution> search_integer_solutions(unsigned long k_max,
                                                             const Integer& x_max,
                                                             unsigned long ell_max,
                                                             bool negative_probe = false,
                                                             unsigned threads = 1) {
    if (k_max < 2 || ell_max < 2 || x_max < 2)
        throw std::invalid_argument("search_integer_solutions: bounds >= 2 required");
    std::vector<Integer> starts;
    if (negative_probe) {
        for (Integer x = -x_max; x <= -1; ++x) starts.push_back(x);
    } else {
        for (Integer x = 1; x + Integer(1) <= x_max; ++x) starts.push_back(x);
    }

    std::vector<std::vector<IntegerSolution>> slots(starts.size());
    parallel_for(starts.size(), threads, [&](std::size_t idx) {
        const Integer& x = starts[idx];
        auto& out = slots[idx];
        Integer prod = x;
        for (unsigned long k = 2; k <= k_max; ++k) {
            Integer last = x + Integer(k - 1);
            if (!negative_probe && last > x_max) break;
            prod *= last;
            if (prod == 0) {
                for (unsigned long ell = 2; ell <= ell_max; ++ell)
                    out.push_back(IntegerSolution{x, k, ell, Integer(0)});
                continue;
            }
            if (mpz_perfect_power_p(prod.get_mpz_t()) == 0) continue;
            for (unsigned long ell = 2; ell <= ell_max; ++ell) {
                auto y = is_perfect_ell_power(prod, ell);
                if (y) out.push_back(IntegerSolution{x, k, ell, *y});
            }
        }
    });

    std::vector<IntegerSolution> found;
    for (auto& s : slots)
        found.insert(found.end(), s.begin(), s.end());
    return found;
}

} // namespace ppl
