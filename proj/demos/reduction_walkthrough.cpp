// walks one progression through the whole pipeline: decompose the terms,
// reduce at an auxiliary prime, normalize, check the local conditions and
// inspect the attached frey curve.

#include <iostream>

#include "ppl/frey.hpp"
#include "ppl/ternary.hpp"

using namespace ppl;

int main() {
    Integer n = 243, d = 1;
    unsigned long k = 3, ell = 5, p = 3;

    std::cout << "progression: " << n << ", " << n + 1 << ", " << n + 2
              << "   (k = " << k << ", exponent " << ell << ")\n\n";

    ApDecomposition dec = decompose_progression(n, d, k, ell);
    std::cout << "each term split as coefficient * root^" << ell << ":\n";
    for (unsigned long i = 0; i < k; ++i) {
        const auto& [ai, zi] = dec.terms[i];
        std::cout << "  " << dec.term_value(i) << " = (" << ai << ") * " << zi << "^" << ell
                  << "\n";
    }

    auto [triple, rcase] = reduce_at_p(n, d, k, ell, p);
    std::cout << "\nreduction at p = " << p << " (" << to_string(rcase.kind) << " at index "
              << rcase.index << "):\n";
    std::cout << "  " << triple.a << " * " << triple.u << "^" << ell << " + (" << triple.b
              << ") * " << triple.v << "^" << ell << " + (" << triple.c << ") * " << triple.w
              << "^" << ell << " = 0\n";

    TernaryTriple norm = normalize_triple(triple);
    std::cout << "normalized terms: " << norm.terms()[0] << " + (" << norm.terms()[1]
              << ") + (" << norm.terms()[2] << ") = 0\n\n";

    ConditionReport rep = verify_conditions(triple, k, p);
    auto show = [](const char* name, const ConditionStatus& s) {
        std::cout << "  " << name << ": " << (s.holds ? "holds" : "fails");
        if (s.witness) std::cout << "  (witness " << *s.witness << ")";
        std::cout << "\n";
    };
    std::cout << "local conditions:\n";
    show("coefficients power-free", rep.coefficients_power_free);
    show("support bounded by k", rep.support_bounded);
    show("coefficients coprime to p", rep.coprime_to_p);
    show("one unknown divisible by p", rep.single_p_divisor);

    FreyCurve e = frey_curve(norm);
    std::cout << "\nfrey curve: Y^2 = X (X - (" << e.A << "))(X + (" << e.B << "))\n";
    std::cout << "discriminant: " << discriminant(e) << "\n";
    for (std::uint64_t q : {3ull, 5ull, 61ull}) {
        ReductionType rt = reduction_type(e, q);
        std::cout << "  reduction at " << q << ": " << to_string(rt);
        if (rt == ReductionType::Good) {
            TraceResult tr = count_points(e, q);
            std::cout << "  (" << tr.point_count << " points, a_q = " << tr.a_q << ")";
        }
        std::cout << "\n";
    }
    return 0;
}
