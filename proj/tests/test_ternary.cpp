#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ppl/ternary.hpp"

#include "synthetic.hpp"

using ppl::Integer;
using ppl::ReductionKind;
using ppl::TernaryTriple;

namespace {

void require_triple(const TernaryTriple& t, long a, long b, long c, long u, long v, long w) {
    REQUIRE(t.a == a);
    REQUIRE(t.b == b);
    REQUIRE(t.c == c);
    REQUIRE(t.u == u);
    REQUIRE(t.v == v);
    REQUIRE(t.w == w);
}

} // namespace

TEST_CASE("decompose_progression splits each term into core and root") {
    auto dec = ppl::decompose_progression(Integer(243), Integer(1), 3, 5);
    REQUIRE(dec.terms.size() == 3);
    REQUIRE(dec.terms[0] == std::make_pair(Integer(1), Integer(3)));   // 243 = 3^5
    REQUIRE(dec.terms[1] == std::make_pair(Integer(244), Integer(1)));
    REQUIRE(dec.terms[2] == std::make_pair(Integer(245), Integer(1)));
    REQUIRE(dec.modulus() == 1);
    REQUIRE(dec.term_value(2) == 245);

    REQUIRE_THROWS_AS(ppl::decompose_progression(Integer(5), Integer(1), 1, 5),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(ppl::decompose_progression(Integer(5), Integer(1), 3, 4),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(ppl::decompose_progression(Integer(6), Integer(3), 3, 5),
                      std::invalid_argument);
    // n = -1, d = 1 puts a zero at index 1
    REQUIRE_THROWS_AS(ppl::decompose_progression(Integer(-1), Integer(1), 3, 5),
                      std::invalid_argument);
}

TEST_CASE("reduce_at_p pinned reductions") {
    // single divisible factor at index 0
    auto [t1, c1] = ppl::reduce_at_p(Integer(243), Integer(1), 3, 5, 3);
    REQUIRE(c1.kind == ReductionKind::SingleFactor);
    REQUIRE(c1.index == 0);
    require_triple(t1, 1, -244, 1, 3, 1, 1);

    // p divides the modulus
    auto [t2, c2] = ppl::reduce_at_p(Integer(1), Integer(2), 2, 3, 2);
    REQUIRE(c2.kind == ReductionKind::PDividesModulus);
    require_triple(t2, 1, 1, -9, 2, 1, 1);

    // two divisible factors an arithmetic step apart
    auto [t3, c3] = ppl::reduce_at_p(Integer(14), Integer(1), 3, 5, 2);
    REQUIRE(c3.kind == ReductionKind::DoubleFactor);
    REQUIRE(c3.index == 0);
    require_triple(t3, 7, -225, 1, 2, 1, 1);

    // last-index single factor pairs with the left neighbor instead
    auto [t4, c4] = ppl::reduce_at_p(Integer(241), Integer(1), 3, 5, 3);
    REQUIRE(c4.kind == ReductionKind::SingleFactor);
    REQUIRE(c4.index == 2);
    require_triple(t4, 1, -242, -1, 3, 1, 1);
    auto tm = t4.terms();
    REQUIRE(tm[0] + tm[1] + tm[2] == 0);
}

TEST_CASE("reduce_at_p rejects out-of-scope input") {
    // ell not prime / not above k
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(7), Integer(1), 3, 9, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(7), Integer(1), 3, 3, 2), std::invalid_argument);
    // p not prime / outside (k/2, k]
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(7), Integer(1), 4, 5, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(7), Integer(1), 3, 5, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(7), Integer(1), 6, 7, 2), std::invalid_argument);
    // shared factor between n and d
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(6), Integer(3), 3, 5, 2), std::invalid_argument);
    // local exponent hypothesis violated: ord_3(1*2*3) = 1
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(1), Integer(1), 3, 5, 3), std::invalid_argument);
    // and in the paired case: ord_2(2*3*4) = 3
    REQUIRE_THROWS_AS(ppl::reduce_at_p(Integer(2), Integer(1), 3, 5, 2), std::invalid_argument);
}

TEST_CASE("pairing identity vanishes on randomized input") {
    std::mt19937_64 rng(0x6964656eULL);
    for (int trial = 0; trial < 10000; ++trial) {
        Integer n = synth::random_integer(rng, 128);
        Integer d = synth::random_integer(rng, 128);
        if (d == 0) d = 1;
        Integer i = synth::random_integer(rng, 64, false);
        Integer p = synth::random_integer(rng, 64, false);
        unsigned long ell = 2 + rng() % 9;
        REQUIRE(ppl::check_identity(n, d, ell, i, p) == 0);
    }
}

TEST_CASE("gcd of two progression terms divides the index gap") {
    std::mt19937_64 rng(0x67636470ULL);
    for (int trial = 0; trial < 300; ++trial) {
        Integer n = synth::random_integer(rng, 48);
        Integer d = abs(synth::random_integer(rng, 16)) + 1;
        Integer g = ppl::gcd(n, d);
        if (g != 1) n += 1;
        if (ppl::gcd(n, d) != 1) continue;
        unsigned long k = 4 + rng() % 8;
        bool zero = false;
        Integer modulus = ppl::pow_ui(d, 3);
        for (unsigned long i = 0; i < k; ++i)
            if (n + Integer(i) * modulus == 0) zero = true;
        if (zero) continue;
        auto dec = ppl::decompose_progression(n, d, k, 3);
        for (unsigned long i = 0; i < k; ++i)
            for (unsigned long j = i + 1; j < k; ++j)
                REQUIRE(ppl::gcd_pair_bound_check(dec, i, j));
    }
    auto dec = ppl::decompose_progression(Integer(243), Integer(1), 3, 5);
    REQUIRE_THROWS_AS(ppl::gcd_pair_bound_check(dec, 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(ppl::gcd_pair_bound_check(dec, 0, 3), std::invalid_argument);
}

TEST_CASE("validate_triple rejects malformed triples") {
    REQUIRE_THROWS_AS(
        ppl::validate_triple(TernaryTriple{Integer(0), Integer(1), Integer(-1), Integer(1),
                                           Integer(1), Integer(1), 5}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        ppl::validate_triple(TernaryTriple{Integer(1), Integer(1), Integer(1), Integer(1),
                                           Integer(1), Integer(1), 5}),
        std::invalid_argument);
    // 32 = 2^5 is not 5th-power-free
    REQUIRE_THROWS_AS(
        ppl::validate_triple(TernaryTriple{Integer(32), Integer(-31), Integer(-1), Integer(1),
                                           Integer(1), Integer(1), 5}),
        std::invalid_argument);
    REQUIRE_NOTHROW(ppl::validate_triple(
        TernaryTriple{Integer(1), Integer(-31), Integer(-1), Integer(2), Integer(1), Integer(1), 5}));
}

TEST_CASE("synthetic corpus covers all branches and satisfies the reduction contract") {
    auto corpus = synth::corpus();
    REQUIRE(corpus.size() >= 300);

    unsigned long by_kind[3] = {0, 0, 0};
    for (const auto& inst : corpus) {
        INFO("n=" << inst.n.get_str() << " d=" << inst.d.get_str() << " k=" << inst.k
                  << " ell=" << inst.ell << " p=" << inst.p);
        // the generator's label must agree with an independent reading of the
        // divisibility pattern
        auto [kind, index] = synth::reclassify(inst);
        REQUIRE(kind == inst.kind);
        REQUIRE(index == inst.index);
        ++by_kind[static_cast<int>(kind)];

        auto [triple, rcase] = ppl::reduce_at_p(inst.n, inst.d, inst.k, inst.ell, inst.p);
        REQUIRE(rcase.kind == inst.kind);
        REQUIRE(rcase.index == inst.index);
        REQUIRE(triple.ell == inst.ell);

        auto tm = triple.terms();
        REQUIRE(tm[0] + tm[1] + tm[2] == 0);

        auto report = ppl::verify_conditions(triple, inst.k, inst.p);
        REQUIRE(report.coefficients_power_free.holds);
        REQUIRE(report.coprime_to_p.holds);
        REQUIRE(report.single_p_divisor.holds);

        TernaryTriple norm = ppl::normalize_triple(triple);
        auto nt = norm.terms();
        REQUIRE(nt[0] + nt[1] + nt[2] == 0);
        REQUIRE((nt[0] % 4 + 4) % 4 == 3);
        REQUIRE(nt[1] % 2 == 0);
        REQUIRE(ppl::gcd(nt[0], nt[1]) == 1);
        REQUIRE(ppl::gcd(nt[0], nt[2]) == 1);
        REQUIRE(ppl::gcd(nt[1], nt[2]) == 1);
        REQUIRE_NOTHROW(ppl::validate_triple(norm));
    }
    // every branch is represented
    REQUIRE(by_kind[0] >= 30);
    REQUIRE(by_kind[1] >= 30);
    REQUIRE(by_kind[2] >= 30);
}

TEST_CASE("normalize_triple pinned examples") {
    TernaryTriple raw{Integer(15), Integer(10), Integer(-25),
                      Integer(1), Integer(1), Integer(1), 5};
    TernaryTriple norm = ppl::normalize_triple(raw);
    require_triple(norm, 3, 2, -5, 1, 1, 1);

    TernaryTriple fixed{Integer(3), Integer(-4), Integer(1),
                        Integer(1), Integer(1), Integer(1), 5};
    TernaryTriple same = ppl::normalize_triple(fixed);
    require_triple(same, 3, -4, 1, 1, 1, 1);

    // an ell-th power re-appearing in a term is pushed back into the root
    TernaryTriple carry{Integer(1), Integer(-31), Integer(-1),
                        Integer(2), Integer(1), Integer(1), 5};
    TernaryTriple out = ppl::normalize_triple(carry);
    auto tm = out.terms();
    REQUIRE(tm[0] + tm[1] + tm[2] == 0);
    for (const Integer* coef : {&out.a, &out.b, &out.c})
        REQUIRE(ppl::power_free_part(*coef, 5).root == 1);
}

TEST_CASE("normalize_triple postconditions on random zero-sum triples") {
    std::mt19937_64 rng(0x6e6f726dULL);
    const unsigned long ells[] = {3, 5, 7};
    int done = 0;
    while (done < 10000) {
        unsigned long ell = ells[rng() % 3];
        Integer t1 = synth::random_integer(rng, 20);
        Integer t2 = synth::random_integer(rng, 20);
        if (rng() % 8 == 0) t1 *= ppl::pow_ui(Integer(2), ell);
        if (rng() % 8 == 0) t2 *= ppl::pow_ui(Integer(3), ell);
        Integer t3 = -t1 - t2;
        if (t1 == 0 || t2 == 0 || t3 == 0) continue;
        auto p1 = ppl::power_free_part(t1, ell);
        auto p2 = ppl::power_free_part(t2, ell);
        auto p3 = ppl::power_free_part(t3, ell);
        TernaryTriple raw{p1.core, p2.core, p3.core, p1.root, p2.root, p3.root, ell};
        TernaryTriple norm = ppl::normalize_triple(raw);
        auto nt = norm.terms();
        REQUIRE(nt[0] + nt[1] + nt[2] == 0);
        REQUIRE((nt[0] % 4 + 4) % 4 == 3);
        REQUIRE(nt[1] % 2 == 0);
        REQUIRE(ppl::gcd(nt[0], nt[1]) == 1);
        REQUIRE(ppl::gcd(nt[0], nt[2]) == 1);
        REQUIRE(ppl::gcd(nt[1], nt[2]) == 1);
        for (const Integer* coef : {&norm.a, &norm.b, &norm.c})
            REQUIRE(ppl::power_free_part(*coef, ell).root == 1);
        ++done;
    }
}

TEST_CASE("verify_conditions pinned witnesses") {
    // abc = -244 carries the prime 61 > k = 3
    TernaryTriple t{Integer(1), Integer(-244), Integer(1), Integer(3), Integer(1), Integer(1), 5};
    auto r = ppl::verify_conditions(t, 3, 3);
    REQUIRE(r.coefficients_power_free.holds);
    REQUIRE_FALSE(r.support_bounded.holds);
    REQUIRE(r.support_bounded.witness == Integer(61));
    REQUIRE(r.coprime_to_p.holds);
    REQUIRE(r.single_p_divisor.holds);
    REQUIRE_FALSE(r.all());

    // abc = -1575 carries the prime 5 > k = 3
    TernaryTriple t2{Integer(7), Integer(-225), Integer(1), Integer(2), Integer(1), Integer(1), 5};
    auto r2 = ppl::verify_conditions(t2, 3, 2);
    REQUIRE_FALSE(r2.support_bounded.holds);
    REQUIRE(r2.support_bounded.witness == Integer(5));
    REQUIRE(r2.coprime_to_p.holds);
    REQUIRE(r2.single_p_divisor.holds);

    // p | abc and p divides none of u, v, w
    TernaryTriple bad{Integer(1), Integer(1), Integer(-2), Integer(1), Integer(1), Integer(1), 3};
    auto r3 = ppl::verify_conditions(bad, 2, 2);
    REQUIRE_FALSE(r3.coprime_to_p.holds);
    REQUIRE(r3.coprime_to_p.witness == Integer(2));
    REQUIRE_FALSE(r3.single_p_divisor.holds);
    REQUIRE(r3.single_p_divisor.witness == Integer(0));
    REQUIRE(r3.support_bounded.holds);
    REQUIRE_FALSE(r3.all());
}
