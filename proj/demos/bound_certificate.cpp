// prints the certified exponent bound for one window length, then sweeps a
// short range to show where the inequality is tightest.

#include <iostream>

#include "ppl/bound.hpp"

using namespace ppl;

int main(int argc, char** argv) try {
    unsigned long k = argc > 1 ? std::stoul(argv[1]) : 35;

    PipelineConfig cfg;
    cfg.k_min = cfg.k_max = k;
    ExponentBoundReport r = exponent_bound(k, cfg);

    std::cout << "k = " << r.k << "\n";
    std::cout << "candidate primes in (k/2, k]: ";
    for (std::size_t i = 0; i < r.candidates.size(); ++i)
        std::cout << (i ? ", " : "") << r.candidates[i];
    std::cout << "\nchosen p = " << r.p_chosen << "\n\n";

    if (r.divisor_bound) {
        std::cout << "level divisor bound D = " << *r.divisor_bound << "\n";
        std::cout << "newform degree bound (D+1)/12 = " << r.degree_bound->lower() << "\n";
        std::cout << "exponent bound (D+1)/6 log(sqrt p + 1) in ["
                  << decimal_string(r.log_ell_bound->lower(), 12) << ", "
                  << decimal_string(r.log_ell_bound->upper(), 12) << "]\n";
        std::cout << "threshold 3^k = " << *r.threshold_exact << "\n";
        std::cout << "bound below threshold: " << to_string(*r.value_route) << "\n\n";
    }
    std::cout << "log-form comparison: log bound in ["
              << decimal_string(r.log_log_ell_bound.lower(), 12) << ", "
              << decimal_string(r.log_log_ell_bound.upper(), 12) << "]  vs  k log 3 in ["
              << decimal_string(r.threshold_log.lower(), 12) << ", "
              << decimal_string(r.threshold_log.upper(), 12) << "]\n";
    std::cout << "verdict: " << to_string(r.verdict) << "\n\n";

    unsigned long sweep_max = k + 15;
    PipelineConfig range;
    range.k_min = k;
    range.k_max = sweep_max;
    VerifyRangeResult res = verify_theorem_range(range);
    std::cout << "sweep " << k << ".." << sweep_max << ": " << to_string(res.overall);
    if (res.max_ratio_k)
        std::cout << "  (largest bound/3^k ratio " << decimal_string(res.max_ratio, 6)
                  << " at k = " << res.max_ratio_k << ")";
    std::cout << "\n";
    return 0;
} catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
}
