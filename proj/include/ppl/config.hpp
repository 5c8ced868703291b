#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace ppl {

inline constexpr const char* library_version = "0.1.0";

struct RuntimeConfig {
    unsigned precision_bits = 256;        // PPL_PRECISION_BITS
    std::uint64_t sieve_limit = 100000000; // PPL_SIEVE_LIMIT
};

/// Process-wide defaults, read from the environment once.
inline const RuntimeConfig& runtime_config() {
    static const RuntimeConfig cfg = [] {
        RuntimeConfig c;
        if (const char* s = std::getenv("PPL_PRECISION_BITS")) {
            long v = std::atol(s);
            if (v >= 16 && v <= 1 << 20) c.precision_bits = static_cast<unsigned>(v);
        }
        if (const char* s = std::getenv("PPL_SIEVE_LIMIT")) {
            long long v = std::atoll(s);
            if (v >= 2) c.sieve_limit = static_cast<std::uint64_t>(v);
        }
        return c;
    }();
    return cfg;
}

inline unsigned default_precision() { return runtime_config().precision_bits; }
inline std::uint64_t sieve_budget() { return runtime_config().sieve_limit; }

} // namespace ppl
