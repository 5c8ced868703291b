#pragma once

#include <stdexcept>
#include <string>

namespace ppl {

/// Thrown when an operation would exceed a configured resource budget
/// (sieve size, point-counting modulus, factorization work, ...).
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when interval arithmetic cannot decide a comparison at the
/// highest precision the caller is willing to pay for.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Factorization ran out of budget with a composite cofactor left over.
/// Distinct from budget_error so callers can report the residue.
struct incomplete_factorization : std::runtime_error {
    explicit incomplete_factorization(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ppl
