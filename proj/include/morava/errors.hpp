#pragma once

#include <stdexcept>
#include <string>

namespace morava {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct VariableMismatch : Error {
    explicit VariableMismatch(const std::string& what) : Error(what) {}
};

struct RingMismatch : Error {
    explicit RingMismatch(const std::string& what) : Error(what) {}
};

// Exact division failed; carries the first obstructing monomial in the
// canonical monomial order.
struct InexactDivision : Error {
    std::string monomial;
    InexactDivision(const std::string& what, std::string mono)
        : Error(what + " (first obstructing monomial: " + mono + ")"), monomial(std::move(mono)) {}
};

// A localization sum failed to clear its denominators within the configured
// truncation. Raising the order is the remedy, never approximation.
struct TruncationInsufficient : Error {
    explicit TruncationInsufficient(const std::string& what)
        : Error(what + "; raise --order and retry") {}
};

}  // namespace morava
