#pragma once

#include <stdexcept>
#include <string>

namespace setshaping {

// Base of the library's error hierarchy. name() is the stable identifier
// tools print on the diagnostic stream; what() carries the details.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* name() const noexcept { return "Error"; }
};

// Precondition violation: empty sequence, out-of-range rank, bad symbol,
// infeasible brute-force scale.
class DomainError : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "DomainError"; }
};

// The type count C(n+ns-1, ns-1) exceeds the configured budget, i.e. the
// exact enumerative index cannot be built at this scale.
class BudgetExceeded : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "BudgetExceeded"; }
};

// A well-formed length-(N+K) sequence that lies outside the shaped image;
// signals corrupted or foreign input to the inverse transform.
class NotInShapedSet : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "NotInShapedSet"; }
};

// A bit string that is not a valid concatenation of codewords.
class DecodeError : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "DecodeError"; }
};

} // namespace setshaping
