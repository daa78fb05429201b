#pragma once

#include <stdexcept>
#include <string>

namespace pig {

// Hard usage errors (caller bugs, malformed files). Expected negative
// outcomes of algorithms (NotC1P, NoSolution, rejects...) are returned as
// values, not thrown.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

struct NonIndependentNonProbes : std::runtime_error {
    explicit NonIndependentNonProbes(const std::string& what) : std::runtime_error(what) {}
};

struct RefusedTooLarge : std::runtime_error {
    explicit RefusedTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct RefusedParams : std::runtime_error {
    explicit RefusedParams(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pig
