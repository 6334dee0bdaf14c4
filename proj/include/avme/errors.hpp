#pragma once

#include <stdexcept>
#include <string>

namespace avme {

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionOverflow : std::runtime_error {
    explicit DimensionOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct GenerationFailure : std::runtime_error {
    explicit GenerationFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace avme
