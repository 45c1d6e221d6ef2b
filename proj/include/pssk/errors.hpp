#pragma once

#include <stdexcept>
#include <string>

namespace pssk {

// Base class for all library errors. CLI maps these to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// diagram parsing / construction
struct MalformedLine : Error {
    explicit MalformedLine(const std::string& msg) : Error(msg) {}
};
struct DeathBeforeBirth : Error {
    explicit DeathBeforeBirth(const std::string& msg) : Error(msg) {}
};
struct NonFinite : Error {
    explicit NonFinite(const std::string& msg) : Error(msg) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// filtration construction / persistence
struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg) : Error(msg) {}
};
struct BadIndex : Error {
    explicit BadIndex(const std::string& msg) : Error(msg) {}
};
struct DegenerateTriangle : Error {
    explicit DegenerateTriangle(const std::string& msg) : Error(msg) {}
};
struct InvalidComplex : Error {
    explicit InvalidComplex(const std::string& msg) : Error(msg) {}
};

// kernels
struct NonPositiveScale : Error {
    explicit NonPositiveScale(const std::string& msg) : Error(msg) {}
};
struct OutsideDomain : Error {
    explicit OutsideDomain(const std::string& msg) : Error(msg) {}
};
struct BadGrid : Error {
    explicit BadGrid(const std::string& msg) : Error(msg) {}
};

// matching distances
struct BadExponent : Error {
    explicit BadExponent(const std::string& msg) : Error(msg) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& msg) : Error(msg) {}
};

// eigen / gram / learning
struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& msg) : Error(msg) {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};
struct SingleClass : Error {
    explicit SingleClass(const std::string& msg) : Error(msg) {}
};
struct TooFewItems : Error {
    explicit TooFewItems(const std::string& msg) : Error(msg) {}
};
struct BadMatrix : Error {
    explicit BadMatrix(const std::string& msg) : Error(msg) {}
};
struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& msg) : Error(msg) {}
};

}  // namespace pssk
