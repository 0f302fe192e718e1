#pragma once

#include <stdexcept>
#include <string>

namespace lorext {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroOffDiagonal : Error {
    explicit ZeroOffDiagonal(const std::string& w) : Error(w) {}
};
struct AsymmetricDistance : Error {
    explicit AsymmetricDistance(const std::string& w) : Error(w) {}
};
struct InvalidExponent : Error {
    explicit InvalidExponent(const std::string& w) : Error(w) {}
};
struct InvalidPhi : Error {
    explicit InvalidPhi(const std::string& w) : Error(w) {}
};
struct ExponentOutOfRange : Error {
    explicit ExponentOutOfRange(const std::string& w) : Error(w) {}
};
struct SplitMismatch : Error {
    explicit SplitMismatch(const std::string& w) : Error(w) {}
};
struct AlphaOutOfRange : Error {
    explicit AlphaOutOfRange(const std::string& w) : Error(w) {}
};
struct NotAGrid : Error {
    explicit NotAGrid(const std::string& w) : Error(w) {}
};
struct BudgetZero : Error {
    explicit BudgetZero(const std::string& w) : Error(w) {}
};
struct NupTooSmall : Error {
    explicit NupTooSmall(const std::string& w) : Error(w) {}
};
struct ScalingMismatch : Error {
    explicit ScalingMismatch(const std::string& w) : Error(w) {}
};
struct Q0OutOfRange : Error {
    explicit Q0OutOfRange(const std::string& w) : Error(w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(w) {}
};
struct ClassViolation : Error {
    explicit ClassViolation(const std::string& w) : Error(w) {}
};
struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& w) : Error(w) {}
};
struct InputError : Error {
    explicit InputError(const std::string& w) : Error(w) {}
};

}  // namespace lorext
