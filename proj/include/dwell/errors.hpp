#pragma once

#include <stdexcept>
#include <string>

namespace dwell {

// Argument outside the mathematical domain of a function (E <= 0, gamma pole, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Model or run parameters violate an invariant.
class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Root scanning ended with fewer brackets than the caller required.
class CountMismatch : public std::runtime_error {
public:
    CountMismatch(const std::string& what, int found, int expected)
        : std::runtime_error(what), found_(found), expected_(expected) {}
    int found() const noexcept { return found_; }
    int expected() const noexcept { return expected_; }

private:
    int found_;
    int expected_;
};

// Any failure of an iterative solve (window cap exceeded, sweep point failure, ...).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dwell
