#pragma once

#include <stdexcept>
#include <string>

namespace tempfire {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed instance or strategy document. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
    int line;
};

// A structurally invalid graph, instance, or parameter set.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Defence of a vertex that is already burnt or defended.
class InvalidDefence : public Error {
public:
    InvalidDefence(int t, int v)
        : Error("invalid defence of vertex " + std::to_string(v) + " at timestep " +
                std::to_string(t)),
          t(t), v(v) {}
    int t;
    int v;
};

// Reserve strategy spends more than the accumulated budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(int t, int wanted, int available)
        : Error("budget exceeded at timestep " + std::to_string(t) + ": " +
                std::to_string(wanted) + " defences, budget " + std::to_string(available)),
          t(t), wanted(wanted), available(available) {}
    int t;
    int wanted;
    int available;
};

// Instance exceeds a solver's resource guard.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

} // namespace tempfire
