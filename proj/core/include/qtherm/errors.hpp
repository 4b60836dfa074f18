// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qtherm {

// Steady state is not unique (transition graph disconnected or frozen).
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

// An observable is undefined for the given inputs (equal temperatures,
// vanishing fluxes, finite-difference step leaving the domain).
class DegenerateInput : public std::runtime_error {
public:
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

// Root bracket endpoints have the same sign.
class NoBracket : public std::runtime_error {
public:
    explicit NoBracket(const std::string& what) : std::runtime_error(what) {}
};

// The objective is monotone on the bracket; no interior minimum exists.
class NoInteriorMinimum : public std::runtime_error {
public:
    explicit NoInteriorMinimum(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qtherm
