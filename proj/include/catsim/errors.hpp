#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A state's squared norm fell below the degeneracy threshold where
// normalization (or fidelity) is meaningless.
class ZeroNormError : public Error {
public:
    explicit ZeroNormError(const std::string& what) : Error(what) {}
};

// Mode index out of range, duplicated, or otherwise unusable.
class ModeIndexError : public Error {
public:
    explicit ModeIndexError(const std::string& what) : Error(what) {}
};

// A 2x2 label map failed the unitarity check.
class NonUnitaryError : public Error {
public:
    explicit NonUnitaryError(const std::string& what) : Error(what) {}
};

// Truncated photon-number sums leaked more probability than allowed.
class TailMassError : public Error {
public:
    explicit TailMassError(const std::string& what) : Error(what) {}
};

// A dense Fock vector would exceed the configured memory budget.
class MemoryBudgetError : public Error {
public:
    explicit MemoryBudgetError(const std::string& what) : Error(what) {}
};

// Invalid protocol or generation parameters (bad M/Q/N/L combinations).
class InvalidConfigError : public Error {
public:
    explicit InvalidConfigError(const std::string& what) : Error(what) {}
};

// A state expected to factor over a mode bipartition does not.
class NonProductError : public Error {
public:
    explicit NonProductError(const std::string& what) : Error(what) {}
};

}  // namespace catsim
