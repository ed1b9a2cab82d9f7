#pragma once

#include <stdexcept>
#include <string>

namespace mtkit {

// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAUnit : Error {
  explicit NotAUnit(const std::string& msg) : Error(msg) {}
};

struct ContextMismatch : Error {
  explicit ContextMismatch(const std::string& msg) : Error(msg) {}
};

struct GroupMismatch : Error {
  explicit GroupMismatch(const std::string& msg) : Error(msg) {}
};

struct NotSurjective : Error {
  explicit NotSurjective(const std::string& msg) : Error(msg) {}
};

struct OrderNotCoprime : Error {
  explicit OrderNotCoprime(const std::string& msg) : Error(msg) {}
};

struct CharacterValueNotInBaseField : Error {
  explicit CharacterValueNotInBaseField(const std::string& msg) : Error(msg) {}
};

struct BadDelta : Error {
  explicit BadDelta(const std::string& msg) : Error(msg) {}
};

struct MissingEntry : Error {
  explicit MissingEntry(const std::string& msg) : Error(msg) {}
};

struct InfeasibleConstraints : Error {
  explicit InfeasibleConstraints(const std::string& msg) : Error(msg) {}
};

struct IncompleteTable : Error {
  explicit IncompleteTable(const std::string& msg) : Error(msg) {}
};

struct UnsupportedQuotient : Error {
  explicit UnsupportedQuotient(const std::string& msg) : Error(msg) {}
};

struct RingMismatch : Error {
  explicit RingMismatch(const std::string& msg) : Error(msg) {}
};

struct IndeterminateWhenBothZero : Error {
  explicit IndeterminateWhenBothZero(const std::string& msg) : Error(msg) {}
};

// Kept for API completeness: elimination with global min-valuation pivoting
// returns exact residues, so determinant code reports valuation >= N via the
// sentinel instead of throwing this.
struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace mtkit
