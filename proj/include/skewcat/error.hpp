#pragma once

#include <stdexcept>
#include <string>

namespace skewcat {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document, bad option, unknown name.
class InputError : public Error {
  public:
    using Error::Error;
};

/// Scalars of different kinds or moduli combined.
class FieldMismatch : public Error {
  public:
    using Error::Error;
};

/// An axiom of a group, category, action, grading or functor failed.
/// `witness` names the offending elements.
class AxiomViolation : public Error {
  public:
    AxiomViolation(std::string axiom, std::string witness)
        : Error(axiom + ": " + witness), axiom_(std::move(axiom)), witness_(std::move(witness))
    {
    }
    const std::string& axiom() const noexcept { return axiom_; }
    const std::string& witness() const noexcept { return witness_; }

  private:
    std::string axiom_;
    std::string witness_;
};

class NonFreeAction : public Error {
  public:
    using Error::Error;
};

class NotFullyFaithful : public Error {
  public:
    using Error::Error;
};

/// A basis enumeration exceeded the configured tuple budget.
class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

/// A (co)boundary image escaped a class-filtered sub-basis.
class LeakError : public Error {
  public:
    using Error::Error;
};

/// An identity the engine asserts internally did not hold (d∘d, closure, ...).
class InternalCheckFailed : public Error {
  public:
    using Error::Error;
};

} // namespace skewcat
