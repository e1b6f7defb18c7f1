#ifndef IKEDA_ERROR_HPP
#define IKEDA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ikeda {

/// Bad caller input: invalid parameters, unsupported weight, malformed text.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical check failed on data supplied from outside (e.g. an
/// eigenform table violating Deligne's bound).
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::size_t index)
        : std::runtime_error(what), index_(index) {}

    /// First offending coefficient index (or prime).
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// An identity that must hold by construction did not: an implementation defect.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ikeda

#endif  // IKEDA_ERROR_HPP
