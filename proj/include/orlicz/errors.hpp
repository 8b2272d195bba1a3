#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

// Bad arguments: wrong dimension, non-finite input, malformed specs.
class InputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A precondition on a numeric argument failed (e.g. p < beta).
class DomainError : public InputError
{
public:
    using InputError::InputError;
};

class UnsupportedSpecError : public InputError
{
public:
    using InputError::InputError;
};

// A numerical procedure failed to bracket or converge.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw DomainError(what);
}

} // namespace detail
} // namespace orlicz
