#pragma once

#include <stdexcept>
#include <string>

namespace cvp {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite phasor, malformed input document, wrong arity.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Bad neutral configuration or waveform grid.
class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// Three-wire mode was requested but the phase currents do not sum to zero.
class KclViolation : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// A field-level problem in an input document; `field()` is a JSON-path-like locator.
class ParseError : public InvalidInput {
public:
    ParseError(std::string field, const std::string& what)
        : InvalidInput(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Two independent computation routes disagreed, or a reported invariant does not hold.
class IntegrityError : public Error {
public:
    using Error::Error;
};

} // namespace cvp
