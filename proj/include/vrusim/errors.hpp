#pragma once

#include <stdexcept>

namespace vrusim {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text that cannot be read as the expected format (bad JSON, unknown key).
struct ParseError : Error {
    using Error::Error;
};

// Well-formed input whose values violate a constraint; the message names the field.
struct ValidationError : Error {
    using Error::Error;
};

// Argument outside a function's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

// Call-sequence contract violation (misuse guard, indicates a caller bug).
struct ContractError : Error {
    using Error::Error;
};

// Too few samples to form the requested statistic.
struct InsufficientDataError : Error {
    using Error::Error;
};

// Filesystem or serialization failure.
struct IoError : Error {
    using Error::Error;
};

// Failure while running a scenario end to end.
struct SimulationError : Error {
    using Error::Error;
};

}  // namespace vrusim
