#ifndef TSPKIT_ERRORS_HPP
#define TSPKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tspkit {

// Base for all library errors. The CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (bad record, self-loop, negative cost, ...).
struct IngestionError : Error {
    using Error::Error;
};

// The requested object does not exist (disconnected graph, odd |T|, ...).
struct InfeasibleError : Error {
    using Error::Error;
};

// Instance too large for an exhaustive routine.
struct CapacityError : Error {
    using Error::Error;
};

// A posterior correctness check failed; carries diagnostics in the message.
struct CheckFailure : Error {
    using Error::Error;
};

}  // namespace tspkit

#endif
