#pragma once

#include <stdexcept>
#include <string>

namespace edcdss {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A required string field (case id, narrative, prompt) was blank.
class EmptyFieldError : public Error {
public:
    using Error::Error;
};

/// A numeric value fell outside its allowed range (KTAS level, vital sign, score).
class RangeError : public Error {
public:
    using Error::Error;
};

/// A stage context contained a role that is not an upstream stage.
class ContextViolationError : public Error {
public:
    using Error::Error;
};

/// Transport/HTTP failure or malformed completion-provider response.
class BackendError : public Error {
public:
    using Error::Error;
};

/// Scripted backend lookup key not present in the fixture.
class FixtureMissError : public Error {
public:
    using Error::Error;
};

/// Lookup (e.g. RxNorm name resolution) produced no candidate.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// A case file line failed schema validation; carries the 1-based line number.
class SchemaError : public Error {
public:
    SchemaError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Two cases in one dataset shared a case_id.
class DuplicateIdError : public Error {
public:
    using Error::Error;
};

/// A score distribution had no entries, so no mean exists.
class EmptyDistributionError : public Error {
public:
    using Error::Error;
};

/// Two evaluation reports were not computed over the same case set.
class CaseSetMismatchError : public Error {
public:
    using Error::Error;
};

} // namespace edcdss
