#pragma once

#include <stdexcept>
#include <string>

namespace vbench2 {

/// Malformed input file (JSON/CSV that does not parse).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally invalid data: unknown dimension, payload/scheme mismatch,
/// duplicate ids, out-of-range constants.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Caller violated an operation precondition.
struct PreconditionError : std::logic_error {
    explicit PreconditionError(const std::string& msg) : std::logic_error(msg) {}
};

/// A backend capability produced output that breaks its type invariants
/// (non-unit embedding, confidence outside [0,1], bad grid cardinality...).
struct ContractViolation : std::runtime_error {
    explicit ContractViolation(const std::string& msg) : std::runtime_error(msg) {}
};

/// Hard failure of a perception/judgment capability. Aborts the run.
struct BackendError : std::runtime_error {
    explicit BackendError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Strict-mode scripted backend got a call it has no entry for.
struct UnscriptedCallError : BackendError {
    explicit UnscriptedCallError(const std::string& msg) : BackendError(msg) {}
};

/// Judge output where neither a yes nor a no token could be found.
struct UnparseableVerdict : std::runtime_error {
    explicit UnparseableVerdict(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace vbench2
