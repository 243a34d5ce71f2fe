#pragma once

#include <stdexcept>
#include <string>

namespace whcryst {

/// Base class for all whcryst errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or string (schema, syntax, non-integer linear part).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

/// Structurally well-formed input that violates a group-theoretic or
/// geometric requirement (Gram form not preserved, closure too large,
/// element order outside {1,2,3,4,6}, non-cocompact line action, ...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error("validation error: " + what) {}
};

/// Dimension outside {2,3} or mismatched operand dimensions.
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error("dimension error: " + what) {}
};

/// A vector argument that must be nonzero was zero.
struct ZeroVectorError : Error {
    explicit ZeroVectorError(const std::string& what) : Error("zero vector: " + what) {}
};

/// A finite group table matches no type in the classification catalog.
struct NotInCatalogError : Error {
    explicit NotInCatalogError(const std::string& what) : Error("not in catalog: " + what) {}
};

/// A computed decomposition contradicts the classification tables.
struct TableViolationError : Error {
    explicit TableViolationError(const std::string& what) : Error("table violation: " + what) {}
};

/// A descriptor outside the classification superset was queried.
struct UnknownDescriptorError : Error {
    explicit UnknownDescriptorError(const std::string& what) : Error("unknown descriptor: " + what) {}
};

/// A subgroup does not act cocompactly on the line in question.
struct NotCocompactError : Error {
    explicit NotCocompactError(const std::string& what) : Error("not cocompact: " + what) {}
};

/// Internal invariant violation; maps to CLI exit code 2.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error("internal invariant violation: " + what) {}
};

} // namespace whcryst
