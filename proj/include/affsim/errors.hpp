#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace affsim {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix or vector dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Operation requested over a field where it is not defined.
class UnsupportedFieldError : public Error {
public:
    using Error::Error;
};

/// A support specification that breaks one or more invariants.
/// Carries every violation, not just the first one found.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid support spec:";
        for (const auto& s : v) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

/// Malformed textual input; position is a 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Elements built over different support specs were combined.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Component (n, i) not present in the spec.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Argument outside the operation's domain, e.g. a dimension not in the support.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A witness step was asked for before the components it depends on were built.
class DependencyError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The computation contradicts a statement that is a theorem for valid input.
/// Always an implementation bug.
class TheoremViolation : public Error {
public:
    TheoremViolation(const std::string& stage, const std::string& what)
        : Error("theorem violation at " + stage + ": " + what), stage_(stage) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// The prime field cannot host the requested lambda assignment.
class FieldTooSmallError : public Error {
public:
    using Error::Error;
};

/// Bad run configuration (flags, files, field choice).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace affsim
