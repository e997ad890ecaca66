#pragma once

#include <stdexcept>
#include <string>

namespace octo {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

// Mixed backends, mixed characteristics, or levels with no common embedding.
struct IncompatibleTower : Error {
    explicit IncompatibleTower(const std::string& what) : Error(what) {}
};

// A root/extension search ran past the configured degree or size bound.
struct ClosureBoundExceeded : Error {
    explicit ClosureBoundExceeded(const std::string& what) : Error(what) {}
};

struct NoAdmissibleRoot : Error {
    explicit NoAdmissibleRoot(const std::string& what) : Error(what) {}
};

struct CapExceeded : Error {
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

struct SingularElement : Error {
    SingularElement() : Error("element has zero norm") {}
};

struct NotARepresentative : Error {
    explicit NotARepresentative(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace octo
