#pragma once

#include <stdexcept>
#include <string>

namespace querymind {

/// Classifies failures so that the C API and CLI can map them to status codes.
enum class ErrorKind {
    InvalidArgument,  ///< a precondition on an input value was violated
    InvalidCode,      ///< a code has the wrong length, a color out of range or a repeat
    Domain,           ///< a numeric parameter is outside the operation's domain
    Capacity,         ///< a search or enumeration would exceed its budget
    Contradiction,    ///< a transcript admits no (or no unique) hidden code
    Protocol,         ///< a strategy produced an illegal move
    Invariant,        ///< an internal consistency check failed during a run
};

const char *to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), _kind(kind)
    {
    }

    ErrorKind kind() const noexcept { return _kind; }

private:
    ErrorKind _kind;
};

inline const char *to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidCode: return "invalid-code";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Contradiction: return "contradiction";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::Invariant: return "invariant";
    }
    return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

} // namespace querymind
