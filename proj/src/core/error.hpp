#pragma once

#include <stdexcept>
#include <string>

namespace midsub {

enum class ErrorKind {
    InvalidParameter,  // bad word text, bad valence, bad B parameters, ...
    InvalidWord,       // word violates a+v>=1 or v+r>=1
    NonManifold,       // mesh connectivity violates manifoldness
    State,             // operation called before its prerequisite state exists
    Resource,          // net too small after max growth, iteration cap, ...
    Io,                // file errors
    Internal,          // broken internal invariant
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace midsub
