#pragma once

#include <stdexcept>
#include <string>

namespace preftop {

// Failure categories, stable across the library so callers (and the CLI exit
// path) can react uniformly.
enum class errc {
    domain,        // argument outside the operation's domain
    unsupported,   // meaningful but not implemented for these parameters
    resource,      // configured limit exceeded
    construction,  // inconsistent combinatorial input
    precondition,  // structural precondition violated (e.g. not a surface)
    semantic,      // request is well-formed but meaningless for the object
    lemma,         // internal mathematical cross-check failed
};

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::domain: return "domain";
        case errc::unsupported: return "unsupported";
        case errc::resource: return "resource";
        case errc::construction: return "construction";
        case errc::precondition: return "precondition";
        case errc::semantic: return "semantic";
        case errc::lemma: return "lemma";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace preftop
