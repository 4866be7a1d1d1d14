#ifndef EDISIM_ERRORS_HPP
#define EDISIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace edisim {

// Malformed input data: bad JSON, bad bracketing, violated invariants.
// Messages carry the location (file, line number or byte offset) when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Resource problems: missing files, manifest hash mismatches, incompatible members.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Simplification state whose own score is identically zero through the
// cosine filter; no candidate can ever be accepted from it.
class DegenerateStateError : public std::runtime_error {
public:
    explicit DegenerateStateError(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration: unknown keys, values out of range, unparseable flags.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace edisim

#endif
