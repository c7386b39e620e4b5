#ifndef MODELTH_ERRORS_HPP
#define MODELTH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modelth {

/// Malformed concrete syntax. `offset` is the byte position of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A configured cost guard (size bound, template cap, universe bound) was exceeded.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Contract violation: bad arguments, undeclared symbols, invariant breaches.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace modelth

#endif
