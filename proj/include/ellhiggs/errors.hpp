#pragma once

#include <stdexcept>
#include <string>

namespace ellhiggs {

/// Input violates a mathematical precondition (bad component index, sum
/// constraint, wrong tuple length, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed serialized input. `offset` is the byte position when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, std::size_t offset = 0)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A finite model or group is larger than the configured enumeration cap.
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ellhiggs
