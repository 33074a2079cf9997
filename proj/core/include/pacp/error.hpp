#pragma once

#include <stdexcept>
#include <string>

namespace pacp {

enum class ErrorKind {
    invalid_argument,  // bad parameters or inconsistent inputs
    io,                // file missing, unreadable or malformed
    numeric,           // a computation failed to converge or left its domain
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
    throw Error(ErrorKind::invalid_argument, what);
}
[[noreturn]] inline void throw_io(const std::string& what) { throw Error(ErrorKind::io, what); }
[[noreturn]] inline void throw_numeric(const std::string& what) {
    throw Error(ErrorKind::numeric, what);
}

}  // namespace pacp
