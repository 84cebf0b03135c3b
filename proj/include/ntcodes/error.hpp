#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ntc {

enum class ErrorKind {
    InvalidArgument,
    OutOfRange,
    Unsupported,
    SizeGuard,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Library error carrying a machine-readable kind alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ntc
