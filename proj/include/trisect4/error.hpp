#pragma once

#include <stdexcept>
#include <string>

namespace trisect4 {

enum class ErrorKind {
    Input,       // malformed or unreadable input
    Parse,       // signature / file grammar violation
    Dimension,   // signature or request of the wrong dimension
    Structure,   // combinatorial structure does not have the required shape
    Site,        // move precondition violated
    Collapse,    // edge collapse refused or degenerate
    Tracing,     // diagram curves failed to close
    Bound,       // a proven bound was violated (implementation bug)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace trisect4
