#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace powergraph {

enum class ErrorKind {
  Input,
  Size,
  Bandwidth,
  Encoding,
  Nontermination,
  Connectivity,
  Contract,
  Domain,
  Generation,
  Parse,
  Config,
  Topology,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library carries a kind so callers (and the
// CLI's one-line error record) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace powergraph
