#include "powergraph/errors.hpp"

namespace powergraph {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Size: return "size";
    case ErrorKind::Bandwidth: return "bandwidth";
    case ErrorKind::Encoding: return "encoding";
    case ErrorKind::Nontermination: return "nontermination";
    case ErrorKind::Connectivity: return "connectivity";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Generation: return "generation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Config: return "config";
    case ErrorKind::Topology: return "topology";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace powergraph
