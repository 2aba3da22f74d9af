#include "planarsucc/errors.hpp"

namespace planarsucc {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DeletedVertex: return "DeletedVertex";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OutOfUniverse: return "OutOfUniverse";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NonplanarResult: return "NonplanarResult";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EdgeExists: return "EdgeExists";
    case ErrorKind::SameVertex: return "SameVertex";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotBoundary: return "NotBoundary";
    case ErrorKind::NotManaged: return "NotManaged";
    case ErrorKind::HashingRequired: return "HashingRequired";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Counters& counters() {
  static Counters c;
  return c;
}

}  // namespace planarsucc
