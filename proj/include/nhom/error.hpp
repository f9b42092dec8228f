#pragma once

#include <stdexcept>
#include <string>

namespace nhom {

/// Raised on contract violations: dimension mismatches, ill-defined
/// morphisms, failed containments, malformed input files.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(what); }

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(what);
}

}  // namespace nhom
