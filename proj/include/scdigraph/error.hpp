#pragma once

#include <stdexcept>
#include <string>

namespace scd {

// Parameters outside an operation's mathematical domain (c <= k, m <= n, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A sampler or enumerator refused because its work ceiling would be exceeded.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external input (edge-list files).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw domain_error(what);
}

}  // namespace detail
}  // namespace scd
