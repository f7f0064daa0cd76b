// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace qlattice {

enum class ErrorKind {
  input,        // malformed ids, parameters or spaces
  resource,     // an enumeration cap was exceeded
  lift,         // image of a morphism is not admissible
  morphism,     // a map fails to preserve meets
  unsupported,  // precondition of a search basis does not hold
  incoherent,   // descriptions disagree on an overlap
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when an enumeration hits its cap. `reached` is the partial count.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t reached)
      : Error(ErrorKind::resource, what + " (cap exceeded after " + std::to_string(reached) + ")"),
        reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

}  // namespace qlattice
