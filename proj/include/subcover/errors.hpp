#pragma once

#include <stdexcept>
#include <string>

namespace subcover {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cayley table failed a group axiom. `axiom` is one of
// "latin-square", "identity", "inverse", "associativity".
struct NotAGroup : GroupError {
  std::string axiom;
  int a = -1, b = -1, c = -1;  // witness triple where applicable

  NotAGroup(std::string which, std::string msg, int wa = -1, int wb = -1, int wc = -1)
      : GroupError("not a group (" + which + "): " + msg),
        axiom(std::move(which)), a(wa), b(wb), c(wc) {}
};

struct ClosureExceedsLimit : GroupError {
  explicit ClosureExceedsLimit(std::size_t cap)
      : GroupError("group closure exceeds order cap " + std::to_string(cap)) {}
};

struct LatticeExceedsLimit : GroupError {
  explicit LatticeExceedsLimit(std::size_t cap)
      : GroupError("subgroup lattice exceeds cap " + std::to_string(cap)) {}
};

struct NotNormal : GroupError {
  NotNormal() : GroupError("subgroup is not normal") {}
};

struct UnknownSpec : GroupError {
  explicit UnknownSpec(const std::string& spec)
      : GroupError("unknown group spec: " + spec) {}
};

// A covering-number classifier clause evaluated its two equivalent
// predicates and they disagreed.
struct ClauseMismatch : GroupError {
  explicit ClauseMismatch(const std::string& clause)
      : GroupError("classifier clause forms disagree: " + clause) {}
};

}  // namespace subcover
