#pragma once

#include <vector>

#include "weft/lang/ast.hpp"

namespace weft::lang {

struct TypecheckResult {
  bool ok = false;
  std::vector<Diag> errors;
};

// Resolves names, types every expression (inserting explicit conversion
// nodes for implicit widenings/narrowings), enforces placement rules for
// exit/fork/return, read-only parent variables, adapter usage modes and
// the barrier-depth ceiling.  Annotates the program in place.
TypecheckResult typecheck(Program& p);

// parse + typecheck, aborting on failure (test convenience).
Program frontend_or_die(const std::string& source);

}  // namespace weft::lang
