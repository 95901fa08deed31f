#pragma once

#include <string>
#include <vector>

#include "weft/lang/ast.hpp"

namespace weft::lang {

struct ParseResult {
  Program prog;
  std::vector<Diag> diags;
  bool ok = false;
};

ParseResult parse(const std::string& source);

// Parses and aborts with CompileError on failure (test convenience).
Program parse_or_die(const std::string& source);

}  // namespace weft::lang
