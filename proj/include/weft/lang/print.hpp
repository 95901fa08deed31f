#pragma once

#include <string>

#include "weft/lang/ast.hpp"

namespace weft::lang {

std::string print_program(const Program& p);
std::string print_expr(const Program& p, const Expr& e);
std::string print_stmt(const Program& p, const Stmt& s, int indent = 0);

}  // namespace weft::lang
