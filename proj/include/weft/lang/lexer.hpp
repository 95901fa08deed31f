#pragma once

#include <string>
#include <vector>

#include "weft/diag.hpp"

namespace weft::lang {

enum class Tok : uint8_t {
  End, Ident, Int, Punct,
};

struct Token {
  Tok kind;
  std::string text;
  int32_t value = 0;
  SrcLoc loc;
};

// Tokenizes source text.  Comments are // to end of line; punctuation
// covers multi-character operators longest-first.
std::vector<Token> lex(const std::string& src, std::vector<Diag>* diags);

}  // namespace weft::lang
