#include "weft/lang/lexer.hpp"

#include <cctype>
#include <cstring>

namespace weft::lang {

namespace {

const char* kPuncts[] = {
    "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "++", "=>", "::",
    "+", "-", "*", "/", "%", "&", "|", "^", "~", "!", "<", ">", "=",
    "(", ")", "{", "}", "[", "]", ";", ",", ".",
};

}  // namespace

std::vector<Token> lex(const std::string& src, std::vector<Diag>* diags) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto loc = [&] { return SrcLoc{line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      SrcLoc l = loc();
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), 0, l});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      SrcLoc l = loc();
      size_t j = i;
      int64_t v = 0;
      bool hex = j + 1 < src.size() && src[j] == '0' &&
                 (src[j + 1] == 'x' || src[j + 1] == 'X');
      if (hex) {
        j += 2;
        while (j < src.size() &&
               std::isxdigit(static_cast<unsigned char>(src[j]))) {
          char d = src[j];
          v = v * 16 + (std::isdigit(static_cast<unsigned char>(d))
                            ? d - '0'
                            : std::tolower(d) - 'a' + 10);
          ++j;
        }
      } else {
        while (j < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[j]))) {
          v = v * 10 + (src[j] - '0');
          ++j;
        }
      }
      out.push_back(
          {Tok::Int, src.substr(i, j - i), static_cast<int32_t>(v), l});
      advance(j - i);
      continue;
    }
    if (c == '\'') {
      SrcLoc l = loc();
      size_t j = i + 1;
      int32_t v = 0;
      if (j < src.size() && src[j] == '\\') {
        ++j;
        char e = j < src.size() ? src[j] : 0;
        switch (e) {
          case 'n': v = '\n'; break;
          case 't': v = '\t'; break;
          case '0': v = 0; break;
          default: v = e; break;
        }
        ++j;
      } else if (j < src.size()) {
        v = static_cast<unsigned char>(src[j]);
        ++j;
      }
      if (j < src.size() && src[j] == '\'') ++j;
      out.push_back({Tok::Int, src.substr(i, j - i), v, l});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      size_t n = std::strlen(p);
      if (src.compare(i, n, p) == 0) {
        out.push_back({Tok::Punct, p, 0, loc()});
        advance(n);
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (diags)
        diags->push_back(
            {loc(), std::string("unexpected character '") + c + "'"});
      advance(1);
    }
  }
  out.push_back({Tok::End, "", 0, loc()});
  return out;
}

}  // namespace weft::lang
