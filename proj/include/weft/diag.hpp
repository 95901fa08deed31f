#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weft {

struct SrcLoc {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
};

// A single diagnostic, printed as "file:line:col: message".
struct Diag {
  SrcLoc loc;
  std::string msg;
};

std::string format_diags(const std::string& file, const std::vector<Diag>& ds);

// Internal compiler failure (a bug or an unsupported construct reached a
// pass).  User-facing errors go through Diag lists instead.
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(const std::string& what) : std::runtime_error(what) {}
  CompileError(SrcLoc loc, const std::string& what)
      : std::runtime_error(what), loc(loc) {}
  SrcLoc loc;
};

}  // namespace weft
