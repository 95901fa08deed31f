#pragma once

// Reference interpreter: the semantic oracle.  Executes a typed program
// sequentially against a flat DRAM image; foreach bodies run in index
// order (a legal serialization of the unordered-threads semantics) and
// fork runs its continuations in index order.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "weft/lang/ast.hpp"

namespace weft::interp {

struct RunConfig {
  std::vector<int64_t> dram_elems;  // element count per DRAM declaration
};

struct MachineImage {
  std::vector<uint8_t> bytes;
  std::vector<int64_t> dram_base;   // byte offset per DRAM id
  std::vector<int64_t> dram_elems;  // element count per DRAM id
  std::vector<Width> dram_width;

  int64_t elem_byte(int dram, int64_t idx) const {
    return dram_base[size_t(dram)] +
           idx * int64_t(bits_of(dram_width[size_t(dram)]) / 8);
  }
  // Little-endian element access; `clamped` reads return 0 out of range.
  int32_t read_elem(int dram, int64_t idx, bool clamped) const;
  void write_elem(int dram, int64_t idx, int32_t v);
  int32_t read_word_at(int64_t byte, bool clamped) const;
  void write_word_at(int64_t byte, int32_t v);
};

MachineImage make_image(const lang::Program& p, const RunConfig& cfg);

struct InterpOptions {
  bool lint = false;  // verify the disjoint-write discipline dynamically
  int64_t max_steps = 500'000'000;  // defensive bound for runaway loops
};

struct InterpResult {
  bool ok = false;
  bool trapped = false;
  TrapKind trap = TrapKind::OutOfBounds;
  std::string trap_msg;
  std::map<int, int32_t> reduced;  // foreach region id -> last reduced value
  std::vector<std::string> lint_errors;
  int64_t threads_run = 0;
};

InterpResult interpret(const lang::Program& p, MachineImage& img,
                       const std::vector<int32_t>& args,
                       const InterpOptions& opts = {});

}  // namespace weft::interp
