#pragma once

// Arithmetic shared by the interpreter, the functional evaluators and the
// simulator.  All integer math is two's-complement with wraparound at the
// value's width; division truncates toward zero and traps on zero.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace weft {

enum class Width : uint8_t { I8, I16, I32 };

inline int bits_of(Width w) {
  switch (w) {
    case Width::I8: return 8;
    case Width::I16: return 16;
    default: return 32;
  }
}

// Sign-extends the low `bits_of(w)` bits.
inline int32_t wrap(int64_t v, Width w) {
  switch (w) {
    case Width::I8: return static_cast<int8_t>(v);
    case Width::I16: return static_cast<int16_t>(v);
    default: return static_cast<int32_t>(v);
  }
}

enum class BinOp : uint8_t {
  Add, Sub, Mul, Div, Rem,
  And, Or, Xor, Shl, Shr,
  Eq, Ne, Lt, Le, Gt, Ge,
  LAnd, LOr,
};

enum class UnOp : uint8_t { Neg, Not, BitNot };

enum class TrapKind : uint8_t {
  OutOfBounds,
  DivByZero,
  IteratorOverrun,
  NonterminatingRange,
};

class TrapError : public std::runtime_error {
 public:
  TrapError(TrapKind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
  TrapKind kind;
};

const char* binop_name(BinOp op);
bool binop_from_name(const std::string& s, BinOp* out);

int32_t apply_binop(BinOp op, int32_t a, int32_t b, Width w);
int32_t apply_unop(UnOp op, int32_t a, Width w);

// Associative-commutative reduction operators.
enum class RedOp : uint8_t { Add, Min, Max, And, Or, VoidR };

const char* redop_name(RedOp op);
bool redop_from_name(const std::string& s, RedOp* out);
int32_t redop_identity(RedOp op);
int32_t apply_redop(RedOp op, int32_t a, int32_t b);

}  // namespace weft
