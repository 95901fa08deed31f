#include "weft/ops.hpp"

#include <algorithm>
#include <limits>

namespace weft {

const char* binop_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Rem: return "%";
    case BinOp::And: return "&";
    case BinOp::Or: return "|";
    case BinOp::Xor: return "^";
    case BinOp::Shl: return "<<";
    case BinOp::Shr: return ">>";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::LAnd: return "&&";
    case BinOp::LOr: return "||";
  }
  return "?";
}

bool binop_from_name(const std::string& s, BinOp* out) {
  for (int i = 0; i <= static_cast<int>(BinOp::LOr); ++i) {
    BinOp op = static_cast<BinOp>(i);
    if (s == binop_name(op)) {
      *out = op;
      return true;
    }
  }
  return false;
}

int32_t apply_binop(BinOp op, int32_t a, int32_t b, Width w) {
  int64_t x = a, y = b;
  switch (op) {
    case BinOp::Add: return wrap(x + y, w);
    case BinOp::Sub: return wrap(x - y, w);
    case BinOp::Mul: return wrap(x * y, w);
    case BinOp::Div:
      if (b == 0) throw TrapError(TrapKind::DivByZero, "division by zero");
      return wrap(x / y, w);
    case BinOp::Rem:
      if (b == 0) throw TrapError(TrapKind::DivByZero, "remainder by zero");
      return wrap(x % y, w);
    case BinOp::And: return wrap(a & b, w);
    case BinOp::Or: return wrap(a | b, w);
    case BinOp::Xor: return wrap(a ^ b, w);
    case BinOp::Shl: return wrap(x << (b & (bits_of(w) - 1)), w);
    case BinOp::Shr: return wrap(x >> (b & (bits_of(w) - 1)), w);
    case BinOp::Eq: return a == b;
    case BinOp::Ne: return a != b;
    case BinOp::Lt: return a < b;
    case BinOp::Le: return a <= b;
    case BinOp::Gt: return a > b;
    case BinOp::Ge: return a >= b;
    case BinOp::LAnd: return (a != 0) && (b != 0);
    case BinOp::LOr: return (a != 0) || (b != 0);
  }
  return 0;
}

int32_t apply_unop(UnOp op, int32_t a, Width w) {
  switch (op) {
    case UnOp::Neg: return wrap(-static_cast<int64_t>(a), w);
    case UnOp::Not: return a == 0;
    case UnOp::BitNot: return wrap(~a, w);
  }
  return 0;
}

const char* redop_name(RedOp op) {
  switch (op) {
    case RedOp::Add: return "+";
    case RedOp::Min: return "min";
    case RedOp::Max: return "max";
    case RedOp::And: return "&";
    case RedOp::Or: return "|";
    case RedOp::VoidR: return "void";
  }
  return "?";
}

bool redop_from_name(const std::string& s, RedOp* out) {
  for (int i = 0; i <= static_cast<int>(RedOp::VoidR); ++i) {
    RedOp op = static_cast<RedOp>(i);
    if (s == redop_name(op)) {
      *out = op;
      return true;
    }
  }
  return false;
}

int32_t redop_identity(RedOp op) {
  switch (op) {
    case RedOp::Add: return 0;
    case RedOp::Min: return std::numeric_limits<int32_t>::max();
    case RedOp::Max: return std::numeric_limits<int32_t>::min();
    case RedOp::And: return -1;
    case RedOp::Or: return 0;
    case RedOp::VoidR: return 0;
  }
  return 0;
}

int32_t apply_redop(RedOp op, int32_t a, int32_t b) {
  switch (op) {
    case RedOp::Add: return wrap(static_cast<int64_t>(a) + b, Width::I32);
    case RedOp::Min: return std::min(a, b);
    case RedOp::Max: return std::max(a, b);
    case RedOp::And: return a & b;
    case RedOp::Or: return a | b;
    case RedOp::VoidR: return 0;
  }
  return 0;
}

}  // namespace weft
