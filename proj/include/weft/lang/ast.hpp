#pragma once

// Typed AST for the source language and for every later structured-IR
// stage: the high-level and mid-level passes rewrite this tree in place,
// introducing raw memories, allocator operations and packed sub-words
// while staying executable by the reference interpreter.

#include <memory>
#include <string>
#include <vector>

#include "weft/diag.hpp"
#include "weft/ops.hpp"

namespace weft::lang {

enum class TyKind : uint8_t { Int, Void, Dram, Sram, View, Iter, Invalid };

enum class AdapterMode : uint8_t {
  None,
  Read,        // ReadView
  Write,       // WriteView
  Modify,      // ModifyView
  ReadIt,
  PeekReadIt,
  WriteIt,
  ManualWriteIt,
};

struct Type {
  TyKind kind = TyKind::Invalid;
  Width width = Width::I32;  // scalar width, or element width for memories
  int32_t size = 0;          // sram/view element count; iterator tile
  AdapterMode mode = AdapterMode::None;

  static Type scalar(Width w) { return {TyKind::Int, w, 0, AdapterMode::None}; }
  static Type void_ty() { return {TyKind::Void, Width::I32, 0, AdapterMode::None}; }
  bool is_int() const { return kind == TyKind::Int; }
  bool is_memory() const {
    return kind == TyKind::Sram || kind == TyKind::View;
  }
  bool operator==(const Type& o) const {
    return kind == o.kind && width == o.width && size == o.size &&
           mode == o.mode;
  }
};

std::string type_name(const Type& t);

struct Expr;
struct Stmt;
using ExprP = std::unique_ptr<Expr>;
using StmtP = std::unique_ptr<Stmt>;

enum class ExKind : uint8_t {
  Const,     // ival
  Var,       // sym
  Bin,       // bop, args[0], args[1]
  Un,        // uop, args[0]
  Select,    // args[0] ? args[1] : args[2]
  Conv,      // to type.width, args[0]
  Index,     // sym adapter/sram, args[0] = element index
  Deref,     // sym iterator
  Peek,      // sym iterator, args[0] = lookahead
  ForkE,     // args[0] = thread count (only as ForkBind init)
  AllocP,    // pop a pointer from allocator `mem`
  AtomicDec, // memref `mem`, args[0] = cell; yields the decremented value
  MemLoad,   // memref `mem`, args[0] = element addr; wordwise loads 32 bits
  DramLoad,  // dram `mem`, args[0] = element addr
  Bits,      // extract: args[0], bit offset ival, bit width ival2 (signed)
  SetBits,   // insert: args[0] carrier, args[1] value, at ival/ival2
};

struct Expr {
  ExKind k;
  SrcLoc loc;
  Type type;  // set by the type checker / maintained by passes
  int32_t ival = 0;
  int32_t ival2 = 0;
  BinOp bop{};
  UnOp uop{};
  int sym = -1;   // Var / adapter symbol
  int mem = -1;   // memref, allocator or dram id
  bool wordwise = false;
  bool clamped = false;  // DRAM reads past the region end yield zero
  std::string name;  // identifier text before resolution
  std::vector<ExprP> args;
  ExprP pred;  // predicated loads (conditionals converted to selects)

  ExprP clone() const;
};

ExprP mk_const(int32_t v, SrcLoc loc = {});
ExprP mk_var(int sym, Type t, SrcLoc loc = {});
ExprP mk_bin(BinOp op, ExprP a, ExprP b);
ExprP mk_un(UnOp op, ExprP a);
ExprP mk_conv(Width to, ExprP a);
ExprP mk_select(ExprP c, ExprP a, ExprP b);
ExprP mk_memload(int mem, ExprP addr, Width w, bool wordwise = false);
ExprP mk_dramload(int dram, ExprP addr, Width w, bool wordwise = false);

enum class StKind : uint8_t {
  Decl,        // sym, init (may be null); adapter decls carry ctor args
  Assign,      // lhs (Var/Index/Deref), rhs, optional pred
  If,          // cond, body, els
  While,       // cond, body
  Foreach,     // count, step, binder sym, body, optional reduction
  Replicate,   // degree, body, steering ptr expr (after hoisting)
  ForkBind,    // sym, count expr
  Exit,
  Return,      // value (null in non-reducing regions)
  BulkLoad,    // mem, mem_base, dram, dram_base, count
  BulkStore,   // dram, dram_base, mem, mem_base, count
  IterInc,     // sym
  IterAdvance, // sym, last-iteration flag expr
  Free,        // allocator `mem`, ptr expr
  AtomicRmw,   // red op, memref `mem`, addr, value
  MemStore,    // memref `mem`, addr, value, optional pred
  DramStore,   // dram `mem`, addr, value, optional pred
  Pragma,      // name + optional const arg (region markers)
};

struct Stmt {
  StKind k;
  SrcLoc loc;
  int sym = -1;
  int mem = -1;      // memref / allocator / dram id
  int32_t degree = 0;
  RedOp red = RedOp::VoidR;
  bool reducing = false;
  bool pragma_elim = false;  // foreach: hierarchy elimination requested
  int32_t pool_scale = 1;    // foreach/replicate: pragma(max_threads, N)
  int8_t link_force = 0;     // while: pragma(vector_links)=1 / (scalar_links)=2
  bool wordwise = false;
  bool clamped = false;
  Type decl_type;            // Decl: the declared type
  std::string name;          // declared name / pragma name
  std::string name2;         // adapter ctor dram / reduction result name
  ExprP a, b, c;             // operands per kind (see uses)
  ExprP pred;
  std::vector<StmtP> body;
  std::vector<StmtP> els;
  int aux_sym = -1;   // foreach: reduction result symbol
  int region_id = -1; // filled by the type checker: unique region number

  StmtP clone() const;
};

// A raw on-chip memory after view/iterator lowering.  Pooled memories are
// backed by an allocator: every live pointer owns `slots` consecutive
// elements, so element addresses are ptr*slots + off.
struct MemRef {
  int id = -1;
  std::string name;
  Width elem = Width::I32;
  int32_t slots = 0;      // elements per buffer (static memories: total size)
  bool pooled = false;
  int allocator = -1;     // owning allocator after fusion
  int32_t pool_bufs = 1;  // valid pointer count (allocator max-ptr)
};

struct AllocatorDef {
  int id = -1;
  std::string name;
  int32_t max_ptr = 0;       // every integer in [0, max_ptr) is a valid pointer
  int32_t degree = 1;        // replicate scaling after hoisting
  std::vector<int> members;  // memrefs sharing this pointer queue
};

struct Symbol {
  std::string name;
  Type type;
  int depth = 0;        // thread-nesting depth of the defining region
  bool is_param = false;
  int region = -1;      // region id of the defining scope
};

struct DramDecl {
  std::string name;
  Width elem = Width::I32;
};

struct Program {
  std::vector<DramDecl> drams;
  std::vector<std::string> params;  // main's scalar parameters
  std::vector<StmtP> body;
  std::vector<Symbol> syms;
  std::vector<MemRef> mems;
  std::vector<AllocatorDef> allocators;
  bool typed = false;
  int region_count = 0;
  int max_depth = 0;

  int dram_id(const std::string& name) const;
  int add_sym(const std::string& name, Type t, int depth, int region);
  MemRef& add_mem(const std::string& name, Width elem, int32_t slots,
                  bool pooled);
  AllocatorDef& add_allocator(const std::string& name, int32_t max_ptr);
  Program clone() const;
};

bool stmt_eq(const Stmt& a, const Stmt& b);
bool expr_eq(const Expr& a, const Expr& b);
bool program_eq(const Program& a, const Program& b);

}  // namespace weft::lang
