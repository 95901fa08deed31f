#include "weft/lang/ast.hpp"

namespace weft::lang {

std::string type_name(const Type& t) {
  switch (t.kind) {
    case TyKind::Int:
      switch (t.width) {
        case Width::I8: return "int8";
        case Width::I16: return "int16";
        default: return "int";
      }
    case TyKind::Void: return "void";
    case TyKind::Dram: return "DRAM";
    case TyKind::Sram: return "SRAM<" + std::to_string(t.size) + ">";
    case TyKind::View:
      switch (t.mode) {
        case AdapterMode::Read: return "ReadView<" + std::to_string(t.size) + ">";
        case AdapterMode::Write: return "WriteView<" + std::to_string(t.size) + ">";
        default: return "ModifyView<" + std::to_string(t.size) + ">";
      }
    case TyKind::Iter:
      switch (t.mode) {
        case AdapterMode::ReadIt: return "ReadIt<" + std::to_string(t.size) + ">";
        case AdapterMode::PeekReadIt:
          return "PeekReadIt<" + std::to_string(t.size) + ">";
        case AdapterMode::WriteIt: return "WriteIt<" + std::to_string(t.size) + ">";
        default: return "ManualWriteIt<" + std::to_string(t.size) + ">";
      }
    default: return "<invalid>";
  }
}

ExprP Expr::clone() const {
  auto e = std::make_unique<Expr>();
  e->k = k;
  e->loc = loc;
  e->type = type;
  e->ival = ival;
  e->ival2 = ival2;
  e->bop = bop;
  e->uop = uop;
  e->sym = sym;
  e->mem = mem;
  e->wordwise = wordwise;
  e->clamped = clamped;
  e->name = name;
  for (const ExprP& a : args) e->args.push_back(a->clone());
  if (pred) e->pred = pred->clone();
  return e;
}

StmtP Stmt::clone() const {
  auto s = std::make_unique<Stmt>();
  s->k = k;
  s->loc = loc;
  s->sym = sym;
  s->mem = mem;
  s->degree = degree;
  s->red = red;
  s->reducing = reducing;
  s->pragma_elim = pragma_elim;
  s->pool_scale = pool_scale;
  s->wordwise = wordwise;
  s->clamped = clamped;
  s->link_force = link_force;
  s->decl_type = decl_type;
  s->name = name;
  s->name2 = name2;
  if (a) s->a = a->clone();
  if (b) s->b = b->clone();
  if (c) s->c = c->clone();
  if (pred) s->pred = pred->clone();
  for (const StmtP& x : body) s->body.push_back(x->clone());
  for (const StmtP& x : els) s->els.push_back(x->clone());
  s->aux_sym = aux_sym;
  s->region_id = region_id;
  return s;
}

ExprP mk_const(int32_t v, SrcLoc loc) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::Const;
  e->ival = v;
  e->loc = loc;
  e->type = Type::scalar(Width::I32);
  return e;
}

ExprP mk_var(int sym, Type t, SrcLoc loc) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::Var;
  e->sym = sym;
  e->type = t;
  e->loc = loc;
  return e;
}

ExprP mk_bin(BinOp op, ExprP a, ExprP b) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::Bin;
  e->bop = op;
  e->type = Type::scalar(Width::I32);
  e->args.push_back(std::move(a));
  e->args.push_back(std::move(b));
  return e;
}

ExprP mk_un(UnOp op, ExprP a) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::Un;
  e->uop = op;
  e->type = Type::scalar(Width::I32);
  e->args.push_back(std::move(a));
  return e;
}

ExprP mk_conv(Width to, ExprP a) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::Conv;
  e->type = Type::scalar(to);
  e->args.push_back(std::move(a));
  return e;
}

ExprP mk_select(ExprP c, ExprP a, ExprP b) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::Select;
  e->type = a->type;
  e->args.push_back(std::move(c));
  e->args.push_back(std::move(a));
  e->args.push_back(std::move(b));
  return e;
}

ExprP mk_memload(int mem, ExprP addr, Width w, bool wordwise) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::MemLoad;
  e->mem = mem;
  e->wordwise = wordwise;
  e->type = Type::scalar(wordwise ? Width::I32 : w);
  e->args.push_back(std::move(addr));
  return e;
}

ExprP mk_dramload(int dram, ExprP addr, Width w, bool wordwise) {
  auto e = std::make_unique<Expr>();
  e->k = ExKind::DramLoad;
  e->mem = dram;
  e->wordwise = wordwise;
  e->type = Type::scalar(wordwise ? Width::I32 : w);
  e->args.push_back(std::move(addr));
  return e;
}

int Program::dram_id(const std::string& name) const {
  for (size_t i = 0; i < drams.size(); ++i)
    if (drams[i].name == name) return static_cast<int>(i);
  return -1;
}

int Program::add_sym(const std::string& name, Type t, int depth, int region) {
  syms.push_back({name, t, depth, false, region});
  return static_cast<int>(syms.size()) - 1;
}

MemRef& Program::add_mem(const std::string& name, Width elem, int32_t slots,
                         bool pooled) {
  MemRef m;
  m.id = static_cast<int>(mems.size());
  m.name = name;
  m.elem = elem;
  m.slots = slots;
  m.pooled = pooled;
  mems.push_back(m);
  return mems.back();
}

AllocatorDef& Program::add_allocator(const std::string& name,
                                     int32_t max_ptr) {
  AllocatorDef a;
  a.id = static_cast<int>(allocators.size());
  a.name = name;
  a.max_ptr = max_ptr;
  allocators.push_back(a);
  return allocators.back();
}

Program Program::clone() const {
  Program p;
  p.drams = drams;
  p.params = params;
  for (const StmtP& s : body) p.body.push_back(s->clone());
  p.syms = syms;
  p.mems = mems;
  p.allocators = allocators;
  p.typed = typed;
  p.region_count = region_count;
  p.max_depth = max_depth;
  return p;
}

bool expr_eq(const Expr& a, const Expr& b) {
  if (a.k != b.k || a.ival != b.ival || a.ival2 != b.ival2 ||
      a.bop != b.bop || a.uop != b.uop || a.sym != b.sym || a.mem != b.mem ||
      a.wordwise != b.wordwise || a.clamped != b.clamped ||
      a.name != b.name || a.args.size() != b.args.size())
    return false;
  if (static_cast<bool>(a.pred) != static_cast<bool>(b.pred)) return false;
  if (a.pred && !expr_eq(*a.pred, *b.pred)) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!expr_eq(*a.args[i], *b.args[i])) return false;
  return true;
}

bool stmt_eq(const Stmt& a, const Stmt& b) {
  if (a.k != b.k || a.sym != b.sym || a.mem != b.mem ||
      a.degree != b.degree || a.red != b.red || a.reducing != b.reducing ||
      a.pragma_elim != b.pragma_elim || a.wordwise != b.wordwise ||
      !(a.decl_type == b.decl_type) || a.name != b.name ||
      a.name2 != b.name2 || a.aux_sym != b.aux_sym)
    return false;
  auto eq_opt = [](const ExprP& x, const ExprP& y) {
    if (static_cast<bool>(x) != static_cast<bool>(y)) return false;
    return !x || expr_eq(*x, *y);
  };
  if (!eq_opt(a.a, b.a) || !eq_opt(a.b, b.b) || !eq_opt(a.c, b.c) ||
      !eq_opt(a.pred, b.pred))
    return false;
  if (a.body.size() != b.body.size() || a.els.size() != b.els.size())
    return false;
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!stmt_eq(*a.body[i], *b.body[i])) return false;
  for (size_t i = 0; i < a.els.size(); ++i)
    if (!stmt_eq(*a.els[i], *b.els[i])) return false;
  return true;
}

bool program_eq(const Program& a, const Program& b) {
  if (a.params != b.params || a.body.size() != b.body.size()) return false;
  if (a.drams.size() != b.drams.size()) return false;
  for (size_t i = 0; i < a.drams.size(); ++i)
    if (a.drams[i].name != b.drams[i].name ||
        a.drams[i].elem != b.drams[i].elem)
      return false;
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!stmt_eq(*a.body[i], *b.body[i])) return false;
  return true;
}

}  // namespace weft::lang
