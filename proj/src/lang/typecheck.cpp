#include "weft/lang/typecheck.hpp"

#include <map>

#include "weft/lang/parser.hpp"
#include "weft/sltf/stream.hpp"

namespace weft::lang {

namespace {

struct Scope {
  std::map<std::string, int> names;
  int region = 0;
  bool thread_boundary = false;  // foreach body: parent vars become read-only
};

class Checker {
 public:
  explicit Checker(Program& p, TypecheckResult& res) : p_(p), res_(res) {}

  void run() {
    p_.region_count = 0;
    scopes_.push_back({{}, new_region(), false});
    for (size_t i = 0; i < p_.params.size(); ++i) {
      int sym = declare(p_.params[i], Type::scalar(Width::I32), {});
      if (sym >= 0) p_.syms[size_t(sym)].is_param = true;
    }
    check_body(p_.body);
    p_.max_depth = max_depth_;
    if (max_depth_ + 1 > sltf::kMaxBarrierLevel)
      error({}, "loop nesting depth " + std::to_string(max_depth_ + 1) +
                    " exceeds the barrier level limit");
    p_.typed = res_.errors.empty();
  }

 private:
  Program& p_;
  TypecheckResult& res_;
  std::vector<Scope> scopes_;
  int thread_depth_ = 0;     // foreach nesting (threads)
  int struct_depth_ = 1;     // barrier depth: root stream is 1-D
  int max_depth_ = 1;
  int parallel_depth_ = 0;   // foreach or replicate regions entered
  int foreach_depth_ = 0;
  std::vector<Stmt*> foreach_stack_;

  void error(SrcLoc loc, const std::string& msg) {
    res_.errors.push_back({loc, msg});
  }

  int new_region() { return p_.region_count++; }

  int lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->names.find(name);
      if (f != it->names.end()) return f->second;
    }
    return -1;
  }

  // Is `sym` owned by the current thread (defined at the current thread
  // depth, not behind a foreach boundary)?
  bool writable(int sym) {
    return p_.syms[size_t(sym)].depth == thread_depth_;
  }

  int declare(const std::string& name, Type t, SrcLoc loc) {
    if (lookup(name) >= 0) {
      error(loc, "'" + name + "' shadows an existing declaration");
      return -1;
    }
    int sym = p_.add_sym(name, t, thread_depth_, scopes_.back().region);
    scopes_.back().names[name] = sym;
    return sym;
  }

  Width expr_width(const Expr& e) {
    return e.type.is_int() ? e.type.width : Width::I32;
  }

  // Inserts a conversion node unless the expression already has the width.
  void coerce(ExprP& e, Width to) {
    if (!e) return;
    if (e->type.is_int() && e->type.width == to) return;
    SrcLoc loc = e->loc;
    ExprP conv = mk_conv(to, std::move(e));
    conv->loc = loc;
    e = std::move(conv);
  }

  // Type an expression in rvalue position.
  void check_expr(ExprP& ep) {
    Expr& e = *ep;
    switch (e.k) {
      case ExKind::Const:
        e.type = Type::scalar(Width::I32);
        break;
      case ExKind::Var: {
        if (e.sym < 0) e.sym = lookup(e.name);
        if (e.sym < 0) {
          error(e.loc, "unknown identifier '" + e.name + "'");
          e.type = Type::scalar(Width::I32);
          break;
        }
        e.type = p_.syms[size_t(e.sym)].type;
        if (!e.type.is_int())
          error(e.loc, "'" + e.name + "' is not a scalar value");
        break;
      }
      case ExKind::Bin: {
        check_expr(e.args[0]);
        check_expr(e.args[1]);
        coerce(e.args[0], Width::I32);
        coerce(e.args[1], Width::I32);
        e.type = Type::scalar(Width::I32);
        break;
      }
      case ExKind::Un:
        check_expr(e.args[0]);
        coerce(e.args[0], Width::I32);
        e.type = Type::scalar(Width::I32);
        break;
      case ExKind::Select:
        check_expr(e.args[0]);
        check_expr(e.args[1]);
        check_expr(e.args[2]);
        coerce(e.args[0], Width::I32);
        coerce(e.args[1], Width::I32);
        coerce(e.args[2], Width::I32);
        e.type = Type::scalar(Width::I32);
        break;
      case ExKind::Conv:
        check_expr(e.args[0]);
        // target width is already recorded in e.type
        break;
      case ExKind::Index: {
        if (e.sym < 0) e.sym = lookup(e.name);
        if (e.sym < 0) {
          error(e.loc, "unknown memory '" + e.name + "'");
          e.type = Type::scalar(Width::I32);
          break;
        }
        const Type& base = p_.syms[size_t(e.sym)].type;
        if (!base.is_memory()) {
          error(e.loc, "indexed value '" + e.name + "' is not an SRAM or view");
          e.type = Type::scalar(Width::I32);
          break;
        }
        if (base.kind == TyKind::View && base.mode == AdapterMode::Write)
          error(e.loc, "reading from a write-only view");
        check_expr(e.args[0]);
        coerce(e.args[0], Width::I32);
        e.type = Type::scalar(base.width);
        break;
      }
      case ExKind::Deref: {
        if (e.sym < 0) e.sym = lookup(e.name);
        if (e.sym < 0) {
          error(e.loc, "unknown iterator '" + e.name + "'");
          e.type = Type::scalar(Width::I32);
          break;
        }
        const Symbol& s = p_.syms[size_t(e.sym)];
        if (s.type.kind != TyKind::Iter ||
            (s.type.mode != AdapterMode::ReadIt &&
             s.type.mode != AdapterMode::PeekReadIt))
          error(e.loc, "'*' requires a read iterator");
        if (s.depth != thread_depth_)
          error(e.loc, "iterator '" + e.name + "' used from a child thread");
        e.type = Type::scalar(s.type.width);
        break;
      }
      case ExKind::Peek: {
        if (e.sym < 0) e.sym = lookup(e.name);
        const Symbol* s =
            e.sym >= 0 ? &p_.syms[size_t(e.sym)] : nullptr;
        if (!s || s->type.kind != TyKind::Iter ||
            s->type.mode != AdapterMode::PeekReadIt)
          error(e.loc, "peek requires a PeekReadIt iterator");
        else if (s->depth != thread_depth_)
          error(e.loc, "iterator '" + e.name + "' used from a child thread");
        check_expr(e.args[0]);
        coerce(e.args[0], Width::I32);
        e.type = Type::scalar(s ? s->type.width : Width::I32);
        break;
      }
      case ExKind::ForkE:
        error(e.loc, "fork() is only allowed as 'int x = fork(n);'");
        e.type = Type::scalar(Width::I32);
        break;
      case ExKind::AllocP:
      case ExKind::AtomicDec:
      case ExKind::MemLoad:
      case ExKind::DramLoad:
        // Compiler-introduced forms; not part of the source language.
        error(e.loc, "'" + e.name + "' names a compiler-internal operation");
        e.type = Type::scalar(Width::I32);
        break;
      case ExKind::Bits:
        check_expr(e.args[0]);
        coerce(e.args[0], Width::I32);
        e.type = Type::scalar(Width::I32);
        break;
      case ExKind::SetBits:
        check_expr(e.args[0]);
        check_expr(e.args[1]);
        coerce(e.args[0], Width::I32);
        coerce(e.args[1], Width::I32);
        e.type = Type::scalar(Width::I32);
        break;
    }
  }

  void enter_scope(bool thread_boundary) {
    scopes_.push_back({{}, new_region(), thread_boundary});
  }
  void leave_scope() { scopes_.pop_back(); }

  void check_body(std::vector<StmtP>& body) {
    for (size_t i = 0; i < body.size(); ++i) {
      Stmt* s = body[i].get();
      // Region pragmas attach to the enclosing statement and vanish.
      if (s->k == StKind::Pragma) {
        error(s->loc, "pragma '" + s->name + "' outside a region header");
        body.erase(body.begin() + long(i));
        --i;
        continue;
      }
      check_stmt(*body[i]);
    }
  }

  // Extracts leading pragmas of a region body.
  void take_pragmas(Stmt& host, std::vector<StmtP>& body) {
    while (!body.empty() && body.front()->k == StKind::Pragma) {
      Stmt& pr = *body.front();
      if (pr.name == "eliminate_hierarchy" && host.k == StKind::Foreach) {
        host.pragma_elim = true;
      } else if (pr.name == "max_threads" && pr.degree > 0) {
        host.pool_scale = pr.degree;
      } else if (pr.name == "vector_links") {
        host.link_force = 1;
      } else if (pr.name == "scalar_links") {
        host.link_force = 2;
      } else {
        error(pr.loc, "unknown pragma '" + pr.name + "'");
      }
      body.erase(body.begin());
    }
  }

  void check_stmt(Stmt& s) {
    switch (s.k) {
      case StKind::Decl: return check_decl(s);
      case StKind::Assign: return check_assign(s);
      case StKind::If:
        check_expr(s.a);
        coerce(s.a, Width::I32);
        enter_scope(false);
        s.region_id = scopes_.back().region;
        check_body(s.body);
        leave_scope();
        enter_scope(false);
        check_body(s.els);
        leave_scope();
        return;
      case StKind::While: {
        check_expr(s.a);
        coerce(s.a, Width::I32);
        enter_scope(false);
        s.region_id = scopes_.back().region;
        take_pragmas(s, s.body);
        ++struct_depth_;
        max_depth_ = std::max(max_depth_, struct_depth_);
        check_body(s.body);
        --struct_depth_;
        leave_scope();
        return;
      }
      case StKind::Foreach: return check_foreach(s);
      case StKind::Replicate: {
        if (s.degree < 1) error(s.loc, "replicate degree must be positive");
        ++parallel_depth_;
        enter_scope(false);
        s.region_id = scopes_.back().region;
        take_pragmas(s, s.body);
        check_body(s.body);
        leave_scope();
        --parallel_depth_;
        return;
      }
      case StKind::ForkBind: {
        if (parallel_depth_ == 0)
          error(s.loc, "fork outside parallel region");
        check_expr(s.a);
        coerce(s.a, Width::I32);
        s.sym = declare(s.name, Type::scalar(Width::I32), s.loc);
        // fork passes transiently through an extra dimension
        max_depth_ = std::max(max_depth_, struct_depth_ + 1);
        return;
      }
      case StKind::Exit:
        if (parallel_depth_ == 0)
          error(s.loc, "exit outside parallel region");
        return;
      case StKind::Return: {
        Stmt* fe = foreach_stack_.empty() ? nullptr : foreach_stack_.back();
        if (!fe) {
          error(s.loc, "return outside a foreach body");
          return;
        }
        if (s.a) {
          if (!fe->reducing) {
            error(s.loc, "return with a value in a non-reducing foreach");
          }
          check_expr(s.a);
          coerce(s.a, Width::I32);
        } else if (fe->reducing) {
          error(s.loc, "reducing foreach requires 'return <value>'");
        }
        return;
      }
      case StKind::IterInc:
      case StKind::IterAdvance: {
        if (s.sym < 0) s.sym = lookup(s.name);
        if (s.sym < 0) {
          error(s.loc, "unknown iterator '" + s.name + "'");
          return;
        }
        const Symbol& sym = p_.syms[size_t(s.sym)];
        if (sym.type.kind != TyKind::Iter) {
          error(s.loc, "'" + s.name + "' is not an iterator");
          return;
        }
        if (sym.depth != thread_depth_)
          error(s.loc, "iterator '" + s.name + "' used from a child thread");
        bool manual = sym.type.mode == AdapterMode::ManualWriteIt;
        if (s.k == StKind::IterInc && manual)
          error(s.loc, "ManualWriteIt advances with it.advance(last)");
        if (s.k == StKind::IterAdvance) {
          if (!manual)
            error(s.loc, "advance() requires a ManualWriteIt iterator");
          check_expr(s.a);
          coerce(s.a, Width::I32);
        }
        return;
      }
      case StKind::BulkLoad:
      case StKind::BulkStore:
      case StKind::Free:
      case StKind::AtomicRmw:
      case StKind::MemStore:
      case StKind::DramStore:
        error(s.loc, "compiler-internal statement in source program");
        return;
      case StKind::Pragma:
        return;  // handled by the caller
    }
  }

  void check_decl(Stmt& s) {
    Type t = s.decl_type;
    switch (t.kind) {
      case TyKind::Int:
        if (s.a) {
          check_expr(s.a);
          coerce(s.a, t.width);
        }
        break;
      case TyKind::Sram:
        if (t.size <= 0) error(s.loc, "SRAM size must be positive");
        break;
      case TyKind::View:
      case TyKind::Iter: {
        if (t.size <= 0) error(s.loc, "adapter size must be positive");
        int dram = p_.dram_id(s.name2);
        if (dram < 0) {
          error(s.loc, "unknown DRAM '" + s.name2 + "'");
        } else {
          t.width = p_.drams[size_t(dram)].elem;
          s.mem = dram;
        }
        if (t.kind == TyKind::Iter) {
          if (t.size > 256 || (t.size & (t.size - 1)) != 0)
            error(s.loc, "iterator tile must be a power of two <= 256");
        }
        check_expr(s.a);
        coerce(s.a, Width::I32);
        break;
      }
      default:
        error(s.loc, "cannot declare a value of this type");
    }
    s.decl_type = t;
    s.sym = declare(s.name, t, s.loc);
  }

  void check_assign(Stmt& s) {
    Expr& lhs = *s.a;
    check_expr(s.b);
    switch (lhs.k) {
      case ExKind::Var: {
        if (lhs.sym < 0) lhs.sym = lookup(lhs.name);
        if (lhs.sym < 0) {
          error(lhs.loc, "unknown identifier '" + lhs.name + "'");
          return;
        }
        const Symbol& sym = p_.syms[size_t(lhs.sym)];
        if (!sym.type.is_int()) {
          error(lhs.loc, "cannot assign to '" + lhs.name + "'");
          return;
        }
        if (!writable(lhs.sym)) {
          error(lhs.loc, "'" + lhs.name +
                             "' belongs to a parent thread and is read-only");
          return;
        }
        lhs.type = sym.type;
        coerce(s.b, sym.type.width);
        return;
      }
      case ExKind::Index: {
        if (lhs.sym < 0) lhs.sym = lookup(lhs.name);
        if (lhs.sym < 0) {
          error(lhs.loc, "unknown memory '" + lhs.name + "'");
          return;
        }
        const Type& base = p_.syms[size_t(lhs.sym)].type;
        if (!base.is_memory()) {
          error(lhs.loc, "indexed value is not an SRAM or view");
          return;
        }
        if (base.kind == TyKind::View && base.mode == AdapterMode::Read)
          error(lhs.loc, "writing to a read-only view");
        check_expr(lhs.args[0]);
        coerce(lhs.args[0], Width::I32);
        lhs.type = Type::scalar(base.width);
        coerce(s.b, base.width);
        return;
      }
      case ExKind::Deref: {
        if (lhs.sym < 0) lhs.sym = lookup(lhs.name);
        if (lhs.sym < 0) {
          error(lhs.loc, "unknown iterator '" + lhs.name + "'");
          return;
        }
        const Symbol& sym = p_.syms[size_t(lhs.sym)];
        if (sym.type.kind != TyKind::Iter ||
            (sym.type.mode != AdapterMode::WriteIt &&
             sym.type.mode != AdapterMode::ManualWriteIt))
          error(lhs.loc, "'*iter =' requires a write iterator");
        else if (sym.depth != thread_depth_)
          error(lhs.loc, "iterator used from a child thread");
        lhs.type = Type::scalar(sym.type.width);
        coerce(s.b, sym.type.width);
        return;
      }
      default:
        error(lhs.loc, "invalid assignment target");
    }
  }

  void check_foreach(Stmt& s) {
    check_expr(s.a);
    coerce(s.a, Width::I32);
    if (s.b) {
      check_expr(s.b);
      coerce(s.b, Width::I32);
    }
    ++parallel_depth_;
    ++foreach_depth_;
    ++thread_depth_;
    ++struct_depth_;
    max_depth_ = std::max(max_depth_, struct_depth_);
    enter_scope(true);
    s.region_id = scopes_.back().region;
    take_pragmas(s, s.body);
    if (!s.name.empty())
      s.sym = declare(s.name, Type::scalar(Width::I32), s.loc);
    foreach_stack_.push_back(&s);
    check_body(s.body);
    if (s.reducing && !always_ends_thread(s.body))
      error(s.loc,
            "reducing foreach: every path must end in return or exit");
    foreach_stack_.pop_back();
    leave_scope();
    --struct_depth_;
    --thread_depth_;
    --foreach_depth_;
    --parallel_depth_;
    // The reduction result becomes visible after the loop.
    if (s.reducing)
      s.aux_sym = declare(s.name2, Type::scalar(Width::I32), s.loc);
  }

  static bool always_ends_thread(const std::vector<StmtP>& body) {
    if (body.empty()) return false;
    const Stmt& last = *body.back();
    if (last.k == StKind::Return || last.k == StKind::Exit) return true;
    if (last.k == StKind::If && !last.els.empty())
      return always_ends_thread(last.body) && always_ends_thread(last.els);
    return false;
  }
};

}  // namespace

TypecheckResult typecheck(Program& p) {
  TypecheckResult res;
  Checker c(p, res);
  c.run();
  res.ok = res.errors.empty();
  return res;
}

Program frontend_or_die(const std::string& source) {
  Program p = parse_or_die(source);
  TypecheckResult r = typecheck(p);
  if (!r.ok) {
    std::string msg = "typecheck failed";
    for (const Diag& d : r.errors)
      msg += "\n  " + std::to_string(d.loc.line) + ":" +
             std::to_string(d.loc.col) + ": " + d.msg;
    throw CompileError(msg);
  }
  return p;
}

}  // namespace weft::lang
