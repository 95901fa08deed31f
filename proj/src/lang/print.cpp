#include "weft/lang/print.hpp"

namespace weft::lang {

namespace {

int binop_prec(BinOp op) {
  switch (op) {
    case BinOp::LOr: return 1;
    case BinOp::LAnd: return 2;
    case BinOp::Or: return 3;
    case BinOp::Xor: return 4;
    case BinOp::And: return 5;
    case BinOp::Eq: case BinOp::Ne: return 6;
    case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 7;
    case BinOp::Shl: case BinOp::Shr: return 8;
    case BinOp::Add: case BinOp::Sub: return 9;
    default: return 10;
  }
}

class Printer {
 public:
  explicit Printer(const Program& p) : p_(p) {}

  std::string sym_name(int sym, const std::string& fallback) const {
    if (sym >= 0 && sym < static_cast<int>(p_.syms.size()))
      return p_.syms[size_t(sym)].name;
    return fallback;
  }

  std::string mem_name(int id) const {
    if (id >= 0 && id < static_cast<int>(p_.mems.size()))
      return p_.mems[size_t(id)].name;
    return "M?" + std::to_string(id);
  }

  std::string alloc_name(int id) const {
    if (id >= 0 && id < static_cast<int>(p_.allocators.size()))
      return p_.allocators[size_t(id)].name;
    return "A?" + std::to_string(id);
  }

  std::string dram_name(int id) const {
    if (id >= 0 && id < static_cast<int>(p_.drams.size()))
      return p_.drams[size_t(id)].name;
    return "D?" + std::to_string(id);
  }

  std::string expr(const Expr& e, int parent_prec = 0) const {
    switch (e.k) {
      case ExKind::Const: return std::to_string(e.ival);
      case ExKind::Var: return sym_name(e.sym, e.name);
      case ExKind::Bin: {
        int prec = binop_prec(e.bop);
        std::string s = expr(*e.args[0], prec) + " " + binop_name(e.bop) +
                        " " + expr(*e.args[1], prec + 1);
        if (prec < parent_prec) return "(" + s + ")";
        return s;
      }
      case ExKind::Un: {
        const char* op = e.uop == UnOp::Neg ? "-" : e.uop == UnOp::Not ? "!" : "~";
        return std::string(op) + expr(*e.args[0], 11);
      }
      case ExKind::Select:
        return "select(" + expr(*e.args[0]) + ", " + expr(*e.args[1]) + ", " +
               expr(*e.args[2]) + ")";
      case ExKind::Conv: {
        const char* n = e.type.width == Width::I8 ? "int8"
                        : e.type.width == Width::I16 ? "int16"
                                                     : "int32";
        return std::string(n) + "(" + expr(*e.args[0]) + ")";
      }
      case ExKind::Index:
        return sym_name(e.sym, e.name) + (e.wordwise ? ".w[" : "[") +
               expr(*e.args[0]) + "]";
      case ExKind::Deref: return "*" + sym_name(e.sym, e.name);
      case ExKind::Peek:
        return sym_name(e.sym, e.name) + ".peek(" + expr(*e.args[0]) + ")";
      case ExKind::ForkE: return "fork(" + expr(*e.args[0]) + ")";
      case ExKind::AllocP:
        return "alloc(" + (e.mem >= 0 ? alloc_name(e.mem) : e.name) + ")";
      case ExKind::AtomicDec:
        return "atomdec(" + (e.mem >= 0 ? mem_name(e.mem) : e.name) + ", " +
               expr(*e.args[0]) + ")";
      case ExKind::MemLoad:
        return mem_name(e.mem) + (e.wordwise ? ".w[" : "[") +
               expr(*e.args[0]) + "]";
      case ExKind::DramLoad:
        return dram_name(e.mem) + (e.wordwise ? ".w[" : "[") +
               expr(*e.args[0]) + "]";
      case ExKind::Bits:
        return "bits(" + expr(*e.args[0]) + ", " + std::to_string(e.ival) +
               ", " + std::to_string(e.ival2) + ")";
      case ExKind::SetBits:
        return "setbits(" + expr(*e.args[0]) + ", " + std::to_string(e.ival) +
               ", " + std::to_string(e.ival2) + ", " + expr(*e.args[1]) + ")";
    }
    return "?";
  }

  void stmt(const Stmt& s, int ind, std::string& out) const {
    std::string pad(size_t(ind) * 2, ' ');
    switch (s.k) {
      case StKind::Decl: {
        const Type& t = s.decl_type;
        if (t.kind == TyKind::Int) {
          out += pad + type_name(t) + " " + s.name;
          if (s.a) out += " = " + expr(*s.a);
          out += ";\n";
        } else if (t.kind == TyKind::Sram) {
          out += pad + "SRAM<" + type_name(Type::scalar(t.width)) + ", " +
                 std::to_string(t.size) + "> " + s.name + ";\n";
        } else {
          out += pad + type_name(t) + " " + s.name + "(" + s.name2 + ", " +
                 expr(*s.a) + ");\n";
        }
        break;
      }
      case StKind::Assign:
        if (s.pred)
          out += pad + "store_if (" + expr(*s.pred) + ") " + expr(*s.a) +
                 " = " + expr(*s.b) + ";\n";
        else
          out += pad + expr(*s.a) + " = " + expr(*s.b) + ";\n";
        break;
      case StKind::If:
        out += pad + "if (" + expr(*s.a) + ") {\n";
        for (const StmtP& x : s.body) stmt(*x, ind + 1, out);
        if (!s.els.empty()) {
          out += pad + "} else {\n";
          for (const StmtP& x : s.els) stmt(*x, ind + 1, out);
        }
        out += pad + "};\n";
        break;
      case StKind::While:
        out += pad + "while (" + expr(*s.a) + ") {\n";
        for (const StmtP& x : s.body) stmt(*x, ind + 1, out);
        out += pad + "};\n";
        break;
      case StKind::Foreach: {
        out += pad + "foreach (" + expr(*s.a);
        if (s.b) out += " by " + expr(*s.b);
        out += ")";
        if (s.reducing)
          out += " reduce(" + std::string(redop_name(s.red)) + ") int " +
                 sym_name(s.aux_sym, s.name2);
        out += " { ";
        if (!s.name.empty() || s.sym >= 0)
          out += "int " + sym_name(s.sym, s.name) + " =>";
        out += "\n";
        if (s.pragma_elim)
          out += pad + "  pragma(eliminate_hierarchy);\n";
        for (const StmtP& x : s.body) stmt(*x, ind + 1, out);
        out += pad + "};\n";
        break;
      }
      case StKind::Replicate:
        out += pad + "replicate (" + std::to_string(s.degree) + ") {\n";
        for (const StmtP& x : s.body) stmt(*x, ind + 1, out);
        out += pad + "};\n";
        break;
      case StKind::ForkBind:
        out += pad + "int " + sym_name(s.sym, s.name) + " = fork(" +
               expr(*s.a) + ");\n";
        break;
      case StKind::Exit: out += pad + "exit();\n"; break;
      case StKind::Return:
        out += pad + (s.a ? "return " + expr(*s.a) : std::string("return")) +
               ";\n";
        break;
      case StKind::BulkLoad:
        out += pad + "bulk_load(" +
               (s.mem >= 0 ? mem_name(s.mem) : s.name) + ", " + expr(*s.a) +
               ", " + (s.aux_sym >= 0 ? dram_name(s.aux_sym) : s.name2) +
               ", " + expr(*s.b) + ", " + expr(*s.c) + ");\n";
        break;
      case StKind::BulkStore:
        out += pad + "bulk_store(" +
               (s.aux_sym >= 0 ? dram_name(s.aux_sym) : s.name) + ", " +
               expr(*s.a) + ", " +
               (s.mem >= 0 ? mem_name(s.mem) : s.name2) + ", " + expr(*s.b) +
               ", " + expr(*s.c) + ");\n";
        break;
      case StKind::IterInc:
        out += pad + sym_name(s.sym, s.name) + "++;\n";
        break;
      case StKind::IterAdvance:
        out += pad + sym_name(s.sym, s.name) + ".advance(" + expr(*s.a) +
               ");\n";
        break;
      case StKind::Free:
        out += pad + "free(" + (s.mem >= 0 ? alloc_name(s.mem) : s.name) +
               ", " + expr(*s.a) + ");\n";
        break;
      case StKind::AtomicRmw:
        out += pad + "atomic(" + std::string(redop_name(s.red)) + ", " +
               mem_name(s.mem) + ", " + expr(*s.a) + ", " + expr(*s.b) +
               ");\n";
        break;
      case StKind::MemStore:
        if (s.pred)
          out += pad + "store_if (" + expr(*s.pred) + ") " + mem_name(s.mem) +
                 (s.wordwise ? ".w[" : "[") + expr(*s.a) + "] = " +
                 expr(*s.b) + ";\n";
        else
          out += pad + mem_name(s.mem) + (s.wordwise ? ".w[" : "[") +
                 expr(*s.a) + "] = " + expr(*s.b) + ";\n";
        break;
      case StKind::DramStore:
        if (s.pred)
          out += pad + "store_if (" + expr(*s.pred) + ") " + dram_name(s.mem) +
                 (s.wordwise ? ".w[" : "[") + expr(*s.a) + "] = " +
                 expr(*s.b) + ";\n";
        else
          out += pad + dram_name(s.mem) + (s.wordwise ? ".w[" : "[") +
                 expr(*s.a) + "] = " + expr(*s.b) + ";\n";
        break;
      case StKind::Pragma:
        out += pad + "pragma(" + s.name;
        if (s.degree) out += ", " + std::to_string(s.degree);
        out += ");\n";
        break;
    }
  }

 private:
  const Program& p_;
};

}  // namespace

std::string print_expr(const Program& p, const Expr& e) {
  return Printer(p).expr(e);
}

std::string print_stmt(const Program& p, const Stmt& s, int indent) {
  std::string out;
  Printer(p).stmt(s, indent, out);
  return out;
}

std::string print_program(const Program& p) {
  std::string out;
  for (const DramDecl& d : p.drams)
    out += "DRAM<" + std::string(type_name(Type::scalar(d.elem))) + "> " +
           d.name + ";\n";
  if (!p.mems.empty()) {
    out += "// memories:\n";
    for (const MemRef& m : p.mems) {
      out += "//   " + m.name + " : " + type_name(Type::scalar(m.elem)) +
             " x " + std::to_string(m.slots);
      if (m.pooled)
        out += " pooled x" + std::to_string(m.pool_bufs) + " (allocator " +
               std::to_string(m.allocator) + ")";
      out += "\n";
    }
    for (const AllocatorDef& a : p.allocators)
      out += "//   allocator " + a.name + " max_ptr " +
             std::to_string(a.max_ptr) + "\n";
  }
  out += "\nvoid main(";
  for (size_t i = 0; i < p.params.size(); ++i) {
    if (i) out += ", ";
    out += "int " + p.params[i];
  }
  out += ") {\n";
  Printer pr(p);
  for (const StmtP& s : p.body) pr.stmt(*s, 1, out);
  out += "}\n";
  return out;
}

}  // namespace weft::lang
