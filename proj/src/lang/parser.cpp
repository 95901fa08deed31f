#include "weft/lang/parser.hpp"

#include "weft/lang/lexer.hpp"

namespace weft::lang {

namespace {

struct ParseAbort {};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diag>* diags)
      : toks_(std::move(toks)), diags_(diags) {}

  Program run() {
    Program p;
    while (!at_end()) {
      if (peek_ident("DRAM")) {
        parse_dram(p);
      } else if (peek_ident("void")) {
        parse_main(p);
      } else {
        fail("'DRAM' declaration or 'void main'");
      }
    }
    if (!saw_main_) fail_at(cur().loc, "program must define main");
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::vector<Diag>* diags_;
  size_t pos_ = 0;
  bool saw_main_ = false;

  const Token& cur() const { return toks_[pos_]; }
  const Token& next() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
  bool at_end() const { return cur().kind == Tok::End; }
  void bump() { if (!at_end()) ++pos_; }

  bool peek_ident(const std::string& s) const {
    return cur().kind == Tok::Ident && cur().text == s;
  }
  bool peek_punct(const std::string& s) const {
    return cur().kind == Tok::Punct && cur().text == s;
  }
  bool eat_ident(const std::string& s) {
    if (!peek_ident(s)) return false;
    bump();
    return true;
  }
  bool eat_punct(const std::string& s) {
    if (!peek_punct(s)) return false;
    bump();
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) {
    fail_at(cur().loc, "expected " + expected + ", got '" +
                           (at_end() ? std::string("<eof>") : cur().text) +
                           "'");
  }
  [[noreturn]] void fail_at(SrcLoc loc, const std::string& msg) {
    diags_->push_back({loc, msg});
    throw ParseAbort{};
  }

  void expect_punct(const std::string& s) {
    if (!eat_punct(s)) fail("'" + s + "'");
  }
  std::string expect_ident() {
    if (cur().kind != Tok::Ident) fail("identifier");
    std::string s = cur().text;
    bump();
    return s;
  }
  int32_t expect_int() {
    bool neg = eat_punct("-");
    if (cur().kind != Tok::Int) fail("integer literal");
    int32_t v = cur().value;
    bump();
    return neg ? -v : v;
  }

  static bool scalar_type_name(const std::string& s, Width* w) {
    if (s == "int" || s == "int32") { *w = Width::I32; return true; }
    if (s == "int16") { *w = Width::I16; return true; }
    if (s == "int8" || s == "char") { *w = Width::I8; return true; }
    return false;
  }

  bool peek_scalar_type() const {
    Width w;
    return cur().kind == Tok::Ident && scalar_type_name(cur().text, &w);
  }

  Width expect_scalar_type() {
    Width w;
    if (cur().kind != Tok::Ident || !scalar_type_name(cur().text, &w))
      fail("scalar type");
    bump();
    return w;
  }

  void parse_dram(Program& p) {
    bump();  // DRAM
    expect_punct("<");
    Width w = expect_scalar_type();
    expect_punct(">");
    std::string name = expect_ident();
    expect_punct(";");
    p.drams.push_back({name, w});
  }

  void parse_main(Program& p) {
    bump();  // void
    if (expect_ident() != "main") fail_at(cur().loc, "expected 'main'");
    saw_main_ = true;
    expect_punct("(");
    if (!peek_punct(")")) {
      do {
        expect_scalar_type();
        p.params.push_back(expect_ident());
      } while (eat_punct(","));
    }
    expect_punct(")");
    p.body = parse_block();
  }

  std::vector<StmtP> parse_block() {
    expect_punct("{");
    std::vector<StmtP> out;
    while (!peek_punct("}")) {
      if (at_end()) fail("'}'");
      out.push_back(parse_stmt());
    }
    bump();  // }
    return out;
  }

  std::vector<StmtP> parse_block_with_semi() {
    auto b = parse_block();
    eat_punct(";");
    return b;
  }

  StmtP mk_stmt(StKind k) {
    auto s = std::make_unique<Stmt>();
    s->k = k;
    s->loc = cur().loc;
    return s;
  }

  StmtP parse_stmt() {
    SrcLoc loc = cur().loc;
    if (peek_ident("if")) return parse_if();
    if (peek_ident("while")) return parse_while();
    if (peek_ident("foreach")) return parse_foreach();
    if (peek_ident("replicate")) return parse_replicate();
    if (peek_ident("exit")) {
      auto s = mk_stmt(StKind::Exit);
      bump();
      if (eat_punct("(")) expect_punct(")");
      expect_punct(";");
      return s;
    }
    if (peek_ident("return")) {
      auto s = mk_stmt(StKind::Return);
      bump();
      if (!peek_punct(";")) s->a = parse_expr();
      expect_punct(";");
      return s;
    }
    if (peek_ident("pragma")) {
      auto s = mk_stmt(StKind::Pragma);
      bump();
      expect_punct("(");
      s->name = expect_ident();
      if (eat_punct(",")) s->degree = expect_int();
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    if (peek_ident("free")) {
      auto s = mk_stmt(StKind::Free);
      bump();
      expect_punct("(");
      s->name = expect_ident();
      expect_punct(",");
      s->a = parse_expr();
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    if (peek_ident("atomic")) {
      auto s = mk_stmt(StKind::AtomicRmw);
      bump();
      expect_punct("(");
      RedOp op;
      std::string opname = cur().text;
      bump();
      if (!redop_from_name(opname, &op)) fail_at(loc, "reduction operator");
      s->red = op;
      expect_punct(",");
      s->name = expect_ident();
      expect_punct(",");
      s->a = parse_expr();
      expect_punct(",");
      s->b = parse_expr();
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    if (peek_ident("store_if")) {
      auto s = mk_stmt(StKind::MemStore);
      bump();
      expect_punct("(");
      s->pred = parse_expr();
      expect_punct(")");
      s->name = expect_ident();
      if (eat_punct(".")) { if (expect_ident() != "w") fail("'w'"); s->wordwise = true; }
      expect_punct("[");
      s->a = parse_expr();
      expect_punct("]");
      expect_punct("=");
      s->b = parse_expr();
      expect_punct(";");
      return s;
    }
    if (peek_ident("bulk_load") || peek_ident("bulk_store")) {
      bool load = peek_ident("bulk_load");
      auto s = mk_stmt(load ? StKind::BulkLoad : StKind::BulkStore);
      bump();
      expect_punct("(");
      s->name = expect_ident();   // destination memory (load) / dram (store)
      expect_punct(",");
      s->a = parse_expr();        // its base
      expect_punct(",");
      s->name2 = expect_ident();  // source dram (load) / memory (store)
      expect_punct(",");
      s->b = parse_expr();        // its base
      expect_punct(",");
      s->c = parse_expr();        // element count
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    // Adapter declarations.
    if (peek_ident("SRAM")) return parse_sram_decl();
    for (const char* vk : {"ReadView", "WriteView", "ModifyView"})
      if (peek_ident(vk)) return parse_adapter_decl(TyKind::View);
    for (const char* ik : {"ReadIt", "PeekReadIt", "WriteIt", "ManualWriteIt"})
      if (peek_ident(ik)) return parse_adapter_decl(TyKind::Iter);
    // Scalar declarations.
    if (peek_scalar_type()) {
      Width w = expect_scalar_type();
      auto s = mk_stmt(StKind::Decl);
      s->loc = loc;
      s->name = expect_ident();
      s->decl_type = Type::scalar(w);
      if (eat_punct("=")) {
        if (peek_ident("fork")) {
          bump();
          s->k = StKind::ForkBind;
          expect_punct("(");
          s->a = parse_expr();
          expect_punct(")");
        } else {
          s->a = parse_expr();
        }
      }
      expect_punct(";");
      return s;
    }
    // Assignment / iterator statements / expression statements.
    if (cur().kind == Tok::Ident || peek_punct("*")) {
      return parse_assign_like();
    }
    fail("statement");
  }

  StmtP parse_sram_decl() {
    auto s = mk_stmt(StKind::Decl);
    bump();  // SRAM
    expect_punct("<");
    Width w = Width::I32;
    if (peek_scalar_type()) {
      w = expect_scalar_type();
      expect_punct(",");
    }
    int32_t size = expect_int();
    expect_punct(">");
    s->name = expect_ident();
    if (eat_punct("(")) expect_punct(")");
    expect_punct(";");
    s->decl_type = Type{TyKind::Sram, w, size, AdapterMode::None};
    return s;
  }

  StmtP parse_adapter_decl(TyKind kind) {
    auto s = mk_stmt(StKind::Decl);
    std::string kw = expect_ident();
    expect_punct("<");
    int32_t size = expect_int();
    expect_punct(">");
    s->name = expect_ident();
    expect_punct("(");
    s->name2 = expect_ident();  // dram
    expect_punct(",");
    s->a = parse_expr();        // base tile (views) / seek element (iterators)
    expect_punct(")");
    expect_punct(";");
    AdapterMode m = AdapterMode::None;
    if (kw == "ReadView") m = AdapterMode::Read;
    else if (kw == "WriteView") m = AdapterMode::Write;
    else if (kw == "ModifyView") m = AdapterMode::Modify;
    else if (kw == "ReadIt") m = AdapterMode::ReadIt;
    else if (kw == "PeekReadIt") m = AdapterMode::PeekReadIt;
    else if (kw == "WriteIt") m = AdapterMode::WriteIt;
    else m = AdapterMode::ManualWriteIt;
    s->decl_type = Type{kind, Width::I32, size, m};  // element width from dram
    return s;
  }

  StmtP parse_if() {
    auto s = mk_stmt(StKind::If);
    bump();
    expect_punct("(");
    s->a = parse_expr();
    expect_punct(")");
    s->body = parse_block();
    if (eat_punct(";")) {
      // `};` closes an else-less if
    } else if (eat_ident("else")) {
      s->els = parse_block_with_semi();
    }
    return s;
  }

  StmtP parse_while() {
    auto s = mk_stmt(StKind::While);
    bump();
    expect_punct("(");
    s->a = parse_expr();
    expect_punct(")");
    s->body = parse_block_with_semi();
    return s;
  }

  StmtP parse_foreach() {
    auto s = mk_stmt(StKind::Foreach);
    bump();
    expect_punct("(");
    s->a = parse_expr();
    if (eat_ident("by")) s->b = parse_expr();
    expect_punct(")");
    if (eat_ident("reduce")) {
      expect_punct("(");
      RedOp op;
      std::string opname = cur().text;
      bump();
      if (!redop_from_name(opname, &op)) fail("reduction operator");
      s->red = op;
      s->reducing = true;
      expect_punct(")");
      expect_scalar_type();
      s->name2 = expect_ident();  // reduction result name
    }
    expect_punct("{");
    if (peek_scalar_type()) {
      expect_scalar_type();
      s->name = expect_ident();
      expect_punct("=>");
    } else {
      s->name = "";
    }
    while (!peek_punct("}")) {
      if (at_end()) fail("'}'");
      s->body.push_back(parse_stmt());
    }
    bump();
    eat_punct(";");
    return s;
  }

  StmtP parse_replicate() {
    auto s = mk_stmt(StKind::Replicate);
    bump();
    expect_punct("(");
    s->degree = expect_int();
    expect_punct(")");
    s->body = parse_block_with_semi();
    return s;
  }

  StmtP parse_assign_like() {
    auto s = mk_stmt(StKind::Assign);
    if (eat_punct("*")) {
      // *it = e;
      auto lhs = std::make_unique<Expr>();
      lhs->k = ExKind::Deref;
      lhs->loc = s->loc;
      lhs->name = expect_ident();
      s->a = std::move(lhs);
      expect_punct("=");
      s->b = parse_expr();
      expect_punct(";");
      return s;
    }
    std::string name = expect_ident();
    if (eat_punct("++")) {
      s->k = StKind::IterInc;
      s->name = name;
      expect_punct(";");
      return s;
    }
    if (peek_punct(".") && next().text == "advance") {
      bump();  // .
      bump();  // advance
      s->k = StKind::IterAdvance;
      s->name = name;
      expect_punct("(");
      s->a = parse_expr();
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    bool word = false;
    if (peek_punct(".") && next().text == "w") {
      bump();
      bump();
      word = true;
    }
    if (eat_punct("[")) {
      auto lhs = std::make_unique<Expr>();
      lhs->k = ExKind::Index;
      lhs->loc = s->loc;
      lhs->name = name;
      lhs->wordwise = word;
      lhs->args.push_back(parse_expr());
      expect_punct("]");
      s->a = std::move(lhs);
      expect_punct("=");
      s->b = parse_expr();
      expect_punct(";");
      return s;
    }
    if (eat_punct("=")) {
      auto lhs = std::make_unique<Expr>();
      lhs->k = ExKind::Var;
      lhs->loc = s->loc;
      lhs->name = name;
      s->a = std::move(lhs);
      s->b = parse_expr();
      expect_punct(";");
      return s;
    }
    fail("'=', '[' or '++' after identifier");
  }

  // --- expressions -----------------------------------------------------

  ExprP parse_expr() { return parse_bin(0); }

  struct OpLevel {
    const char* text;
    BinOp op;
    int prec;
  };

  static const OpLevel* binop_table(size_t* n) {
    static const OpLevel t[] = {
        {"||", BinOp::LOr, 1},  {"&&", BinOp::LAnd, 2}, {"|", BinOp::Or, 3},
        {"^", BinOp::Xor, 4},   {"&", BinOp::And, 5},   {"==", BinOp::Eq, 6},
        {"!=", BinOp::Ne, 6},   {"<", BinOp::Lt, 7},    {"<=", BinOp::Le, 7},
        {">", BinOp::Gt, 7},    {">=", BinOp::Ge, 7},   {"<<", BinOp::Shl, 8},
        {">>", BinOp::Shr, 8},  {"+", BinOp::Add, 9},   {"-", BinOp::Sub, 9},
        {"*", BinOp::Mul, 10},  {"/", BinOp::Div, 10},  {"%", BinOp::Rem, 10},
    };
    *n = sizeof(t) / sizeof(t[0]);
    return t;
  }

  ExprP parse_bin(int min_prec) {
    ExprP lhs = parse_unary();
    for (;;) {
      if (cur().kind != Tok::Punct) return lhs;
      size_t n;
      const OpLevel* t = binop_table(&n);
      const OpLevel* found = nullptr;
      for (size_t i = 0; i < n; ++i)
        if (cur().text == t[i].text) { found = &t[i]; break; }
      if (!found || found->prec < min_prec) return lhs;
      SrcLoc loc = cur().loc;
      bump();
      ExprP rhs = parse_bin(found->prec + 1);
      ExprP e = mk_bin(found->op, std::move(lhs), std::move(rhs));
      e->loc = loc;
      lhs = std::move(e);
    }
  }

  ExprP parse_unary() {
    SrcLoc loc = cur().loc;
    if (eat_punct("-")) {
      ExprP e = mk_un(UnOp::Neg, parse_unary());
      e->loc = loc;
      return e;
    }
    if (eat_punct("!")) {
      ExprP e = mk_un(UnOp::Not, parse_unary());
      e->loc = loc;
      return e;
    }
    if (eat_punct("~")) {
      ExprP e = mk_un(UnOp::BitNot, parse_unary());
      e->loc = loc;
      return e;
    }
    if (eat_punct("*")) {
      auto e = std::make_unique<Expr>();
      e->k = ExKind::Deref;
      e->loc = loc;
      e->name = expect_ident();
      return e;
    }
    return parse_postfix();
  }

  ExprP parse_postfix() {
    SrcLoc loc = cur().loc;
    if (cur().kind == Tok::Int) {
      ExprP e = mk_const(cur().value, loc);
      bump();
      return e;
    }
    if (eat_punct("(")) {
      ExprP e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (cur().kind != Tok::Ident) fail("expression");
    std::string name = expect_ident();

    // Builtin call forms.
    if (name == "select" && peek_punct("(")) {
      bump();
      ExprP c = parse_expr();
      expect_punct(",");
      ExprP a = parse_expr();
      expect_punct(",");
      ExprP b = parse_expr();
      expect_punct(")");
      ExprP e = mk_select(std::move(c), std::move(a), std::move(b));
      e->loc = loc;
      return e;
    }
    Width cw;
    if (scalar_type_name(name, &cw) && peek_punct("(")) {
      bump();
      ExprP a = parse_expr();
      expect_punct(")");
      ExprP e = mk_conv(cw, std::move(a));
      e->loc = loc;
      return e;
    }
    if (name == "alloc" && peek_punct("(")) {
      bump();
      auto e = std::make_unique<Expr>();
      e->k = ExKind::AllocP;
      e->loc = loc;
      e->name = expect_ident();
      expect_punct(")");
      return e;
    }
    if (name == "atomdec" && peek_punct("(")) {
      bump();
      auto e = std::make_unique<Expr>();
      e->k = ExKind::AtomicDec;
      e->loc = loc;
      e->name = expect_ident();
      expect_punct(",");
      e->args.push_back(parse_expr());
      expect_punct(")");
      return e;
    }
    if (name == "bits" && peek_punct("(")) {
      bump();
      auto e = std::make_unique<Expr>();
      e->k = ExKind::Bits;
      e->loc = loc;
      e->args.push_back(parse_expr());
      expect_punct(",");
      e->ival = expect_int();
      expect_punct(",");
      e->ival2 = expect_int();
      expect_punct(")");
      return e;
    }
    if (name == "setbits" && peek_punct("(")) {
      bump();
      auto e = std::make_unique<Expr>();
      e->k = ExKind::SetBits;
      e->loc = loc;
      e->args.push_back(parse_expr());
      expect_punct(",");
      e->ival = expect_int();
      expect_punct(",");
      e->ival2 = expect_int();
      expect_punct(",");
      e->args.push_back(parse_expr());
      expect_punct(")");
      return e;
    }

    // Postfix on identifiers.
    if (peek_punct(".") && next().text == "peek") {
      bump();
      bump();
      auto e = std::make_unique<Expr>();
      e->k = ExKind::Peek;
      e->loc = loc;
      e->name = name;
      expect_punct("(");
      e->args.push_back(parse_expr());
      expect_punct(")");
      return e;
    }
    bool word = false;
    if (peek_punct(".") && next().text == "w") {
      bump();
      bump();
      word = true;
    }
    if (eat_punct("[")) {
      auto e = std::make_unique<Expr>();
      e->k = ExKind::Index;
      e->loc = loc;
      e->name = name;
      e->wordwise = word;
      e->args.push_back(parse_expr());
      expect_punct("]");
      return e;
    }
    auto e = std::make_unique<Expr>();
    e->k = ExKind::Var;
    e->loc = loc;
    e->name = name;
    return e;
  }
};

}  // namespace

ParseResult parse(const std::string& source) {
  ParseResult r;
  std::vector<Token> toks = lex(source, &r.diags);
  if (!r.diags.empty()) return r;
  Parser p(std::move(toks), &r.diags);
  try {
    r.prog = p.run();
    r.ok = true;
  } catch (ParseAbort&) {
    r.ok = false;
  }
  return r;
}

Program parse_or_die(const std::string& source) {
  ParseResult r = parse(source);
  if (!r.ok) {
    std::string msg = "parse failed";
    for (const Diag& d : r.diags)
      msg += "\n  " + std::to_string(d.loc.line) + ":" +
             std::to_string(d.loc.col) + ": " + d.msg;
    throw CompileError(msg);
  }
  return std::move(r.prog);
}

}  // namespace weft::lang
