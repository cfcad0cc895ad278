#include "minik/parser.hpp"

#include <charconv>
#include <set>
#include <utility>

namespace minik {
namespace {

enum class Tok {
  Ident,
  Keyword,
  Int,
  String,
  Punct,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
  bool newline_before = false;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "open", "class", "interface", "private", "constructor", "fun", "val",   "var",
      "return", "if",  "else",      "out",     "in",          "as",  "is",    "this",
      "true",   "false"};
  return kw;
}

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool newline = true;
    for (;;) {
      // whitespace and line comments
      for (;;) {
        if (eof()) break;
        char c = src_[pos_];
        if (c == '\n') {
          newline = true;
          advance();
        } else if (c == ' ' || c == '\t' || c == '\r') {
          advance();
        } else if (c == '/' && peek(1) == '/') {
          while (!eof() && src_[pos_] != '\n') advance();
        } else {
          break;
        }
      }
      Token t;
      t.loc = here();
      t.newline_before = newline;
      newline = false;
      if (eof()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      char c = src_[pos_];
      if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (!eof() && is_ident_continue(src_[pos_])) advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = keywords().count(t.text) ? Tok::Keyword : Tok::Ident;
      } else if (c >= '0' && c <= '9') {
        std::size_t start = pos_;
        while (!eof() && src_[pos_] >= '0' && src_[pos_] <= '9') advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = Tok::Int;
      } else if (c == '"') {
        advance();
        t.kind = Tok::String;
        for (;;) {
          if (eof() || src_[pos_] == '\n') throw ParseError(t.loc, "unterminated string literal");
          char d = src_[pos_];
          advance();
          if (d == '"') break;
          if (d == '\\') {
            if (eof()) throw ParseError(t.loc, "unterminated string literal");
            char e = src_[pos_];
            advance();
            switch (e) {
              case 'n': t.text += '\n'; break;
              case 't': t.text += '\t'; break;
              case '"': t.text += '"'; break;
              case '\\': t.text += '\\'; break;
              default: throw ParseError(t.loc, std::string("unknown escape '\\") + e + "'");
            }
          } else {
            t.text += d;
          }
        }
      } else if (std::string_view("(){}<>[],:.=;?@").find(c) != std::string_view::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, c);
        advance();
      } else {
        throw ParseError(t.loc, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_continue(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

  [[nodiscard]] bool eof() const { return pos_ >= src_.size(); }
  [[nodiscard]] char peek(std::size_t k) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[nodiscard]] SourceLoc here() const { return SourceLoc{file_, line_, col_}; }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program(const std::string& file) {
    Program p;
    p.file = file;
    skip_semis();
    while (!at_end()) {
      p.decls.push_back(decl());
      end_of_item();
    }
    p.next_id = next_id_;
    return p;
  }

  TypeRef standalone_type() {
    TypeRef t = type();
    if (!at_end()) fail("expected end of type");
    return t;
  }

 private:
  // --- token helpers ---------------------------------------------------------

  [[nodiscard]] const Token& cur() const { return toks_[pos_]; }
  [[nodiscard]] bool at_end() const { return cur().kind == Tok::End; }
  [[nodiscard]] bool is_punct(const char* p) const {
    return cur().kind == Tok::Punct && cur().text == p;
  }
  [[nodiscard]] bool is_kw(const char* k) const {
    return cur().kind == Tok::Keyword && cur().text == k;
  }
  const Token& take() { return toks_[pos_++]; }

  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }
  bool accept_kw(const char* k) {
    if (!is_kw(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'");
    return take();
  }
  const Token& expect_kw(const char* k) {
    if (!is_kw(k)) fail(std::string("expected '") + k + "'");
    return take();
  }
  std::string expect_ident(const char* what = "identifier") {
    if (cur().kind != Tok::Ident) fail(std::string("expected ") + what);
    return take().text;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string found = at_end() ? "end of input" : "'" + cur().text + "'";
    if (cur().kind == Tok::String) found = "string literal";
    throw ParseError(cur().loc, msg + ", found " + found);
  }

  void skip_semis() {
    while (accept_punct(";")) {
    }
  }

  /// Declarations, members and statements end at a newline, `;`, `}` or EOF.
  void end_of_item() {
    if (at_end() || is_punct("}")) return;
    if (is_punct(";")) {
      skip_semis();
      return;
    }
    if (cur().newline_before) return;
    fail("expected newline or ';'");
  }

  // --- declarations ----------------------------------------------------------

  Decl decl() {
    if (is_kw("open") || is_kw("class") || is_kw("interface")) return class_decl();
    if (is_kw("fun")) return fun_decl();
    return StmtDecl{statement()};
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.loc = cur().loc;
    c.is_open = accept_kw("open");
    if (accept_kw("interface")) {
      if (c.is_open) fail("interfaces are always open");
      c.is_interface = true;
    } else {
      expect_kw("class");
    }
    c.name = expect_ident("class name");
    if (is_punct("<")) c.type_params = type_params(true);
    if (!c.is_interface && is_kw("private") && !cur().newline_before) {
      take();
      expect_kw("constructor");
      expect_punct("(");
      expect_punct(")");
      c.ctor_private = true;
    }
    if (accept_punct(":")) {
      do {
        SupertypeDecl s;
        s.loc = cur().loc;
        s.unsafe_variance = unsafe_variance_annotation();
        s.type = type();
        if (is_punct("(") && !cur().newline_before) {
          take();
          expect_punct(")");
          s.ctor_call = true;
        }
        c.supertypes.push_back(std::move(s));
      } while (accept_punct(","));
    }
    if (is_punct("{")) c.members = class_body();
    return c;
  }

  std::vector<Member> class_body() {
    expect_punct("{");
    std::vector<Member> members;
    skip_semis();
    while (!is_punct("}")) {
      if (at_end()) fail("expected '}'");
      if (is_kw("fun")) {
        members.emplace_back(fun_decl());
      } else if (is_kw("val") || is_kw("var")) {
        PropertyDecl prop;
        prop.loc = cur().loc;
        prop.is_mutable = take().text == "var";
        prop.name = expect_ident("property name");
        expect_punct(":");
        prop.unsafe_variance = unsafe_variance_annotation();
        prop.type = type();
        if (accept_punct("=")) prop.init = expression();
        members.emplace_back(std::move(prop));
      } else {
        fail("expected member declaration");
      }
      end_of_item();
    }
    expect_punct("}");
    return members;
  }

  bool unsafe_variance_annotation() {
    if (!is_punct("@")) return false;
    take();
    if (cur().kind != Tok::Ident || cur().text != "UnsafeVariance") {
      fail("only @UnsafeVariance is supported");
    }
    take();
    return true;
  }

  FunDecl fun_decl() {
    FunDecl f;
    f.loc = cur().loc;
    expect_kw("fun");
    if (is_punct("<")) f.type_params = type_params(false);
    f.name = expect_ident("function name");
    expect_punct("(");
    if (!is_punct(")")) {
      do {
        ParamDecl p;
        p.loc = cur().loc;
        p.name = expect_ident("parameter name");
        expect_punct(":");
        p.type = type();
        f.params.push_back(std::move(p));
      } while (accept_punct(","));
    }
    expect_punct(")");
    if (accept_punct(":")) f.return_type = type();
    if (is_punct("{")) f.body = block();
    return f;
  }

  std::vector<TypeParamDecl> type_params(bool allow_variance) {
    expect_punct("<");
    std::vector<TypeParamDecl> out;
    do {
      TypeParamDecl tp;
      tp.loc = cur().loc;
      if (is_kw("out") || is_kw("in")) {
        if (!allow_variance) fail("variance modifiers are only allowed on class type parameters");
        tp.variance = take().text == "out" ? Variance::Out : Variance::In;
      }
      tp.name = expect_ident("type parameter name");
      out.push_back(std::move(tp));
    } while (accept_punct(","));
    expect_punct(">");
    return out;
  }

  // --- types -----------------------------------------------------------------

  TypeRef type() {
    if (cur().kind != Tok::Ident) fail("expected type");
    std::string name = take().text;
    TypeRef t;
    if (name == "Any") {
      t = TypeRef::any();
      if (is_punct("?") && !cur().newline_before) {
        take();
        return TypeRef::any_nullable();
      }
    } else if (name == "Int") {
      t = TypeRef::int_();
    } else if (name == "String") {
      t = TypeRef::string();
    } else if (name == "Boolean") {
      t = TypeRef::boolean();
    } else if (name == "Unit") {
      t = TypeRef::unit();
    } else {
      t = TypeRef::make_class(name);
      if (is_punct("<") && !cur().newline_before) t.args = type_args();
    }
    if (is_punct("?") && !cur().newline_before) fail("nullable types other than Any? are not supported");
    if (!t.is_class() && is_punct("<") && !cur().newline_before) fail("'" + name + "' takes no type arguments");
    return t;
  }

  std::vector<TypeRef> type_args() {
    expect_punct("<");
    std::vector<TypeRef> args;
    do {
      args.push_back(type());
    } while (accept_punct(","));
    expect_punct(">");
    return args;
  }

  // --- statements ------------------------------------------------------------

  Block block() {
    Block b;
    b.loc = expect_punct("{").loc;
    skip_semis();
    while (!is_punct("}")) {
      if (at_end()) fail("expected '}'");
      b.stmts.push_back(statement());
      end_of_item();
    }
    expect_punct("}");
    return b;
  }

  Stmt statement() {
    Stmt s;
    s.loc = cur().loc;
    s.id = next_id_++;
    if (accept_kw("val")) {
      stmt::Val v;
      v.name = expect_ident("variable name");
      if (accept_punct(":")) v.declared_type = type();
      expect_punct("=");
      v.init = expression();
      s.node = std::move(v);
    } else if (is_kw("var")) {
      fail("local 'var' is not supported; use 'val'");
    } else if (accept_kw("return")) {
      s.node = stmt::Return{expression()};
    } else {
      ExprPtr e = expression();
      if (is_punct("=") && !cur().newline_before) {
        take();
        ExprPtr value = expression();
        e = assignment(std::move(e), std::move(value));
      }
      s.node = stmt::ExprStmt{std::move(e)};
    }
    return s;
  }

  ExprPtr assignment(ExprPtr target, ExprPtr value) {
    SourceLoc loc = target->loc;
    NodeId id = target->id;
    if (auto* pg = std::get_if<expr::PropertyGet>(&target->node)) {
      return make(loc, expr::PropertySet{std::move(pg->receiver), pg->name, std::move(value)}, id);
    }
    if (auto* ix = std::get_if<expr::Index>(&target->node)) {
      return make(loc, expr::IndexSet{std::move(ix->receiver), std::move(ix->index), std::move(value)},
                  id);
    }
    throw ParseError(loc, "invalid assignment target");
  }

  // --- expressions -----------------------------------------------------------

  template <class Node>
  ExprPtr make(SourceLoc loc, Node node, NodeId reuse = 0) {
    auto e = std::make_unique<Expr>();
    e->id = reuse ? reuse : next_id_++;
    e->loc = std::move(loc);
    e->node = std::move(node);
    return e;
  }

  ExprPtr expression() {
    ExprPtr e = cast_expr();
    while (is_kw("is") && !cur().newline_before) {
      take();
      SourceLoc loc = e->loc;
      TypeRef t = type();
      e = make(loc, expr::Is{std::move(e), std::move(t)});
    }
    return e;
  }

  ExprPtr cast_expr() {
    ExprPtr e = postfix();
    while (is_kw("as") && !cur().newline_before) {
      take();
      SourceLoc loc = e->loc;
      TypeRef t = type();
      e = make(loc, expr::As{std::move(e), std::move(t)});
    }
    return e;
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    for (;;) {
      if (is_punct(".")) {
        take();
        std::string name = expect_ident("member name");
        SourceLoc loc = e->loc;
        if (is_punct("(") && !cur().newline_before) {
          auto args = call_args();
          e = make(loc, expr::MethodCall{std::move(e), std::move(name), std::move(args)});
        } else {
          e = make(loc, expr::PropertyGet{std::move(e), std::move(name)});
        }
      } else if (is_punct("[") && !cur().newline_before) {
        take();
        ExprPtr index = expression();
        expect_punct("]");
        SourceLoc loc = e->loc;
        e = make(loc, expr::Index{std::move(e), std::move(index)});
      } else {
        return e;
      }
    }
  }

  std::vector<ExprPtr> call_args() {
    expect_punct("(");
    std::vector<ExprPtr> args;
    if (!is_punct(")")) {
      do {
        args.push_back(expression());
      } while (accept_punct(","));
    }
    expect_punct(")");
    return args;
  }

  ExprPtr primary() {
    const Token& t = cur();
    SourceLoc loc = t.loc;
    switch (t.kind) {
      case Tok::Int: {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{}) throw ParseError(loc, "integer literal out of range");
        take();
        return make(loc, expr::IntLit{v});
      }
      case Tok::String: {
        std::string s = take().text;
        return make(loc, expr::StringLit{std::move(s)});
      }
      case Tok::Keyword:
        if (accept_kw("true")) return make(loc, expr::BoolLit{true});
        if (accept_kw("false")) return make(loc, expr::BoolLit{false});
        if (accept_kw("this")) return make(loc, expr::VarRef{"this"});
        if (is_kw("if")) return if_expr();
        fail("expected expression");
      case Tok::Ident: {
        std::string name = take().text;
        std::vector<TypeRef> targs;
        if (is_punct("<") && !cur().newline_before) {
          targs = type_args();
          if (!is_punct("(")) fail("expected '(' after type arguments");
        }
        if (is_punct("(") && !cur().newline_before) {
          auto args = call_args();
          return make(loc, expr::Call{std::move(name), std::move(targs), std::move(args)});
        }
        return make(loc, expr::VarRef{std::move(name)});
      }
      case Tok::Punct:
        if (accept_punct("(")) {
          ExprPtr e = expression();
          expect_punct(")");
          return e;
        }
        fail("expected expression");
      case Tok::End: fail("expected expression");
    }
    fail("expected expression");
  }

  ExprPtr if_expr() {
    SourceLoc loc = expect_kw("if").loc;
    expect_punct("(");
    ExprPtr cond = expression();
    expect_punct(")");
    Block then_block = block();
    std::optional<Block> else_block;
    if (is_kw("else")) {
      SourceLoc else_loc = take().loc;
      if (is_kw("if")) {
        Block b;
        b.loc = else_loc;
        Stmt s;
        s.id = next_id_++;
        s.loc = cur().loc;
        s.node = stmt::ExprStmt{if_expr()};
        b.stmts.push_back(std::move(s));
        else_block = std::move(b);
      } else {
        else_block = block();
      }
    }
    return make(loc, expr::If{std::move(cond), std::move(then_block), std::move(else_block)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  NodeId next_id_ = 1;
};

}  // namespace

Program parse(std::string_view source, const std::string& file) {
  Parser parser(Lexer(source, file).run());
  return parser.program(file);
}

TypeRef parse_type(std::string_view source) {
  Parser parser(Lexer(source, "<type>").run());
  return parser.standalone_type();
}

}  // namespace minik
