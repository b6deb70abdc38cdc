#include "peval/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

#include "peval/builtins.hpp"

namespace peval {

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

enum class OpType { xfx, xfy, yfx, fy, fx };

struct OpDef {
  int priority;
  OpType type;
};

const std::map<std::string, OpDef, std::less<>>& infix_ops() {
  static const std::map<std::string, OpDef, std::less<>> ops = {
      {":-", {1200, OpType::xfx}}, {":", {1150, OpType::xfx}},   {";", {1100, OpType::xfy}},
      {",", {1000, OpType::xfy}},  {"=", {700, OpType::xfx}},    {"\\=", {700, OpType::xfx}},
      {"==", {700, OpType::xfx}},  {"\\==", {700, OpType::xfx}}, {"is", {700, OpType::xfx}},
      {"=<", {700, OpType::xfx}},  {"<", {700, OpType::xfx}},    {">", {700, OpType::xfx}},
      {">=", {700, OpType::xfx}},  {"=:=", {700, OpType::xfx}},  {"=\\=", {700, OpType::xfx}},
      {"+", {500, OpType::yfx}},   {"-", {500, OpType::yfx}},    {"*", {400, OpType::yfx}},
      {"/", {400, OpType::yfx}},   {"//", {400, OpType::yfx}},   {"mod", {400, OpType::yfx}},
  };
  return ops;
}

const std::map<std::string, OpDef, std::less<>>& prefix_ops() {
  static const std::map<std::string, OpDef, std::less<>> ops = {
      {":-", {1200, OpType::fx}},
      {"-", {200, OpType::fy}},
  };
  return ops;
}

std::optional<OpDef> find_op(const std::map<std::string, OpDef, std::less<>>& ops,
                             std::string_view name) {
  auto it = ops.find(name);
  if (it == ops.end()) return std::nullopt;
  return it->second;
}

bool is_symbol_char(char c) {
  switch (c) {
    case '+': case '-': case '*': case '/': case '\\': case '^': case '<': case '>':
    case '=': case '~': case ':': case '.': case '?': case '@': case '#': case '&':
    case '$':
      return true;
    default:
      return false;
  }
}

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// --------------------------------------------------------------------- lexer

struct Token {
  enum class Kind { Name, Var, Int, Punct, End, Eof };
  Kind kind = Kind::Eof;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
  bool layout_before = false;
  bool quoted = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    bool layout = skip_layout();
    Token t;
    t.line = line_;
    t.column = col_;
    t.layout_before = layout;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      std::string_view digits = src_.substr(start, pos_ - start);
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.value);
      if (ec != std::errc{}) throw ParseError(t.line, t.column, "integer out of range");
      t.kind = Token::Kind::Int;
      t.text = std::string(digits);
      return t;
    }
    if (c == '_' || std::isupper(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::Var;
      t.text = take_while(is_alnum);
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::Name;
      t.text = take_while(is_alnum);
      return t;
    }
    if (c == '\'') {
      t.kind = Token::Kind::Name;
      t.quoted = true;
      t.text = quoted_name(t);
      return t;
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == '|' || c == ',') {
      advance();
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      return t;
    }
    if (c == ';' || c == '!') {
      advance();
      t.kind = Token::Kind::Name;
      t.text = std::string(1, c);
      return t;
    }
    if (c == '.' && (pos_ + 1 >= src_.size() || std::isspace(static_cast<unsigned char>(src_[pos_ + 1])) ||
                     src_[pos_ + 1] == '%')) {
      advance();
      t.kind = Token::Kind::End;
      t.text = ".";
      return t;
    }
    if (is_symbol_char(c)) {
      t.kind = Token::Kind::Name;
      t.text = take_while(is_symbol_char);
      return t;
    }
    throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool skip_layout() {
    bool any = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        any = true;
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        any = true;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        int l = line_, k = col_;
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= src_.size()) throw ParseError(l, k, "unterminated block comment");
        advance();
        advance();
        any = true;
      } else {
        break;
      }
    }
    return any;
  }

  template <class Pred>
  std::string take_while(Pred p) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && p(src_[pos_])) advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string quoted_name(const Token& t) {
    advance();
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) throw ParseError(t.line, t.column, "unterminated quoted atom");
      char c = src_[pos_];
      if (c == '\'') {
        advance();
        if (pos_ < src_.size() && src_[pos_] == '\'') {
          out.push_back('\'');
          advance();
          continue;
        }
        return out;
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        advance();
        char e = src_[pos_];
        out.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
        advance();
        continue;
      }
      out.push_back(c);
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// -------------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::string_view src, VarGen& gen) : lex_(src), gen_(gen) { tok_ = lex_.next(); }

  const Token& peek() const { return tok_; }
  bool at_eof() const { return tok_.kind == Token::Kind::Eof; }

  Token take() {
    Token t = std::move(tok_);
    tok_ = lex_.next();
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw ParseError(t.line, t.column, what);
  }

  void expect_punct(const char* p) {
    if (tok_.kind != Token::Kind::Punct || tok_.text != p)
      fail(tok_, std::string("expected '") + p + "'");
    take();
  }

  void expect_end() {
    if (tok_.kind != Token::Kind::End) fail(tok_, "expected '.' at end of clause");
    take();
  }

  void reset_scope() { names_.clear(); ordered_names_.clear(); }
  const std::vector<std::pair<std::string, VarId>>& names() const { return ordered_names_; }

  Term parse(int max_prec) {
    int left_prec = 0;
    Term left = parse_primary(max_prec, left_prec);
    return parse_infix(std::move(left), left_prec, max_prec);
  }

 private:
  bool starts_term(const Token& t) const {
    switch (t.kind) {
      case Token::Kind::Name:
      case Token::Kind::Var:
      case Token::Kind::Int:
        return !(t.kind == Token::Kind::Name && !t.quoted && find_op(infix_ops(), t.text) &&
                 !find_op(prefix_ops(), t.text));
      case Token::Kind::Punct:
        return t.text == "(" || t.text == "[";
      default:
        return false;
    }
  }

  Term variable(const Token& t) {
    if (t.text == "_") return gen_.fresh("_");
    auto it = names_.find(t.text);
    if (it != names_.end()) return it->second;
    Term v = gen_.fresh(t.text);
    names_.emplace(t.text, v);
    ordered_names_.emplace_back(t.text, v.var_id());
    return v;
  }

  std::vector<Term> arg_list() {
    std::vector<Term> args;
    args.push_back(parse(999));
    while (tok_.kind == Token::Kind::Punct && tok_.text == ",") {
      take();
      args.push_back(parse(999));
    }
    return args;
  }

  Term parse_list() {
    if (tok_.kind == Token::Kind::Punct && tok_.text == "]") {
      take();
      return Term::nil();
    }
    std::vector<Term> items = arg_list();
    std::optional<Term> tail;
    if (tok_.kind == Token::Kind::Punct && tok_.text == "|") {
      take();
      tail = parse(999);
    }
    expect_punct("]");
    return Term::list(items, tail);
  }

  Term parse_primary(int max_prec, int& prec) {
    Token t = take();
    prec = 0;
    switch (t.kind) {
      case Token::Kind::Int:
        return Term::integer(t.value);
      case Token::Kind::Var:
        return variable(t);
      case Token::Kind::Punct:
        if (t.text == "(") {
          Term inner = parse(1200);
          expect_punct(")");
          return inner;
        }
        if (t.text == "[") return parse_list();
        fail(t, "unexpected '" + t.text + "'");
      case Token::Kind::Name:
        break;
      case Token::Kind::End:
        fail(t, "unexpected end of clause");
      case Token::Kind::Eof:
        fail(t, "unexpected end of input");
    }
    if (tok_.kind == Token::Kind::Punct && tok_.text == "(" && !tok_.layout_before) {
      take();
      std::vector<Term> args = arg_list();
      expect_punct(")");
      return Term::compound(t.text, std::move(args));
    }
    if (!t.quoted) {
      if (t.text == "-" && tok_.kind == Token::Kind::Int && !tok_.layout_before) {
        Token n = take();
        return Term::integer(-n.value);
      }
      if (auto op = find_op(prefix_ops(), t.text); op && starts_term(tok_)) {
        int p = op->priority;
        if (p > max_prec) p = 999;
        int arg_max = op->type == OpType::fy ? p : p - 1;
        Term arg = parse(arg_max);
        prec = p;
        return Term::compound(t.text, {std::move(arg)});
      }
    }
    return Term::constant(t.text);
  }

  Term parse_infix(Term left, int left_prec, int max_prec) {
    while (true) {
      std::string name;
      if (tok_.kind == Token::Kind::Name && !tok_.quoted) {
        name = tok_.text;
      } else if (tok_.kind == Token::Kind::Punct && tok_.text == ",") {
        name = ",";
      } else {
        break;
      }
      auto op = find_op(infix_ops(), name);
      if (!op || op->priority > max_prec) break;
      int p = op->priority;
      int left_max = op->type == OpType::yfx ? p : p - 1;
      int right_max = op->type == OpType::xfy ? p : p - 1;
      if (left_prec > left_max) break;
      take();
      Term right = parse(right_max);
      left = Term::compound(name, {std::move(left), std::move(right)});
      left_prec = p;
    }
    return left;
  }

  Lexer lex_;
  Token tok_;
  VarGen& gen_;
  std::map<std::string, Term> names_;
  std::vector<std::pair<std::string, VarId>> ordered_names_;
};

Atom to_atom(const Term& t, const Token& where, const char* what) {
  if (!t.is_struct())
    throw ParseError(where.line, where.column, std::string(what) + " must be a callable term");
  return Atom(t);
}

void flatten_conj(const Term& t, std::vector<Term>& out) {
  if (t.is_struct() && t.arity() == 2 && t.name() == ",") {
    flatten_conj(t.arg(0), out);
    flatten_conj(t.arg(1), out);
  } else {
    out.push_back(t);
  }
}

SCExpr to_sc(const Term& t, const Token& where) {
  if (t.is_struct() && t.arity() == 2 && t.name() == ",")
    return SCExpr::make_and(to_sc(t.arg(0), where), to_sc(t.arg(1), where));
  if (t.is_struct() && t.arity() == 2 && t.name() == ";")
    return SCExpr::make_or(to_sc(t.arg(0), where), to_sc(t.arg(1), where));
  return SCExpr::make_check(to_atom(t, where, "condition"));
}

void check_sc_vars(const SCExpr& e, const std::vector<VarId>& head_vars, const Token& where) {
  if (e.kind != SCExpr::Kind::Check) {
    check_sc_vars(*e.left, head_vars, where);
    check_sc_vars(*e.right, head_vars, where);
    return;
  }
  for (VarId v : vars_of(e.check->term()))
    if (std::find(head_vars.begin(), head_vars.end(), v) == head_vars.end())
      throw ParseError(where.line, where.column,
                       "eval condition uses a variable not in the assertion head");
}

}  // namespace

Program parse_program(std::string_view text) {
  VarGen gen(1);
  Parser ps(text, gen);
  Program prog;
  struct PendingEntry {
    Atom atom;
    Token where;
  };
  std::vector<PendingEntry> entries;

  while (!ps.at_eof()) {
    ps.reset_scope();
    Token start = ps.peek();
    if (start.kind == Token::Kind::Name && !start.quoted && start.text == ":-") {
      ps.take();
      Token kw = ps.take();
      if (kw.kind != Token::Kind::Name || (kw.text != "entry" && kw.text != "eval"))
        ps.fail(kw, "unknown directive (expected 'entry' or 'eval')");
      if (ps.peek().kind == Token::Kind::Punct && ps.peek().text == "(" &&
          !ps.peek().layout_before)
        ps.fail(kw, "directive keyword must be followed by a space");
      Term body = ps.parse(1200);
      ps.expect_end();
      if (kw.text == "entry") {
        entries.push_back({to_atom(body, kw, "entry"), kw});
      } else {
        if (!(body.is_struct() && body.arity() == 2 && body.name() == ":"))
          ps.fail(kw, "eval directive must have the form 'eval Head : Condition'");
        Atom head = to_atom(body.arg(0), kw, "eval head");
        SCExpr sc = to_sc(body.arg(1), kw);
        check_sc_vars(sc, vars_of(head.term()), kw);
        if (!Registry::defaults().contains(head.pred()))
          ps.fail(kw, "eval assertion for non-builtin predicate " + head.pred().str());
        try {
          prog.add_eval({std::move(head), std::move(sc), kw.line});
        } catch (const std::invalid_argument& e) {
          ps.fail(kw, e.what());
        }
      }
      continue;
    }

    Term t = ps.parse(1200);
    ps.expect_end();
    Clause c{Atom("true", {}), {}, start.line};
    if (t.is_struct() && t.arity() == 2 && t.name() == ":-") {
      c.head = to_atom(t.arg(0), start, "clause head");
      std::vector<Term> goals;
      flatten_conj(t.arg(1), goals);
      for (const Term& g : goals) {
        if (g.is_var()) ps.fail(start, "variable goals are not supported");
        Atom a = to_atom(g, start, "body goal");
        if (a.arity() == 0 && a.name() == "true") continue;
        c.body.push_back(std::move(a));
      }
    } else {
      c.head = to_atom(t, start, "clause");
    }
    if (Registry::defaults().contains(c.head.pred()))
      ps.fail(start, "cannot redefine builtin " + c.head.pred().str());
    prog.add_clause(std::move(c));
  }

  for (auto& e : entries) {
    if (!prog.defines(e.atom.pred()) && !Registry::defaults().contains(e.atom.pred()))
      throw ParseError(e.where.line, e.where.column,
                       "entry references unknown predicate " + e.atom.pred().str());
    for (VarId v : vars_of(e.atom.term())) prog.note_var_id(v);
    prog.add_entry(std::move(e.atom));
  }
  for (const auto& [k, a] : prog.evals())
    for (VarId v : vars_of(a.head.term())) prog.note_var_id(v);
  prog.note_var_id(gen.peek() - 1);
  return prog;
}

Query parse_query(std::string_view text, VarGen& gen) {
  Parser ps(text, gen);
  Token start = ps.peek();
  Term t = ps.parse(1200);
  if (ps.peek().kind == Token::Kind::End) ps.take();
  if (!ps.at_eof()) ps.fail(ps.peek(), "trailing input after query");
  Query q;
  std::vector<Term> goals;
  flatten_conj(t, goals);
  for (const Term& g : goals) {
    if (g.is_var()) ps.fail(start, "variable goals are not supported");
    Atom a = to_atom(g, start, "query goal");
    if (a.arity() == 0 && a.name() == "true") continue;
    q.goals.push_back(std::move(a));
  }
  q.names = ps.names();
  return q;
}

Term parse_term(std::string_view text, VarGen& gen) {
  Parser ps(text, gen);
  Term t = ps.parse(1200);
  if (ps.peek().kind == Token::Kind::End) ps.take();
  if (!ps.at_eof()) ps.fail(ps.peek(), "trailing input after term");
  return t;
}

Atom parse_atom(std::string_view text, VarGen& gen) {
  Term t = parse_term(text, gen);
  if (!t.is_struct()) throw ParseError(1, 1, "expected a callable term");
  return Atom(t);
}

// ------------------------------------------------------------------ renderer

namespace {

bool plain_name(const std::string& s) {
  if (s.empty()) return false;
  if (s == "[]" || s == "!" || s == ";") return true;
  if (std::islower(static_cast<unsigned char>(s[0])))
    return std::all_of(s.begin(), s.end(), is_alnum);
  return std::all_of(s.begin(), s.end(), is_symbol_char);
}

std::string quote_name(const std::string& s) {
  if (plain_name(s)) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

class Writer {
 public:
  explicit Writer(const VarNames& names) : names_(names) {}

  void write(const Term& t, int max_prec, std::string& out) const {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = names_.find(t.var_id());
        out += it != names_.end() ? it->second : "_G" + std::to_string(t.var_id());
        return;
      }
      case Term::Kind::Int:
        out += std::to_string(t.int_value());
        return;
      case Term::Kind::Struct:
        break;
    }
    if (t.is_cons()) {
      write_list(t, out);
      return;
    }
    if (t.arity() == 2) {
      if (auto op = find_op(infix_ops(), t.name())) {
        int p = op->priority;
        int lp = op->type == OpType::yfx ? p : p - 1;
        int rp = op->type == OpType::xfy ? p : p - 1;
        bool paren = p > max_prec;
        if (paren) out += '(';
        write(t.arg(0), lp, out);
        if (t.name() == ",") {
          out += ", ";
        } else {
          out += ' ';
          out += t.name();
          out += ' ';
        }
        write(t.arg(1), rp, out);
        if (paren) out += ')';
        return;
      }
    }
    std::string name = quote_name(t.name());
    if (t.arity() == 0) {
      if (max_prec < 1200 && (find_op(infix_ops(), t.name()) || find_op(prefix_ops(), t.name())) &&
          t.name() != "[]") {
        out += '(' + name + ')';
      } else {
        out += name;
      }
      return;
    }
    out += name;
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i) out += ',';
      write(t.arg(i), 999, out);
    }
    out += ')';
  }

 private:
  void write_list(const Term& t, std::string& out) const {
    out += '[';
    Term cur = t;
    bool first = true;
    while (cur.is_cons()) {
      if (!first) out += ',';
      first = false;
      write(cur.arg(0), 999, out);
      cur = cur.arg(1);
    }
    if (!cur.is_nil()) {
      out += '|';
      write(cur, 999, out);
    }
    out += ']';
  }

  const VarNames& names_;
};

std::string letter_name(std::size_t i) {
  std::string s(1, static_cast<char>('A' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

VarNames canonical_names(const Term& t) {
  VarNames names;
  std::size_t i = 0;
  for (VarId v : vars_of(t)) names.emplace(v, letter_name(i++));
  return names;
}

std::string render_sc(const SCExpr& e, const VarNames& names) {
  Writer w(names);
  std::string out;
  switch (e.kind) {
    case SCExpr::Kind::And:
      return "(" + render_sc(*e.left, names) + ", " + render_sc(*e.right, names) + ")";
    case SCExpr::Kind::Or:
      return "(" + render_sc(*e.left, names) + " ; " + render_sc(*e.right, names) + ")";
    case SCExpr::Kind::Check:
      w.write(e.check->term(), 999, out);
      return out;
  }
  return out;
}

}  // namespace

std::string render_term(const Term& t, const VarNames& names) {
  std::string out;
  Writer(names).write(t, 1200, out);
  return out;
}

std::string render_atom(const Atom& a, const VarNames& names) {
  std::string out;
  Writer(names).write(a.term(), 999, out);
  return out;
}

std::string render_clause(const Clause& c) {
  VarNames names = canonical_names(clause_term(c));
  Writer w(names);
  std::string out;
  w.write(c.head.term(), 999, out);
  if (!c.body.empty()) {
    out += " :-";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      out += "\n    ";
      w.write(c.body[i].term(), 999, out);
      if (i + 1 < c.body.size()) out += ',';
    }
  }
  out += ".\n";
  return out;
}

std::string render_program(const Program& p) {
  std::string out;
  for (const Atom& e : p.entries()) {
    VarNames names = canonical_names(e.term());
    std::string s;
    Writer(names).write(e.term(), 999, s);
    out += ":- entry " + s + ".\n";
  }
  for (const auto& [k, a] : p.evals()) {
    VarNames names = canonical_names(a.head.term());
    std::string s;
    Writer(names).write(a.head.term(), 1149, s);
    out += ":- eval " + s + " : " + render_sc(a.condition, names) + ".\n";
  }
  if (!out.empty() && !p.clauses().empty()) out += '\n';
  for (const Clause& c : p.clauses()) out += render_clause(c);
  return out;
}

}  // namespace peval
