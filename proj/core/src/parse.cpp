#include "itl/parse.hpp"

#include <cctype>
#include <vector>

#include "itl/error.hpp"

namespace itl {

namespace {

struct Token {
  enum K { Ident, Sym, End } k;
  std::string text;
  size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '\'';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    size_t start = i;
    if (ident_start(c)) {
      size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), start});
      i = j;
      continue;
    }
    auto sym = [&](const char* t) {
      size_t n = std::string(t).size();
      if (s.compare(i, n, t) == 0) {
        out.push_back({Token::Sym, t, start});
        i += n;
        return true;
      }
      return false;
    };
    if (sym("<->") || sym("=>") || sym("->") || sym("(") || sym(")") || sym("<") || sym(">") ||
        sym(":") || sym(".") || sym(",") || sym("~") || sym("&") || sym("|") || sym("="))
      continue;
    throw SyntaxError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  size_t at = 0;
  const Signature* sig = nullptr;
  std::vector<Var> binders;  // innermost last
  const std::map<std::string, Type>* vars = nullptr;

  const Token& peek() const { return toks[at]; }
  Token next() { return toks[at++]; }
  bool is_sym(const char* t) const { return peek().k == Token::Sym && peek().text == t; }
  bool is_kw(const char* t) const { return peek().k == Token::Ident && peek().text == t; }
  bool eat_sym(const char* t) {
    if (!is_sym(t)) return false;
    ++at;
    return true;
  }
  void expect_sym(const char* t) {
    if (!eat_sym(t)) throw SyntaxError(std::string("expected '") + t + "'", peek().pos);
  }

  Type type() {
    if (peek().k == Token::Ident) {
      std::string n = next().text;
      return Type::basic(n);
    }
    if (eat_sym("<")) {
      std::vector<Type> args;
      while (!is_sym(">")) args.push_back(type());
      expect_sym(">");
      return Type::complex(std::move(args));
    }
    throw SyntaxError("expected a type", peek().pos);
  }

  bool kw_reserved(const std::string& n) const {
    return n == "lam" || n == "forall" || n == "exists" || n == "bot" || n == "top" ||
           n == "sub";
  }

  Term binder(const std::string& kw) {
    if (peek().k != Token::Ident) throw SyntaxError("expected binder name", peek().pos);
    std::string name = next().text;
    if (kw_reserved(name)) throw SyntaxError("keyword used as binder: " + name, peek().pos);
    expect_sym(":");
    Type ty = type();
    expect_sym(".");
    Var v{name, ty};
    binders.push_back(v);
    Term body = expr();
    binders.pop_back();
    if (kw == "lam") return mk_lam(v, body);
    if (kw == "forall") return mk_forall(v, body);
    return mk_exists(v, body);
  }

  Term atom() {
    if (peek().k == Token::Ident) {
      const std::string& n = peek().text;
      if (n == "bot") { ++at; return mk_bottom(); }
      if (n == "top") { ++at; return mk_top(); }
      if (n == "lam" || n == "forall" || n == "exists") {
        std::string kw = next().text;
        return binder(kw);
      }
      if (n == "sub") throw SyntaxError("misplaced 'sub'", peek().pos);
      size_t pos = peek().pos;
      std::string name = next().text;
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        if (it->name == name) return mk_var(*it);
      if (vars) {
        auto it = vars->find(name);
        if (it != vars->end()) return mk_var(Var{name, it->second});
      }
      auto it = sig->constants.find(name);
      if (it != sig->constants.end()) return mk_const(name, it->second);
      (void)pos;
      throw UndeclaredConstant(name);
    }
    if (eat_sym("(")) {
      Term t = expr();
      expect_sym(")");
      return t;
    }
    throw SyntaxError("expected a term", peek().pos);
  }

  bool atom_ahead() const {
    if (peek().k == Token::Ident) return !is_kw("sub");
    return is_sym("(");
  }

  Term app() {
    Term t = atom();
    while (atom_ahead()) t = mk_app(t, atom());
    return t;
  }

  Term cmp() {
    Term t = app();
    if (is_kw("sub")) {
      ++at;
      return mk_subset(t, app());
    }
    if (eat_sym("=")) return mk_eq(t, app());
    return t;
  }

  Term neg() {
    if (eat_sym("~")) return mk_not(neg());
    return cmp();
  }

  Term conj() {
    Term t = neg();
    while (eat_sym("&")) t = mk_and(t, neg());
    return t;
  }

  Term disj() {
    Term t = conj();
    while (eat_sym("|")) t = mk_or(t, conj());
    return t;
  }

  Term imp() {
    Term t = disj();
    if (eat_sym("->")) return mk_subset(t, imp());  // -> is sub at <>
    return t;
  }

  Term iff() {
    Term t = imp();
    while (eat_sym("<->")) t = mk_iff(t, imp());
    return t;
  }

  Term expr() { return iff(); }
};

}  // namespace

Type parse_type(const std::string& text) {
  Parser p{lex(text)};
  Type t = p.type();
  if (p.peek().k != Token::End) throw SyntaxError("trailing input after type", p.peek().pos);
  return t;
}

Term parse_term(const std::string& text, const Signature& sig,
                const std::map<std::string, Type>& vars) {
  Parser p{lex(text)};
  p.sig = &sig;
  p.vars = &vars;
  Term t = p.expr();
  if (p.peek().k != Token::End) throw SyntaxError("trailing input after term", p.peek().pos);
  return t;
}

Sequent parse_sequent(const std::string& text, const Signature& sig) {
  Parser p{lex(text)};
  p.sig = &sig;
  std::vector<Term> left, right;
  if (!p.is_sym("=>")) {
    left.push_back(p.expr());
    while (p.eat_sym(",")) left.push_back(p.expr());
  }
  p.expect_sym("=>");
  if (p.peek().k != Token::End) {
    right.push_back(p.expr());
    while (p.eat_sym(",")) right.push_back(p.expr());
  }
  if (p.peek().k != Token::End) throw SyntaxError("trailing input after sequent", p.peek().pos);
  return make_sequent(left, right);
}

Signature parse_signature(const std::string& text) {
  Signature sig;
  size_t line_start = 0;
  while (line_start <= text.size()) {
    size_t nl = text.find('\n', line_start);
    std::string line = text.substr(line_start, nl == std::string::npos ? nl : nl - line_start);
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    size_t a = line.find_first_not_of(" \t\r");
    if (a != std::string::npos) {
      Parser p{lex(line)};
      if (p.is_kw("type")) {
        ++p.at;
        if (p.peek().k != Token::Ident) throw SyntaxError("expected type name", p.peek().pos);
        std::string n = p.next().text;
        if (is_reserved_name(n)) throw SyntaxError("reserved type name: " + n, 0);
        sig.declare_basic(n);
      } else if (p.is_kw("const")) {
        ++p.at;
        if (p.peek().k != Token::Ident) throw SyntaxError("expected constant name", p.peek().pos);
        std::string n = p.next().text;
        if (is_reserved_name(n) || p.kw_reserved(n))
          throw SyntaxError("reserved constant name: " + n, 0);
        p.expect_sym(":");
        Type ty = p.type();
        if (p.peek().k != Token::End) throw SyntaxError("trailing input", p.peek().pos);
        sig.declare(n, ty);
      } else {
        throw SyntaxError("expected 'type' or 'const' line", 0);
      }
    }
    if (nl == std::string::npos) break;
    line_start = nl + 1;
  }
  return sig;
}

}  // namespace itl
