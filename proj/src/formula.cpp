#include "pudp/formula.hpp"

#include <algorithm>
#include <cctype>

#include "pudp/errors.hpp"

namespace pudp {

namespace {

struct Token {
  enum class Kind { num, name, plus, minus, star, lparen, rparen, comma, end };
  Kind kind;
  Rat value;
  std::string text;
  int col;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= s_.size()) return {Token::Kind::end, {}, "", col};
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw Error(Errc::syntax_error, 1, col, "malformed rational constant");
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      return {Token::Kind::num, rat_parse(s_.substr(start, pos_ - start)), "", col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return {Token::Kind::name, {}, std::string(s_.substr(start, pos_ - start)), col};
    }
    ++pos_;
    switch (c) {
      case '+': return {Token::Kind::plus, {}, "", col};
      case '-': return {Token::Kind::minus, {}, "", col};
      case '*': return {Token::Kind::star, {}, "", col};
      case '(': return {Token::Kind::lparen, {}, "", col};
      case ')': return {Token::Kind::rparen, {}, "", col};
      case ',': return {Token::Kind::comma, {}, "", col};
      default:
        throw Error(Errc::syntax_error, 1, col, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;
};

FormulaPtr mk(Formula::Op op, FormulaPtr l = nullptr, FormulaPtr r = nullptr) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr mk_num(Rat v) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::num;
  f->value = v;
  return f;
}

FormulaPtr mk_name(std::string n) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::name;
  f->name = std::move(n);
  return f;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  FormulaPtr parse() {
    FormulaPtr e = expr();
    expect(Token::Kind::end, "end of formula");
    return e;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (tok_.kind != k)
      throw Error(Errc::syntax_error, 1, tok_.col, std::string("expected ") + what);
    advance();
  }

  FormulaPtr expr() {
    FormulaPtr e = term();
    while (tok_.kind == Token::Kind::plus || tok_.kind == Token::Kind::minus) {
      auto op = tok_.kind == Token::Kind::plus ? Formula::Op::add : Formula::Op::sub;
      advance();
      e = mk(op, e, term());
    }
    return e;
  }

  FormulaPtr term() {
    FormulaPtr e = factor();
    while (tok_.kind == Token::Kind::star) {
      advance();
      e = mk(Formula::Op::mul, e, factor());
    }
    return e;
  }

  FormulaPtr factor() {
    switch (tok_.kind) {
      case Token::Kind::minus: {
        advance();
        return mk(Formula::Op::neg, factor());
      }
      case Token::Kind::num: {
        auto f = mk_num(tok_.value);
        advance();
        return f;
      }
      case Token::Kind::name: {
        std::string name = tok_.text;
        advance();
        if ((name == "max" || name == "min") && tok_.kind == Token::Kind::lparen) {
          advance();
          FormulaPtr a = expr();
          expect(Token::Kind::comma, "','");
          FormulaPtr b = expr();
          expect(Token::Kind::rparen, "')'");
          return mk(name == "max" ? Formula::Op::max_ : Formula::Op::min_, a, b);
        }
        return mk_name(std::move(name));
      }
      case Token::Kind::lparen: {
        advance();
        FormulaPtr e = expr();
        expect(Token::Kind::rparen, "')'");
        return e;
      }
      default:
        throw Error(Errc::syntax_error, 1, tok_.col, "expected a value");
    }
  }

  Lexer lex_;
  Token tok_{Token::Kind::end, {}, "", 0};
};

void collect_names(const Formula& f, std::vector<std::string>& out) {
  if (f.op == Formula::Op::name) {
    if (std::find(out.begin(), out.end(), f.name) == out.end()) out.push_back(f.name);
    return;
  }
  if (f.lhs) collect_names(*f.lhs, out);
  if (f.rhs) collect_names(*f.rhs, out);
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

Rat eval_formula(const Formula& f, const std::map<std::string, Rat>& env) {
  switch (f.op) {
    case Formula::Op::num: return f.value;
    case Formula::Op::name: {
      auto it = env.find(f.name);
      if (it == env.end()) throw Error(Errc::unknown_name, "unbound name '" + f.name + "'");
      return it->second;
    }
    case Formula::Op::add: return eval_formula(*f.lhs, env) + eval_formula(*f.rhs, env);
    case Formula::Op::sub: return eval_formula(*f.lhs, env) - eval_formula(*f.rhs, env);
    case Formula::Op::mul: return eval_formula(*f.lhs, env) * eval_formula(*f.rhs, env);
    case Formula::Op::neg: return -eval_formula(*f.lhs, env);
    case Formula::Op::max_: return std::max(eval_formula(*f.lhs, env), eval_formula(*f.rhs, env));
    case Formula::Op::min_: return std::min(eval_formula(*f.lhs, env), eval_formula(*f.rhs, env));
  }
  throw Error(Errc::invalid_value, "bad formula node");
}

std::vector<std::string> formula_names(const Formula& f) {
  std::vector<std::string> out;
  collect_names(f, out);
  return out;
}

}  // namespace pudp
