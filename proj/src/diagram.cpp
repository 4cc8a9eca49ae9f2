#include "pudp/diagram.hpp"

#include <cctype>

#include "pudp/errors.hpp"

namespace pudp {

namespace {

struct Token {
  enum class Kind { name, semi, bar, lparen, rparen, lbrack, rbrack, comma, end };
  Kind kind;
  std::string text;
  int line, col;
};

bool reserved(const std::string& s) {
  return s == "id" || s == "sym" || s == "cap" || s == "cup" || s == "loop" || s == "repar";
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
    int line = line_, col = col_;
    if (pos_ >= s_.size()) return {Token::Kind::end, "", line, col};
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_')) {
        ++pos_;
        ++col_;
      }
      return {Token::Kind::name, std::string(s_.substr(start, pos_ - start)), line, col};
    }
    ++pos_;
    ++col_;
    switch (c) {
      case ';': return {Token::Kind::semi, ";", line, col};
      case '|': return {Token::Kind::bar, "|", line, col};
      case '(': return {Token::Kind::lparen, "(", line, col};
      case ')': return {Token::Kind::rparen, ")", line, col};
      case '[': return {Token::Kind::lbrack, "[", line, col};
      case ']': return {Token::Kind::rbrack, "]", line, col};
      case ',': return {Token::Kind::comma, ",", line, col};
      default:
        throw Error(Errc::syntax_error, line, col, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

std::shared_ptr<DiagramExpr> node(DiagramExpr::Kind kind, int line, int col) {
  auto e = std::make_shared<DiagramExpr>();
  e->kind = kind;
  e->line = line;
  e->col = col;
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  ExprPtr parse() {
    ExprPtr e = expr();
    if (tok_.kind != Token::Kind::end)
      throw Error(Errc::syntax_error, tok_.line, tok_.col, "trailing input");
    return e;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  Token expect(Token::Kind k, const char* what) {
    if (tok_.kind != k)
      throw Error(Errc::syntax_error, tok_.line, tok_.col, std::string("expected ") + what);
    Token t = tok_;
    advance();
    return t;
  }

  std::string expect_name(const char* what) {
    Token t = expect(Token::Kind::name, what);
    if (reserved(t.text))
      throw Error(Errc::syntax_error, t.line, t.col, "'" + t.text + "' is reserved");
    return t.text;
  }

  ExprPtr expr() {
    ExprPtr e = atom_seq();
    while (tok_.kind == Token::Kind::semi) {
      Token op = tok_;
      advance();
      auto n = node(DiagramExpr::Kind::seq, op.line, op.col);
      n->left = e;
      n->right = atom_seq();
      e = n;
    }
    return e;
  }

  ExprPtr atom_seq() {
    ExprPtr e = atom();
    while (tok_.kind == Token::Kind::bar) {
      Token op = tok_;
      advance();
      auto n = node(DiagramExpr::Kind::par, op.line, op.col);
      n->left = e;
      n->right = atom();
      e = n;
    }
    return e;
  }

  ExprPtr atom() {
    if (tok_.kind == Token::Kind::lparen) {
      advance();
      ExprPtr e = expr();
      expect(Token::Kind::rparen, "')'");
      return e;
    }
    Token t = expect(Token::Kind::name, "a name");
    if (!reserved(t.text)) {
      auto n = node(DiagramExpr::Kind::ref, t.line, t.col);
      n->name = t.text;
      return n;
    }
    if (t.text == "loop" || t.text == "repar") {
      auto n = node(t.text == "loop" ? DiagramExpr::Kind::loop : DiagramExpr::Kind::repar,
                    t.line, t.col);
      expect(Token::Kind::lbrack, "'['");
      n->name = expect_name(t.text == "loop" ? "a wire name" : "a repar name");
      expect(Token::Kind::rbrack, "']'");
      expect(Token::Kind::lparen, "'('");
      n->left = expr();
      expect(Token::Kind::rparen, "')'");
      return n;
    }
    DiagramExpr::Kind k = t.text == "id"    ? DiagramExpr::Kind::id
                          : t.text == "sym" ? DiagramExpr::Kind::sym
                          : t.text == "cap" ? DiagramExpr::Kind::cap
                                            : DiagramExpr::Kind::cup;
    auto n = node(k, t.line, t.col);
    expect(Token::Kind::lparen, "'('");
    n->name = expect_name("a poset name");
    if (k == DiagramExpr::Kind::sym) {
      expect(Token::Kind::comma, "','");
      n->name2 = expect_name("a poset name");
    }
    expect(Token::Kind::rparen, "')'");
    return n;
  }

  Lexer lex_;
  Token tok_{Token::Kind::end, "", 0, 0};
};

std::string print_node(const DiagramExpr& e) {
  auto wrap_if = [](bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; };
  switch (e.kind) {
    case DiagramExpr::Kind::ref: return e.name;
    case DiagramExpr::Kind::id: return "id(" + e.name + ")";
    case DiagramExpr::Kind::sym: return "sym(" + e.name + "," + e.name2 + ")";
    case DiagramExpr::Kind::cap: return "cap(" + e.name + ")";
    case DiagramExpr::Kind::cup: return "cup(" + e.name + ")";
    case DiagramExpr::Kind::loop:
      return "loop[" + e.name + "](" + print_node(*e.left) + ")";
    case DiagramExpr::Kind::repar:
      return "repar[" + e.name + "](" + print_node(*e.left) + ")";
    case DiagramExpr::Kind::seq: {
      std::string l = wrap_if(false, print_node(*e.left));  // seq is left-associative
      std::string r = wrap_if(e.right->kind == DiagramExpr::Kind::seq, print_node(*e.right));
      return l + " ; " + r;
    }
    case DiagramExpr::Kind::par: {
      std::string l =
          wrap_if(e.left->kind == DiagramExpr::Kind::seq, print_node(*e.left));
      std::string r = wrap_if(e.right->kind == DiagramExpr::Kind::seq ||
                                  e.right->kind == DiagramExpr::Kind::par,
                              print_node(*e.right));
      return l + " | " + r;
    }
  }
  return "?";
}

// Factor bookkeeping for loop: locate the unique wire in both interfaces.
struct WireSplit {
  std::vector<Poset> src_factors, tgt_factors;
  size_t src_index, tgt_index;
};

WireSplit resolve_wire(const Poset& src, const Poset& tgt, const std::string& wire,
                       int line, int col) {
  WireSplit w;
  try {
    w.src_factors = split_factors(src);
    w.tgt_factors = split_factors(tgt);
  } catch (const Error& err) {
    throw Error(Errc::type_mismatch, line, col,
                std::string("cannot split interface into factors: ") + err.what());
  }
  auto find_unique = [&](const std::vector<Poset>& fs, const char* side) {
    size_t found = fs.size();
    for (size_t i = 0; i < fs.size(); ++i)
      if (fs[i]->factor_names()[0] == wire) {
        if (found != fs.size())
          throw Error(Errc::type_mismatch, line, col,
                      "wire '" + wire + "' is ambiguous on the " + side + " side");
        found = i;
      }
    if (found == fs.size())
      throw Error(Errc::type_mismatch, line, col,
                  "no factor named '" + wire + "' on the " + side + " side");
    return found;
  };
  w.src_index = find_unique(w.src_factors, "input");
  w.tgt_index = find_unique(w.tgt_factors, "output");
  if (!poset_equal(*w.src_factors[w.src_index], *w.tgt_factors[w.tgt_index]))
    throw Error(Errc::type_mismatch, line, col,
                "wire '" + wire + "' has different posets on the two sides");
  return w;
}

std::vector<Poset> erase_at(std::vector<Poset> v, size_t i) {
  v.erase(v.begin() + static_cast<long>(i));
  return v;
}

ParamCell loop_cell_at(const ParamCell& cell, const std::string& wire, int line, int col) {
  WireSplit w = resolve_wire(cell.src, cell.tgt, wire, line, col);
  const size_t m = w.src_factors.size(), mt = w.tgt_factors.size();
  const Poset x = w.src_factors[w.src_index];
  const Poset xop = opposite(x);
  const Poset f0 = product_all(erase_at(w.src_factors, w.src_index));
  const Poset q0 = product_all(erase_at(w.tgt_factors, w.tgt_index));
  const MonadKind kind = cell.kind;

  // src-with-wire-last -> src.
  std::vector<Poset> src_rot = erase_at(w.src_factors, w.src_index);
  src_rot.push_back(x);
  std::vector<size_t> to_src(m);
  for (size_t k = 0; k < m; ++k)
    to_src[k] = k < w.src_index ? k : (k == w.src_index ? m - 1 : k - 1);
  ParamCell pre = include(kind, permutation_dp(src_rot, to_src));

  // tgt -> tgt-with-wire-last.
  std::vector<size_t> rot_tgt;
  for (size_t k = 0; k < mt; ++k)
    if (k != w.tgt_index) rot_tgt.push_back(k);
  rot_tgt.push_back(w.tgt_index);
  ParamCell post = include(kind, permutation_dp(w.tgt_factors, rot_tgt));

  ParamCell core = hcompose(hcompose(pre, cell), post);

  ParamCell open_wire = include(kind, tensor(identity_dp(f0), cap(x)));
  ParamCell braid = include(kind, tensor(identity_dp(f0), sym_dp(xop, x)));
  ParamCell tracked = tensor_cell(core, include(kind, identity_dp(xop)));
  ParamCell close_wire = include(kind, tensor(identity_dp(q0), cup(x)));
  return hcompose(hcompose(hcompose(open_wire, braid), tracked), close_wire);
}

template <class CellFn, class PosetFn>
CellInterface interface_of(const DiagramExpr& e, CellFn cell_iface, PosetFn poset_of) {
  switch (e.kind) {
    case DiagramExpr::Kind::ref: return cell_iface(e);
    case DiagramExpr::Kind::id: {
      Poset p = poset_of(e.name, e);
      return {ParamSpace(), p, p};
    }
    case DiagramExpr::Kind::sym: {
      Poset p = poset_of(e.name, e), q = poset_of(e.name2, e);
      return {ParamSpace(), product(p, q), product(q, p)};
    }
    case DiagramExpr::Kind::cap: {
      Poset p = poset_of(e.name, e);
      return {ParamSpace(), unit_poset(), product(opposite(p), p)};
    }
    case DiagramExpr::Kind::cup: {
      Poset p = poset_of(e.name, e);
      return {ParamSpace(), product(p, opposite(p)), unit_poset()};
    }
    default: break;
  }
  throw Error(Errc::invalid_value, "unreachable");
}

}  // namespace

ExprPtr parse_diagram(std::string_view text) { return Parser(text).parse(); }

std::string print_diagram(const DiagramExpr& e) { return print_node(e); }

bool expr_equal(const DiagramExpr& a, const DiagramExpr& b) {
  if (a.kind != b.kind || a.name != b.name || a.name2 != b.name2) return false;
  if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
  if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
  if (a.left && !expr_equal(*a.left, *b.left)) return false;
  if (a.right && !expr_equal(*a.right, *b.right)) return false;
  return true;
}

CellInterface typecheck_diagram(const DiagramExpr& e, const DiagramEnv& env) {
  auto poset_of = [&](const std::string& name, const DiagramExpr& at) {
    auto it = env.posets.find(name);
    if (it == env.posets.end())
      throw Error(Errc::unknown_name, at.line, at.col, "unknown poset '" + name + "'");
    return it->second;
  };
  switch (e.kind) {
    case DiagramExpr::Kind::seq: {
      CellInterface l = typecheck_diagram(*e.left, env);
      CellInterface r = typecheck_diagram(*e.right, env);
      if (!poset_equal(*l.tgt, *r.src))
        throw Error(Errc::type_mismatch, e.line, e.col,
                    "cannot compose: left side produces " + std::to_string(l.tgt->size()) +
                        " resource points, right side expects " +
                        std::to_string(r.src->size()) + "; posets differ");
      return {tensor(l.dom, r.dom), l.src, r.tgt};
    }
    case DiagramExpr::Kind::par: {
      CellInterface l = typecheck_diagram(*e.left, env);
      CellInterface r = typecheck_diagram(*e.right, env);
      return {tensor(l.dom, r.dom), product(l.src, r.src), product(l.tgt, r.tgt)};
    }
    case DiagramExpr::Kind::loop: {
      CellInterface in = typecheck_diagram(*e.left, env);
      WireSplit w = resolve_wire(in.src, in.tgt, e.name, e.line, e.col);
      return {in.dom, product_all(erase_at(w.src_factors, w.src_index)),
              product_all(erase_at(w.tgt_factors, w.tgt_index))};
    }
    case DiagramExpr::Kind::repar: {
      auto it = env.repars.find(e.name);
      if (it == env.repars.end())
        throw Error(Errc::unknown_name, e.line, e.col, "unknown repar '" + e.name + "'");
      CellInterface in = typecheck_diagram(*e.left, env);
      if (!space_equal(it->second.cod, in.dom))
        throw Error(Errc::type_mismatch, e.line, e.col,
                    "repar '" + e.name + "' targets a different parameter space");
      return {it->second.dom, in.src, in.tgt};
    }
    default:
      return interface_of(
          e,
          [&](const DiagramExpr& r) -> CellInterface {
            auto it = env.cells.find(r.name);
            if (it == env.cells.end())
              throw Error(Errc::unknown_name, r.line, r.col, "unknown cell '" + r.name + "'");
            return {it->second.dom, it->second.src, it->second.tgt};
          },
          poset_of);
  }
}

ParamCell eval_diagram(const DiagramExpr& e, const DiagramEnv& env) {
  auto poset_of = [&](const std::string& name, const DiagramExpr& at) {
    auto it = env.posets.find(name);
    if (it == env.posets.end())
      throw Error(Errc::unknown_name, at.line, at.col, "unknown poset '" + name + "'");
    return it->second;
  };
  switch (e.kind) {
    case DiagramExpr::Kind::ref: {
      auto it = env.cells.find(e.name);
      if (it == env.cells.end())
        throw Error(Errc::unknown_name, e.line, e.col, "unknown cell '" + e.name + "'");
      return it->second;
    }
    case DiagramExpr::Kind::id: return include(env.kind, identity_dp(poset_of(e.name, e)));
    case DiagramExpr::Kind::sym:
      return include(env.kind, sym_dp(poset_of(e.name, e), poset_of(e.name2, e)));
    case DiagramExpr::Kind::cap: return include(env.kind, cap(poset_of(e.name, e)));
    case DiagramExpr::Kind::cup: return include(env.kind, cup(poset_of(e.name, e)));
    case DiagramExpr::Kind::seq: {
      ParamCell l = eval_diagram(*e.left, env);
      ParamCell r = eval_diagram(*e.right, env);
      if (!poset_equal(*l.tgt, *r.src))
        throw Error(Errc::type_mismatch, e.line, e.col,
                    "cannot compose: interface posets differ");
      return hcompose(l, r);
    }
    case DiagramExpr::Kind::par:
      return tensor_cell(eval_diagram(*e.left, env), eval_diagram(*e.right, env));
    case DiagramExpr::Kind::loop:
      return loop_cell_at(eval_diagram(*e.left, env), e.name, e.line, e.col);
    case DiagramExpr::Kind::repar: {
      auto it = env.repars.find(e.name);
      if (it == env.repars.end())
        throw Error(Errc::unknown_name, e.line, e.col, "unknown repar '" + e.name + "'");
      ParamCell in = eval_diagram(*e.left, env);
      if (!space_equal(it->second.cod, in.dom))
        throw Error(Errc::type_mismatch, e.line, e.col,
                    "repar '" + e.name + "' targets a different parameter space");
      return reparametrize(in, it->second);
    }
  }
  throw Error(Errc::invalid_value, "unreachable");
}

ParamCell loop_cell(const ParamCell& cell, const std::string& wire) {
  return loop_cell_at(cell, wire, 0, 0);
}

}  // namespace pudp
