#include <algorithm>
#include <cctype>
#include <set>

#include "qif/program.hpp"

namespace qif {

namespace {

enum class Tok {
  Int, Ident, KwIf, KwElse, KwParam, KwOutput,
  LParen, RParen, LBrace, RBrace, Semi,
  Plus, Minus, Star, Slash, Percent,
  Amp, Pipe, Caret, Shl, Shr, Tilde,
  EqEq, Ne, Lt, Le, Gt, Ge,
  End,
};

struct Token {
  Tok kind;
  std::uint64_t value = 0;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {  // line comment
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
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
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, line_, col_);
  }

  Token make(Tok k, std::size_t len) {
    Token t{k, 0, std::string(src_.substr(pos_, len)), line_, col_};
    pos_ += len;
    col_ += static_cast<int>(len);
    return t;
  }

  Token next() {
    if (pos_ >= src_.size()) return Token{Tok::End, 0, "", line_, col_};
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    auto two = [&](char second) {
      return pos_ + 1 < src_.size() && src_[pos_ + 1] == second;
    };
    switch (c) {
      case '(': return make(Tok::LParen, 1);
      case ')': return make(Tok::RParen, 1);
      case '{': return make(Tok::LBrace, 1);
      case '}': return make(Tok::RBrace, 1);
      case ';': return make(Tok::Semi, 1);
      case '+': return make(Tok::Plus, 1);
      case '-': return make(Tok::Minus, 1);
      case '*': return make(Tok::Star, 1);
      case '/': return make(Tok::Slash, 1);
      case '%': return make(Tok::Percent, 1);
      case '&': return make(Tok::Amp, 1);
      case '|': return make(Tok::Pipe, 1);
      case '^': return make(Tok::Caret, 1);
      case '~': return make(Tok::Tilde, 1);
      case '<':
        if (two('<')) return make(Tok::Shl, 2);
        if (two('=')) return make(Tok::Le, 2);
        return make(Tok::Lt, 1);
      case '>':
        if (two('>')) return make(Tok::Shr, 2);
        if (two('=')) return make(Tok::Ge, 2);
        return make(Tok::Gt, 1);
      case '=':
        if (two('=')) return make(Tok::EqEq, 2);
        fail("expected '==' (assignment is not part of the language)");
      case '!':
        if (two('=')) return make(Tok::Ne, 2);
        fail("expected '!='");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  Token number() {
    const int line = line_, col = col_;
    std::size_t i = pos_;
    unsigned __int128 v = 0;
    if (src_[i] == '0' && i + 1 < src_.size() &&
        (src_[i + 1] == 'x' || src_[i + 1] == 'X')) {
      i += 2;
      if (i >= src_.size() || !std::isxdigit(static_cast<unsigned char>(src_[i])))
        fail("hex literal needs at least one digit");
      for (; i < src_.size() && std::isxdigit(static_cast<unsigned char>(src_[i])); ++i) {
        const char d = src_[i];
        const int digit = std::isdigit(static_cast<unsigned char>(d))
                              ? d - '0'
                              : std::tolower(d) - 'a' + 10;
        v = v * 16 + digit;
        if (v > std::numeric_limits<std::uint64_t>::max())
          fail("integer literal does not fit in 64 bits");
      }
    } else {
      for (; i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i])); ++i) {
        v = v * 10 + (src_[i] - '0');
        if (v > std::numeric_limits<std::uint64_t>::max())
          fail("integer literal does not fit in 64 bits");
      }
    }
    Token t{Tok::Int, static_cast<std::uint64_t>(v),
            std::string(src_.substr(pos_, i - pos_)), line, col};
    col_ += static_cast<int>(i - pos_);
    pos_ = i;
    return t;
  }

  Token ident() {
    std::size_t i = pos_;
    while (i < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_'))
      ++i;
    const std::string_view word = src_.substr(pos_, i - pos_);
    Tok k = Tok::Ident;
    if (word == "if") k = Tok::KwIf;
    else if (word == "else") k = Tok::KwElse;
    else if (word == "param") k = Tok::KwParam;
    else if (word == "output") k = Tok::KwOutput;
    Token t{k, 0, std::string(word), line_, col_};
    col_ += static_cast<int>(i - pos_);
    pos_ = i;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

enum class Type { Int, Bool };

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ProgramAst run() {
    while (at(Tok::KwParam)) param_decl();
    if (at(Tok::KwOutput)) advance();
    auto root = expr();
    expect(Tok::End, "trailing input after the output expression");
    if (infer(*root) != Type::Int)
      throw TypeError("program output must be an integer expression");
    std::vector<std::string> params(params_.begin(), params_.end());
    return ProgramAst(std::move(root), std::move(params), uses_k_, uses_n_);
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token advance() { return toks_[i_++]; }

  Token expect(Tok k, const std::string& what) {
    if (!at(k))
      throw SyntaxError("expected " + what + ", found '" + peek().text + "'",
                        peek().line, peek().col);
    return advance();
  }

  void param_decl() {
    advance();  // param
    const Token name = expect(Tok::Ident, "parameter name");
    if (name.text == "A" || name.text == "N" || name.text == "K")
      throw SyntaxError("'" + name.text + "' is a builtin and cannot be a parameter",
                        name.line, name.col);
    params_.insert(name.text);
    expect(Tok::Semi, "';' after parameter declaration");
  }

  std::unique_ptr<Expr> expr() {
    if (at(Tok::KwIf)) return if_expr();
    return comparison();
  }

  std::unique_ptr<Expr> if_expr() {
    advance();  // if
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::If;
    node->a = comparison();
    expect(Tok::LBrace, "'{'");
    node->b = expr();
    expect(Tok::RBrace, "'}'");
    expect(Tok::KwElse, "'else'");
    if (at(Tok::KwIf)) {
      node->c = if_expr();
    } else {
      expect(Tok::LBrace, "'{'");
      node->c = expr();
      expect(Tok::RBrace, "'}'");
    }
    return node;
  }

  std::unique_ptr<Expr> comparison() {
    auto lhs = bit_or();
    Expr::Op op;
    switch (peek().kind) {
      case Tok::EqEq: op = Expr::Op::Eq; break;
      case Tok::Ne: op = Expr::Op::Ne; break;
      case Tok::Lt: op = Expr::Op::Lt; break;
      case Tok::Le: op = Expr::Op::Le; break;
      case Tok::Gt: op = Expr::Op::Gt; break;
      case Tok::Ge: op = Expr::Op::Ge; break;
      default: return lhs;
    }
    advance();
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::Binary;
    node->op = op;
    node->a = std::move(lhs);
    node->b = bit_or();
    return node;
  }

  std::unique_ptr<Expr> binary_chain(std::unique_ptr<Expr> (Parser::*sub)(),
                                     std::initializer_list<std::pair<Tok, Expr::Op>> ops) {
    auto lhs = (this->*sub)();
    while (true) {
      bool matched = false;
      for (const auto& [tok, op] : ops) {
        if (at(tok)) {
          advance();
          auto node = std::make_unique<Expr>();
          node->kind = Expr::Kind::Binary;
          node->op = op;
          node->a = std::move(lhs);
          node->b = (this->*sub)();
          lhs = std::move(node);
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  std::unique_ptr<Expr> bit_or() {
    return binary_chain(&Parser::bit_xor, {{Tok::Pipe, Expr::Op::Or}});
  }
  std::unique_ptr<Expr> bit_xor() {
    return binary_chain(&Parser::bit_and, {{Tok::Caret, Expr::Op::Xor}});
  }
  std::unique_ptr<Expr> bit_and() {
    return binary_chain(&Parser::shift, {{Tok::Amp, Expr::Op::And}});
  }
  std::unique_ptr<Expr> shift() {
    return binary_chain(&Parser::additive,
                        {{Tok::Shl, Expr::Op::Shl}, {Tok::Shr, Expr::Op::Shr}});
  }
  std::unique_ptr<Expr> additive() {
    return binary_chain(&Parser::multiplicative,
                        {{Tok::Plus, Expr::Op::Add}, {Tok::Minus, Expr::Op::Sub}});
  }
  std::unique_ptr<Expr> multiplicative() {
    return binary_chain(&Parser::unary, {{Tok::Star, Expr::Op::Mul},
                                         {Tok::Slash, Expr::Op::Div},
                                         {Tok::Percent, Expr::Op::Mod}});
  }

  std::unique_ptr<Expr> unary() {
    if (at(Tok::Minus) || at(Tok::Tilde)) {
      const Expr::Op op = at(Tok::Minus) ? Expr::Op::Neg : Expr::Op::BitNot;
      advance();
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Unary;
      node->op = op;
      node->a = unary();
      return node;
    }
    return primary();
  }

  std::unique_ptr<Expr> primary() {
    if (at(Tok::Int)) {
      const Token t = advance();
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Literal;
      node->value = t.value;
      return node;
    }
    if (at(Tok::Ident)) {
      const Token t = advance();
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Variable;
      node->name = t.text;
      if (t.text == "K") uses_k_ = true;
      else if (t.text == "N") uses_n_ = true;
      else if (t.text != "A") params_.insert(t.text);
      return node;
    }
    if (at(Tok::LParen)) {
      advance();
      auto inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at(Tok::KwIf)) return if_expr();
    throw SyntaxError("expected an expression, found '" + peek().text + "'",
                      peek().line, peek().col);
  }

  // Two-type discipline: comparisons give Bool and may only sit in `if`
  // conditions; everything else is Int.
  Type infer(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Literal:
      case Expr::Kind::Variable:
        return Type::Int;
      case Expr::Kind::Unary:
        if (infer(*e.a) != Type::Int)
          throw TypeError("unary operator needs an integer operand");
        return Type::Int;
      case Expr::Kind::Binary: {
        const bool cmp = e.op == Expr::Op::Eq || e.op == Expr::Op::Ne ||
                         e.op == Expr::Op::Lt || e.op == Expr::Op::Le ||
                         e.op == Expr::Op::Gt || e.op == Expr::Op::Ge;
        if (infer(*e.a) != Type::Int || infer(*e.b) != Type::Int)
          throw TypeError(cmp ? "comparison needs integer operands"
                              : "arithmetic needs integer operands");
        return cmp ? Type::Bool : Type::Int;
      }
      case Expr::Kind::If: {
        if (infer(*e.a) != Type::Bool)
          throw TypeError("if-condition must be a comparison");
        const Type t1 = infer(*e.b);
        const Type t2 = infer(*e.c);
        if (t1 != t2 || t1 != Type::Int)
          throw TypeError("if-branches must both be integer expressions");
        return Type::Int;
      }
    }
    return Type::Int;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::set<std::string> params_;
  bool uses_k_ = false;
  bool uses_n_ = false;
};

void pretty_expr(const Expr& e, std::string& out);

const char* op_text(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Div: return "/";
    case Expr::Op::Mod: return "%";
    case Expr::Op::And: return "&";
    case Expr::Op::Or: return "|";
    case Expr::Op::Xor: return "^";
    case Expr::Op::Shl: return "<<";
    case Expr::Op::Shr: return ">>";
    case Expr::Op::Eq: return "==";
    case Expr::Op::Ne: return "!=";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::Neg: return "-";
    case Expr::Op::BitNot: return "~";
  }
  return "?";
}

void pretty_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      out += std::to_string(e.value);
      break;
    case Expr::Kind::Variable:
      out += e.name;
      break;
    case Expr::Kind::Unary:
      out += op_text(e.op);
      out += '(';
      pretty_expr(*e.a, out);
      out += ')';
      break;
    case Expr::Kind::Binary:
      out += '(';
      pretty_expr(*e.a, out);
      out += ' ';
      out += op_text(e.op);
      out += ' ';
      pretty_expr(*e.b, out);
      out += ')';
      break;
    case Expr::Kind::If:
      out += "if ";
      pretty_expr(*e.a, out);
      out += " { ";
      pretty_expr(*e.b, out);
      out += " } else { ";
      pretty_expr(*e.c, out);
      out += " }";
      break;
  }
}

}  // namespace

std::unique_ptr<Expr> Expr::clone() const {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->value = value;
  e->name = name;
  e->op = op;
  if (a) e->a = a->clone();
  if (b) e->b = b->clone();
  if (c) e->c = c->clone();
  return e;
}

bool expr_equal(const Expr& x, const Expr& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expr::Kind::Literal: return x.value == y.value;
    case Expr::Kind::Variable: return x.name == y.name;
    case Expr::Kind::Unary:
      return x.op == y.op && expr_equal(*x.a, *y.a);
    case Expr::Kind::Binary:
      return x.op == y.op && expr_equal(*x.a, *y.a) && expr_equal(*x.b, *y.b);
    case Expr::Kind::If:
      return expr_equal(*x.a, *y.a) && expr_equal(*x.b, *y.b) &&
             expr_equal(*x.c, *y.c);
  }
  return false;
}

ProgramAst::ProgramAst(std::unique_ptr<Expr> root,
                       std::vector<std::string> params, bool uses_k,
                       bool uses_n)
    : root_(std::move(root)),
      params_(std::move(params)),
      uses_k_(uses_k),
      uses_n_(uses_n) {
  std::sort(params_.begin(), params_.end());
  params_.erase(std::unique(params_.begin(), params_.end()), params_.end());
}

ProgramAst::ProgramAst(const ProgramAst& other)
    : root_(other.root_->clone()),
      params_(other.params_),
      uses_k_(other.uses_k_),
      uses_n_(other.uses_n_) {}

ProgramAst& ProgramAst::operator=(const ProgramAst& other) {
  if (this != &other) {
    root_ = other.root_->clone();
    params_ = other.params_;
    uses_k_ = other.uses_k_;
    uses_n_ = other.uses_n_;
  }
  return *this;
}

std::string ProgramAst::pretty() const {
  std::string out;
  for (const auto& p : params_) {
    out += "param ";
    out += p;
    out += ";\n";
  }
  out += "output ";
  pretty_expr(*root_, out);
  return out;
}

ProgramAst parse_program(std::string_view text) {
  Lexer lex(text);
  Parser parser(lex.run());
  return parser.run();
}

}  // namespace qif
