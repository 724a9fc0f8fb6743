#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qif/distribution.hpp"
#include "qif/errors.hpp"

namespace qif {

/// Expression tree for the program DSL. Values are unsigned 64-bit
/// integers with wrap-around arithmetic; comparisons produce booleans,
/// which only appear as `if` conditions.
struct Expr {
  enum class Kind { Literal, Variable, Unary, Binary, If };
  enum class Op {
    Add, Sub, Mul, Div, Mod,
    And, Or, Xor, Shl, Shr,
    Eq, Ne, Lt, Le, Gt, Ge,
    Neg, BitNot,
  };

  Kind kind;
  std::uint64_t value = 0;     // Literal
  std::string name;            // Variable
  Op op = Op::Add;             // Unary / Binary
  std::unique_ptr<Expr> a, b, c;  // operands; If uses a=cond, b=then, c=else

  std::unique_ptr<Expr> clone() const;
};

bool expr_equal(const Expr& x, const Expr& y);

/// A parsed program: parameter names plus one output expression over the
/// input A, the input-space size N, and the bit width K (= log2 N, only
/// defined when N is a power of two). Free identifiers other than A/N/K
/// register as parameters whether or not a `param` declaration spells
/// them out.
class ProgramAst {
 public:
  ProgramAst(std::unique_ptr<Expr> root, std::vector<std::string> params,
             bool uses_k, bool uses_n);

  ProgramAst(const ProgramAst& other);
  ProgramAst& operator=(const ProgramAst& other);
  ProgramAst(ProgramAst&&) noexcept = default;
  ProgramAst& operator=(ProgramAst&&) noexcept = default;

  const Expr& root() const { return *root_; }
  /// Parameter names, sorted, duplicates removed.
  const std::vector<std::string>& params() const { return params_; }
  bool uses_k() const noexcept { return uses_k_; }
  bool uses_n() const noexcept { return uses_n_; }

  /// Canonical source text; reparsing it reproduces this AST exactly.
  std::string pretty() const;

  friend bool operator==(const ProgramAst& x, const ProgramAst& y) {
    return x.params_ == y.params_ && expr_equal(*x.root_, *y.root_);
  }

 private:
  std::unique_ptr<Expr> root_;
  std::vector<std::string> params_;
  bool uses_k_ = false;
  bool uses_n_ = false;
};

/// Parses DSL source. Grammar sketch (see README for the full EBNF):
///   program := param_decl* [ "output" ] expr
///   param_decl := "param" IDENT ";"
///   expr := "if" cond "{" expr "}" "else" ("{" expr "}" | if-chain)
///         | arithmetic over + - * / % & | ^ << >> with ( ) and ~/- unary
///   cond := expr (== != < <= > >=) expr
/// Throws SyntaxError (with position) and TypeError (integer/boolean
/// mismatch, e.g. arithmetic on a comparison result).
ProgramAst parse_program(std::string_view text);

inline constexpr std::uint64_t kDefaultEnumCap = 1ull << 24;

struct EnumerateOptions {
  std::uint64_t cap = kDefaultEnumCap;
  unsigned threads = 0;  // 0 = pick from hardware
};

/// Evaluates the program on one input. K must be supplied when the
/// program references it.
std::uint64_t eval_program(const ProgramAst& ast,
                           const std::map<std::string, std::uint64_t>& bindings,
                           std::uint64_t a, std::uint64_t n,
                           std::optional<std::uint64_t> k);

/// Exact channel extraction: runs the program on every input in
/// {0,...,size-1} under the given parameter bindings and tallies output
/// values. The tally is partitioned across worker threads; counts merge
/// deterministically, so the result never depends on the partitioning.
/// Throws CapExceeded past opts.cap, UnknownIdentifier for a parameter
/// without a binding, DomainError if K is referenced at a non-power-of-two
/// size, and EvalError (with the offending input) for division by zero.
Distribution enumerate_channel(const ProgramAst& ast,
                               const std::map<std::string, std::uint64_t>& bindings,
                               std::uint64_t size,
                               const EnumerateOptions& opts = {});

}  // namespace qif
