#include <bit>
#include <optional>
#include <thread>
#include <unordered_map>

#include "qif/program.hpp"

namespace qif {

namespace {

struct EvalContext {
  std::uint64_t a;
  std::uint64_t n;
  std::uint64_t k;  // meaningful only when has_k
  bool has_k;
  const std::map<std::string, std::uint64_t>* params;
};

std::uint64_t eval(const Expr& e, const EvalContext& ctx);

bool eval_bool(const Expr& e, const EvalContext& ctx) {
  const std::uint64_t l = eval(*e.a, ctx);
  const std::uint64_t r = eval(*e.b, ctx);
  switch (e.op) {
    case Expr::Op::Eq: return l == r;
    case Expr::Op::Ne: return l != r;
    case Expr::Op::Lt: return l < r;
    case Expr::Op::Le: return l <= r;
    case Expr::Op::Gt: return l > r;
    case Expr::Op::Ge: return l >= r;
    default: throw Error("internal: non-comparison in boolean position");
  }
}

std::uint64_t eval(const Expr& e, const EvalContext& ctx) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      return e.value;
    case Expr::Kind::Variable: {
      if (e.name == "A") return ctx.a;
      if (e.name == "N") return ctx.n;
      if (e.name == "K") {
        if (!ctx.has_k)
          throw DomainError("K is undefined: N is not a power of two");
        return ctx.k;
      }
      const auto it = ctx.params->find(e.name);
      if (it == ctx.params->end())
        throw UnknownIdentifier("no binding for parameter '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Unary: {
      const std::uint64_t v = eval(*e.a, ctx);
      return e.op == Expr::Op::Neg ? (0 - v) : ~v;
    }
    case Expr::Kind::Binary: {
      const std::uint64_t l = eval(*e.a, ctx);
      const std::uint64_t r = eval(*e.b, ctx);
      switch (e.op) {
        case Expr::Op::Add: return l + r;
        case Expr::Op::Sub: return l - r;
        case Expr::Op::Mul: return l * r;
        case Expr::Op::Div:
          if (r == 0) throw EvalError("division by zero", ctx.a);
          return l / r;
        case Expr::Op::Mod:
          if (r == 0) throw EvalError("modulo by zero", ctx.a);
          return l % r;
        case Expr::Op::And: return l & r;
        case Expr::Op::Or: return l | r;
        case Expr::Op::Xor: return l ^ r;
        case Expr::Op::Shl: return r >= 64 ? 0 : (l << r);
        case Expr::Op::Shr: return r >= 64 ? 0 : (l >> r);
        default: throw Error("internal: comparison outside if-condition");
      }
    }
    case Expr::Kind::If:
      return eval_bool(*e.a, ctx) ? eval(*e.b, ctx) : eval(*e.c, ctx);
  }
  throw Error("internal: unreachable expression kind");
}

}  // namespace

std::uint64_t eval_program(const ProgramAst& ast,
                           const std::map<std::string, std::uint64_t>& bindings,
                           std::uint64_t a, std::uint64_t n,
                           std::optional<std::uint64_t> k) {
  EvalContext ctx{a, n, k.value_or(0), k.has_value(), &bindings};
  return eval(ast.root(), ctx);
}

Distribution enumerate_channel(const ProgramAst& ast,
                               const std::map<std::string, std::uint64_t>& bindings,
                               std::uint64_t size,
                               const EnumerateOptions& opts) {
  if (size < 2) throw DomainError("input-space size must be at least 2");
  if (size > opts.cap)
    throw CapExceeded("size " + std::to_string(size) +
                      " exceeds enumeration cap " + std::to_string(opts.cap));
  for (const auto& p : ast.params()) {
    if (!bindings.count(p))
      throw UnknownIdentifier("no binding for parameter '" + p + "'");
  }
  const bool pow2 = std::has_single_bit(size);
  if (ast.uses_k() && !pow2)
    throw DomainError("program references K but size " + std::to_string(size) +
                      " is not a power of two");
  const std::uint64_t k = pow2 ? static_cast<std::uint64_t>(std::countr_zero(size)) : 0;

  using Tally = std::unordered_map<std::uint64_t, std::uint64_t>;

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
    EvalContext ctx{0, size, k, pow2, &bindings};
    for (std::uint64_t a = lo; a < hi; ++a) {
      ctx.a = a;
      ++tally[eval(ast.root(), ctx)];
    }
  };

  unsigned workers = opts.threads ? opts.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  if (size < (1u << 16)) workers = 1;
  if (workers > 1) workers = std::min<std::uint64_t>(workers, size / (1u << 14));
  workers = std::max(1u, workers);

  Tally merged;
  if (workers == 1) {
    run_range(0, size, merged);
  } else {
    std::vector<Tally> tallies(workers);
    std::vector<std::optional<EvalError>> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = size / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = (w + 1 == workers) ? size : lo + chunk;
      pool.emplace_back([&, w, lo, hi] {
        try {
          run_range(lo, hi, tallies[w]);
        } catch (const EvalError& err) {
          failures[w] = err;
        }
      });
    }
    for (auto& t : pool) t.join();
    // report the failure with the smallest input so errors are stable
    for (const auto& f : failures) {
      if (f) throw *f;
    }
    for (const Tally& t : tallies) {
      for (const auto& [value, count] : t) merged[value] += count;
    }
  }

  std::vector<std::uint64_t> counts;
  counts.reserve(merged.size());
  for (const auto& [value, count] : merged) counts.push_back(count);
  return Distribution::from_counts(counts, size);
}

}  // namespace qif
