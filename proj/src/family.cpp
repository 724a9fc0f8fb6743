#include "qif/family.hpp"

#include <bit>
#include <cmath>

namespace qif {

CorpusId parse_corpus_id(const std::string& text) {
  if (text.size() == 2 && (text[0] == 'P' || text[0] == 'p') &&
      text[1] >= '1' && text[1] <= '7')
    return static_cast<CorpusId>(text[1] - '1');
  throw InvalidParameter("unknown corpus program '" + text + "'");
}

std::string corpus_id_name(CorpusId id) {
  return "P" + std::to_string(static_cast<int>(id) + 1);
}

namespace {

std::uint64_t isqrt(unsigned __int128 v) {
  if (v == 0) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(
      std::sqrt(static_cast<long double>(v)));
  while (static_cast<unsigned __int128>(r) * r > v) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::uint64_t log2_floor(std::uint64_t n) {
  return 63u - static_cast<std::uint64_t>(std::countl_zero(n));
}

}  // namespace

std::uint64_t LSpec::value_at(std::uint64_t n) const {
  switch (regime) {
    case Regime::Constant:
      return c;
    case Regime::CLogN:
      // floor(c * log2 n); exact for powers of two, via long double otherwise
      if (std::has_single_bit(n)) return c * log2_floor(n);
      return static_cast<std::uint64_t>(
          static_cast<long double>(c) * std::log2l(static_cast<long double>(n)));
    case Regime::CSqrtN:
      // floor(c * sqrt(n)) == floor(sqrt(c^2 * n)), exact in integers
      return isqrt(static_cast<unsigned __int128>(c) * c * n);
    case Regime::NOverC:
      return n / c;
  }
  return c;
}

std::string LSpec::to_string() const {
  switch (regime) {
    case Regime::Constant: return std::to_string(c);
    case Regime::CLogN: return std::to_string(c) + "logN";
    case Regime::CSqrtN: return std::to_string(c) + "sqrtN";
    case Regime::NOverC: return "N/" + std::to_string(c);
  }
  return "?";
}

LSpec LSpec::parse(const std::string& text) {
  if (text.empty()) throw InvalidParameter("empty L parameter");
  auto parse_u64 = [](const std::string& s, const std::string& what) {
    if (s.empty()) return std::uint64_t{1};
    std::uint64_t v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9')
        throw InvalidParameter("bad " + what + " in L parameter '" + s + "'");
      v = v * 10 + (ch - '0');
    }
    return v;
  };
  if (text.rfind("N/", 0) == 0) {
    const std::uint64_t c = parse_u64(text.substr(2), "divisor");
    if (c < 2) throw InvalidParameter("L=N/c needs c >= 2");
    return n_over_c(c);
  }
  const auto suffix_at = [&](const std::string& suf) -> std::optional<std::string> {
    if (text.size() >= suf.size() &&
        text.compare(text.size() - suf.size(), suf.size(), suf) == 0)
      return text.substr(0, text.size() - suf.size());
    return std::nullopt;
  };
  if (auto head = suffix_at("logN")) return c_log_n(parse_u64(*head, "factor"));
  if (auto head = suffix_at("sqrtN")) return c_sqrt_n(parse_u64(*head, "factor"));
  return constant(parse_u64(text, "constant"));
}

std::uint64_t ProgramFamily::snap_size(std::uint64_t size) const {
  if (size < 2) size = 2;
  if (valid_size(size)) return size;
  // walk up through powers of two; every family domain is cofinal in them
  std::uint64_t p = std::bit_ceil(size);
  for (int guard = 0; guard < 64; ++guard) {
    if (valid_size(p)) return p;
    if (p > (1ull << 62)) break;
    p <<= 1;
  }
  throw DomainError("no valid size at or above " + std::to_string(size) +
                    " for family " + name());
}

namespace {

using Run = Distribution::Run;

// C(k, l) exactly; safe for k <= 62
std::uint64_t binomial(std::uint64_t k, std::uint64_t l) {
  if (l > k) return 0;
  l = std::min(l, k - l);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < l; ++i) {
    c = c * (k - i) / (i + 1);
  }
  return static_cast<std::uint64_t>(c);
}

bool is_valid_exponent_8k(std::uint64_t size) {
  if (!std::has_single_bit(size)) return false;
  const std::uint64_t e = log2_floor(size);
  return e >= 16 && e % 8 == 0 && e <= 56;
}

class CorpusFamily : public ProgramFamily {
 public:
  CorpusFamily(CorpusId id, std::optional<LSpec> l, std::string name)
      : ProgramFamily(std::move(name)), id_(id), l_(l) {}

  Distribution distribution_at(std::uint64_t size) const override {
    if (!valid_size(size))
      throw DomainError("size " + std::to_string(size) +
                        " outside the domain of " + name());
    switch (id_) {
      case CorpusId::P1: {
        // multiples of 8 pass through; everything else collapses to 1
        const std::uint64_t heavy = size - size / 8;
        return Distribution::from_runs({{heavy, 1}, {1, size / 8}}, size);
      }
      case CorpusId::P2: {
        // mask keeps the low k+1 of 8k bits
        const std::uint64_t k = log2_floor(size) / 8;
        return Distribution::from_runs({{1ull << (7 * k - 1), 1ull << (k + 1)}},
                                       size);
      }
      case CorpusId::P3: {
        const std::uint64_t l = l_->value_at(size);
        if (l >= size)  // password outside the input set: constant output
          return Distribution::from_runs({{size, 1}}, size);
        return Distribution::from_runs({{size - 1, 1}, {1, 1}}, size);
      }
      case CorpusId::P4: {
        const std::uint64_t l = l_->value_at(size);
        if (l == 0 || l >= size)
          return Distribution::from_runs({{size, 1}}, size);
        return Distribution::from_runs({{size - l, 1}, {l, 1}}, size);
      }
      case CorpusId::P5: {
        const std::uint64_t l = l_->value_at(size);
        const std::uint64_t q = size / l;
        const std::uint64_t r = size % l;
        if (q == 0)  // fewer inputs than residues
          return Distribution::from_runs({{1, size}}, size);
        std::vector<Run> runs;
        if (r > 0) runs.push_back({q + 1, r});
        runs.push_back({q, l - r});
        return Distribution::from_runs(std::move(runs), size);
      }
      case CorpusId::P6: {
        const std::uint64_t k = log2_floor(size);
        const std::uint64_t l = l_->value_at(size);
        if (l > k)
          throw InvalidParameter("P6 with L=" + std::to_string(l) +
                                 " needs at least " + std::to_string(l) +
                                 " bits, size " + std::to_string(size) +
                                 " has " + std::to_string(k));
        const std::uint64_t hits = binomial(k, l);
        if (hits == size) return Distribution::from_runs({{size, 1}}, size);
        return Distribution::from_runs({{size - hits, 1}, {hits, 1}}, size);
      }
      case CorpusId::P7: {
        const std::uint64_t k = log2_floor(size);
        const std::uint64_t l = l_->value_at(size);
        if (k % 2 == 0)  // even width: output the parity bit
          return Distribution::from_runs({{size / 2, 2}}, size);
        if (l >= size) return Distribution::from_runs({{size, 1}}, size);
        return Distribution::from_runs({{size - 1, 1}, {1, 1}}, size);
      }
    }
    throw DomainError("unreachable corpus id");
  }

  bool valid_size(std::uint64_t size) const override {
    if (size < 2 || size > (1ull << 62)) return false;
    switch (id_) {
      case CorpusId::P1:
      case CorpusId::P2:
        return is_valid_exponent_8k(size);
      case CorpusId::P3:
      case CorpusId::P4:
      case CorpusId::P5:
        return true;
      case CorpusId::P6:
        return std::has_single_bit(size) && log2_floor(size) >= l_->value_at(size);
      case CorpusId::P7:
        return std::has_single_bit(size);
    }
    return false;
  }

 private:
  CorpusId id_;
  std::optional<LSpec> l_;
};

class DslFamily : public ProgramFamily {
 public:
  DslFamily(ProgramAst ast, std::map<std::string, std::uint64_t> bindings,
            std::string name, std::uint64_t cap)
      : ProgramFamily(std::move(name)),
        ast_(std::move(ast)),
        bindings_(std::move(bindings)),
        cap_(cap) {}

  Distribution distribution_at(std::uint64_t size) const override {
    EnumerateOptions opts;
    opts.cap = cap_;
    return enumerate_channel(ast_, bindings_, size, opts);
  }

  bool valid_size(std::uint64_t size) const override {
    if (size < 2 || size > cap_) return false;
    if (ast_.uses_k() && !std::has_single_bit(size)) return false;
    return true;
  }

 private:
  ProgramAst ast_;
  std::map<std::string, std::uint64_t> bindings_;
  std::uint64_t cap_;
};

class TableFamily : public ProgramFamily {
 public:
  TableFamily(std::string name, std::vector<ProbRun> probs)
      : ProgramFamily(std::move(name)), probs_(std::move(probs)) {}

  Distribution distribution_at(std::uint64_t size) const override {
    return realize_probabilities(probs_, size);
  }

  bool valid_size(std::uint64_t size) const override {
    if (size < 2 || size > (1ull << 62)) return false;
    try {
      realize_probabilities(probs_, size);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

 private:
  std::vector<ProbRun> probs_;
};

std::optional<LSpec> effective_lspec(CorpusId id, std::optional<LSpec> l) {
  switch (id) {
    case CorpusId::P1:
    case CorpusId::P2:
      return std::nullopt;  // no parameter
    case CorpusId::P3:
      return l ? l : LSpec::constant(1);
    case CorpusId::P4:
      return l ? l : LSpec::n_over_c(2);
    case CorpusId::P5:
      if (!l) l = LSpec::constant(2);
      if (l->regime != LSpec::Regime::Constant || l->c < 2)
        throw InvalidParameter("P5 needs a constant integer L >= 2");
      return l;
    case CorpusId::P6:
      if (!l) l = LSpec::constant(0);
      if (l->regime != LSpec::Regime::Constant)
        throw InvalidParameter("P6 needs a constant integer L >= 0");
      return l;
    case CorpusId::P7:
      if (!l) l = LSpec::constant(1);
      if (l->regime != LSpec::Regime::Constant)
        throw InvalidParameter("P7 needs a constant integer L");
      return l;
  }
  return l;
}

}  // namespace

FamilyPtr corpus_family(CorpusId id, std::optional<LSpec> l) {
  l = effective_lspec(id, l);
  std::string name = corpus_id_name(id);
  if (l) name += "[L=" + l->to_string() + "]";
  return std::make_shared<CorpusFamily>(id, l, std::move(name));
}

FamilyPtr dsl_family(ProgramAst ast, std::map<std::string, std::uint64_t> bindings,
                     std::string name, std::uint64_t cap) {
  for (const auto& p : ast.params()) {
    if (!bindings.count(p))
      throw UnknownIdentifier("no binding for parameter '" + p + "'");
  }
  return std::make_shared<DslFamily>(std::move(ast), std::move(bindings),
                                     std::move(name), cap);
}

FamilyPtr table_family(std::string name, std::vector<ProbRun> probs) {
  if (probs.empty()) throw EmptySupport("empty probability vector");
  return std::make_shared<TableFamily>(std::move(name), std::move(probs));
}

std::string corpus_dsl_source(CorpusId id) {
  // 64-bit SWAR popcount spelled with plain operators (P6 has no loops
  // to count bits with)
  static const std::string kPop1 =
      "(A - ((A >> 1) & 0x5555555555555555))";
  static const std::string kPop2 =
      "((" + kPop1 + " & 0x3333333333333333) + ((" + kPop1 +
      " >> 2) & 0x3333333333333333))";
  static const std::string kPop3 =
      "((" + kPop2 + " + (" + kPop2 + " >> 4)) & 0x0F0F0F0F0F0F0F0F)";
  static const std::string kPopcount =
      "((" + kPop3 + " * 0x0101010101010101) >> 56)";
  switch (id) {
    case CorpusId::P1:
      return "if A % 8 == 0 { A } else { 1 }";
    case CorpusId::P2:
      return "A & ((1 << (K/8 + 1)) - 1)";
    case CorpusId::P3:
      return "param L;\noutput if A == L { 1 } else { 0 }";
    case CorpusId::P4:
      return "param L;\noutput if A >= L { 1 } else { 0 }";
    case CorpusId::P5:
      return "param L;\noutput A % L";
    case CorpusId::P6:
      return "param L;\noutput if " + kPopcount + " == L { 1 } else { 0 }";
    case CorpusId::P7:
      return "param L;\noutput if K % 2 == 0 { A % 2 } else { if A == L { 1 } "
             "else { 0 } }";
  }
  throw DomainError("unreachable corpus id");
}

bool closed_form_matches_enumeration(CorpusId id, std::optional<LSpec> l,
                                     std::uint64_t size, std::uint64_t cap) {
  const FamilyPtr family = corpus_family(id, l);
  const Distribution closed = family->distribution_at(size);

  const ProgramAst ast = parse_program(corpus_dsl_source(id));
  std::map<std::string, std::uint64_t> bindings;
  const std::optional<LSpec> spec = effective_lspec(id, l);
  if (!ast.params().empty() && spec) bindings["L"] = spec->value_at(size);
  EnumerateOptions opts;
  opts.cap = cap;
  const Distribution enumerated = enumerate_channel(ast, bindings, size, opts);
  return closed == enumerated;
}

}  // namespace qif
