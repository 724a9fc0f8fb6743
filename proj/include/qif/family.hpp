#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qif/distribution.hpp"
#include "qif/program.hpp"

namespace qif {

enum class CorpusId { P1, P2, P3, P4, P5, P6, P7 };

CorpusId parse_corpus_id(const std::string& text);
std::string corpus_id_name(CorpusId id);

/// The threshold parameter L as a function of the input-space size:
/// a plain constant, c*log2(N), c*sqrt(N), or N/c. Non-integer values
/// floor, matching counting semantics.
struct LSpec {
  enum class Regime { Constant, CLogN, CSqrtN, NOverC };
  Regime regime = Regime::Constant;
  std::uint64_t c = 1;

  std::uint64_t value_at(std::uint64_t n) const;
  std::string to_string() const;

  /// "5" | "N/4" | "3logN" | "3sqrtN" (and "logN"/"sqrtN" for c = 1).
  static LSpec parse(const std::string& text);

  static LSpec constant(std::uint64_t c) { return {Regime::Constant, c}; }
  static LSpec c_log_n(std::uint64_t c) { return {Regime::CLogN, c}; }
  static LSpec c_sqrt_n(std::uint64_t c) { return {Regime::CSqrtN, c}; }
  static LSpec n_over_c(std::uint64_t c) { return {Regime::NOverC, c}; }

  friend bool operator==(const LSpec&, const LSpec&) = default;
};

/// A family of deterministic channels indexed by input-space size; each
/// size yields one exact output distribution. Immutable once built.
class ProgramFamily {
 public:
  virtual ~ProgramFamily() = default;

  const std::string& name() const noexcept { return name_; }

  /// Exact output distribution at the given size. Throws DomainError
  /// outside the family's domain, InvalidParameter when the parameter
  /// binding cannot apply at this size (e.g. more set bits than width).
  virtual Distribution distribution_at(std::uint64_t size) const = 0;

  virtual bool valid_size(std::uint64_t size) const = 0;

  /// Nearest in-domain size at or above a hint; used by the CLI to snap
  /// schedules instead of erroring. Throws DomainError when nothing fits.
  virtual std::uint64_t snap_size(std::uint64_t size) const;

 protected:
  explicit ProgramFamily(std::string name) : name_(std::move(name)) {}

 private:
  std::string name_;
};

using FamilyPtr = std::shared_ptr<const ProgramFamily>;

/// Built-in corpus family with a closed-form channel (no enumeration),
/// valid up to 64-bit size limits. P3/P4 take the L regime; P5/P6/P7
/// take a constant L (P5 needs L >= 2, P6 L >= 0, P7 defaults to L = 1);
/// P1/P2 take no parameter and live on sizes 2^(8k), k >= 2.
FamilyPtr corpus_family(CorpusId id, std::optional<LSpec> l = std::nullopt);

/// Family backed by a parsed DSL program; distributions come from
/// exhaustive enumeration, so sizes are capped.
FamilyPtr dsl_family(ProgramAst ast,
                     std::map<std::string, std::uint64_t> bindings,
                     std::string name, std::uint64_t cap = kDefaultEnumCap);

/// Family whose output distribution is a fixed rational vector for every
/// size, realized as integer counts by largest-remainder rounding.
FamilyPtr table_family(std::string name, std::vector<ProbRun> probs);

/// DSL rendering of a corpus program, parseable by parse_program.
std::string corpus_dsl_source(CorpusId id);

/// Cross-check: closed-form channel == enumerated channel, exactly.
bool closed_form_matches_enumeration(CorpusId id, std::optional<LSpec> l,
                                     std::uint64_t size,
                                     std::uint64_t cap = kDefaultEnumCap);

}  // namespace qif
