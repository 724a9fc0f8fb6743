#pragma once

#include <span>
#include <string>
#include <vector>

#include "qif/leakage.hpp"

namespace qif {

/// Knobs of the finite-evidence limit estimator. Defaults are tuned so
/// the whole built-in corpus classifies correctly; override per run when
/// feeding other families.
struct EstimatorConfig {
  std::size_t window = 0;        // tail length; 0 = max(4, half the points)
  double slope_delta = 0.1;      // |log-log slope| below this reads as flat
  double osc_factor = 8.0;       // tail max/min ratio that flags oscillation
  double powerlaw_residual = 0.25;  // max |log2 residual| for the fallback fit
};

/// One-sided limit estimate for a ratio sequence.
struct LimitEstimate {
  enum class Kind { Zero, Finite, Infinite };
  Kind kind = Kind::Finite;
  double value = 0.0;  // tail geometric mean; meaningful for Finite only

  std::string to_string() const;
};

struct RatioEstimate {
  LimitEstimate f_hat;  // limsup estimate
  LimitEstimate g_hat;  // liminf estimate
  std::vector<std::pair<std::uint64_t, double>> ratios;  // (size, r)
  double tail_slope = 0.0;   // log2 r vs log2 n over the tail window
  bool oscillation = false;  // tail swings past osc_factor, non-monotone
};

/// Estimates limsup/liminf of s1/s2 along a shared schedule. The tail
/// window drives a log-log slope fit; a steadily rising tail reads as
/// Infinite, a steadily falling one as Zero, a flat one as Finite at the
/// tail geometric mean. An oscillating tail splits the series into its
/// peak and valley subsequences and estimates each side separately.
/// Throws ScheduleMismatch (different schedules/orders or fewer than 6
/// points) and DegenerateSeries (a zero denominator value).
RatioEstimate estimate_ratio_limits(const LeakageSeries& s1,
                                    const LeakageSeries& s2,
                                    const EstimatorConfig& config = {});

enum class VerdictKind { FirstHigher, SecondHigher, SameLevel, Incomparable };

std::string verdict_kind_name(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Incomparable;
  RatioEstimate estimate;
};

/// Maps a ratio estimate onto the four-way comparison outcome:
///   f = inf, g > 0        -> FirstHigher
///   f < inf, g = 0        -> SecondHigher (Incomparable when the zero
///                            side came from an oscillating tail)
///   0 < g <= f < inf      -> SameLevel
///   otherwise             -> Incomparable
VerdictKind verdict_from_estimate(const RatioEstimate& estimate);

/// Full pipeline at order infinity: min-entropy leakage series for both
/// families, ratio limits, verdict. Two all-zero series (both programs
/// constant-output) compare as SameLevel by convention.
Verdict compare(const ProgramFamily& c1, const ProgramFamily& c2,
                const SizeSchedule& schedule,
                const EstimatorConfig& config = {});

/// Canonical leakage-decay rates. PolyLogOverN(0) and (1) are the same
/// rates as InvN and LogOverN; classification reports the plain tags for
/// those exponents.
struct RateClass {
  enum class Tag {
    Constant,
    LogOverN,
    InvSqrtN,
    InvN,
    PolyLogOverN,
    PowerLaw,
    Unclassified,
  };
  Tag tag = Tag::Unclassified;
  int exponent = 0;     // PolyLogOverN
  double gamma = 0.0;   // PowerLaw: value ~ fitted * n^gamma
  double fitted = 0.0;  // leading constant, tail geometric mean

  bool same_rate(const RateClass& other) const;
  std::string to_string() const;
};

/// Classifies the decay rate of a (positive) leakage series against the
/// rate dictionary: the candidate whose compensated tail is flattest
/// wins if it sits within the slope band; otherwise a free power-law fit
/// is tried; Unclassified is an explicit outcome, not an error.
RateClass classify_level(const LeakageSeries& series,
                         const EstimatorConfig& config = {});

struct Proposition1Report {
  struct Entry {
    RenyiOrder order = RenyiOrder::infinity();
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool pass = false;  // 0 < min <= max < inf
  };
  std::vector<Entry> entries;
  bool all_pass = false;
};

/// Evaluates leakage / T_alpha across the schedule per order and reports
/// the observed range; the bounded-ratio property demands every range
/// stay strictly inside (0, inf). Orders must exclude Zero, and the
/// family must look finite-order over this schedule.
Proposition1Report verify_proposition1(const ProgramFamily& family,
                                       const SizeSchedule& schedule,
                                       std::span<const RenyiOrder> orders);

}  // namespace qif
