#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qif/errors.hpp"

namespace qif {

/// Exact non-negative rational, kept in lowest terms. den > 0 always.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Fraction() = default;
  Fraction(std::uint64_t n, std::uint64_t d);

  double to_double() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Output distribution of a program at a fixed input-space size.
///
/// Probabilities are counts[i]/total with every count >= 1 and
/// sum(counts) == total. Counts are held as runs of equal values in
/// non-increasing order, so channels with a huge near-uniform tail
/// (e.g. one heavy output plus millions of singletons) stay O(#distinct).
/// All rational functionals (max_prob, support_size) are pure integer
/// arithmetic; floating point enters only in the entropy layer.
class Distribution {
 public:
  struct Run {
    std::uint64_t count = 0;        // outcome multiplicity, >= 1
    std::uint64_t repeats = 0;      // how many outcomes share this count
    friend bool operator==(const Run&, const Run&) = default;
  };

  /// Canonicalizes a raw tally: drops zero counts, sorts non-increasing.
  /// Throws SumMismatch if the counts do not add up to `total`,
  /// EmptySupport if nothing is left after dropping zeros.
  static Distribution from_counts(std::span<const std::uint64_t> raw,
                                  std::uint64_t total);

  /// Same contract, but the tally arrives pre-grouped. Runs with equal
  /// count values are merged; zero counts/repeats dropped.
  static Distribution from_runs(std::vector<Run> runs, std::uint64_t total);

  std::uint64_t total() const noexcept { return total_; }

  /// Number of distinct outcomes (the zero norm of the probability vector).
  std::uint64_t support_size() const noexcept { return support_; }

  /// Largest outcome probability, exact.
  Fraction max_prob() const { return Fraction(runs_.front().count, total_); }
  std::uint64_t max_count() const noexcept { return runs_.front().count; }

  const std::vector<Run>& runs() const noexcept { return runs_; }

  /// Expanded count sequence, non-increasing. Refuses to materialize
  /// supports past 2^24 entries (serialization guard).
  std::vector<std::uint64_t> expanded_counts() const;

  bool is_point_mass() const noexcept { return support_ == 1; }
  bool is_uniform() const noexcept { return runs_.size() == 1; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution() = default;

  std::vector<Run> runs_;
  std::uint64_t total_ = 0;
  std::uint64_t support_ = 0;
};

/// A probability vector given as grouped exact fractions.
struct ProbRun {
  Fraction prob;
  std::uint64_t repeats = 1;
};

/// Realizes a rational probability vector as integer counts summing to
/// `total` (largest-remainder rounding, ties resolved by group order).
/// Throws DomainError if some outcome would round to zero, i.e. `total`
/// is too small for the vector to stay onto.
Distribution realize_probabilities(std::span<const ProbRun> probs,
                                   std::uint64_t total);

}  // namespace qif
