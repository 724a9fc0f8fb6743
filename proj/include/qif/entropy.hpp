#pragma once

#include <string>

#include "qif/distribution.hpp"
#include "qif/errors.hpp"

namespace qif {

/// The Renyi order parameter. Shannon and the endpoints are their own
/// tags; Finite(alpha) carries alpha > 0, alpha != 1.
class RenyiOrder {
 public:
  enum class Kind { Zero, Shannon, Finite, Infinity };

  static RenyiOrder zero() { return RenyiOrder(Kind::Zero, 0.0); }
  static RenyiOrder shannon() { return RenyiOrder(Kind::Shannon, 1.0); }
  static RenyiOrder infinity() { return RenyiOrder(Kind::Infinity, 0.0); }
  static RenyiOrder finite(double alpha);

  /// Accepts "0", "1", "inf", "infinity", or a positive real literal.
  /// "0" and "1" map to the Zero/Shannon tags.
  static RenyiOrder parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double alpha() const;  // Finite only

  /// Position on the extended real line (0, 1, alpha, +inf); used for
  /// ordering orders, never for entropy arithmetic.
  double numeric() const noexcept;

  std::string to_string() const;

  friend bool operator==(const RenyiOrder&, const RenyiOrder&) = default;

 private:
  RenyiOrder(Kind k, double a) : kind_(k), alpha_(a) {}
  Kind kind_;
  double alpha_;
};

/// Renyi entropy of the distribution, in bits (log base 2 throughout).
///   Zero     -> log2(support)
///   Shannon  -> -sum p log2 p
///   Finite a -> log2(sum p^a) / (1 - a)
///   Infinity -> -log2 max_prob
/// A point mass yields 0 for every order.
double renyi_entropy(const Distribution& d, RenyiOrder order);

/// The bounding function T_alpha of the near-deterministic regime, with
/// p1 = max_prob and t = 1 - p1:
///   alpha > 1 (and Infinity) -> t
///   alpha = 1                -> -t log2 t
///   0 < alpha < 1            -> t^alpha
/// Zero is outside the domain (UnsupportedOrder). A point mass returns 0.
double t_alpha(const Distribution& d, RenyiOrder order);

/// renyi_entropy / t_alpha, the ratio whose limits the limit laws pin as
/// max_prob -> 1. Raw base-2 value; the base-2 limits are alpha/(alpha-1)
/// scaled by 1/ln 2 for alpha > 1, 1/ln 2 for Infinity, and 1 for Shannon
/// (reached only logarithmically). Throws DegenerateDistribution on a
/// point mass.
double lemma2_ratio(const Distribution& d, RenyiOrder order);

}  // namespace qif
