#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qif/entropy.hpp"
#include "qif/family.hpp"

namespace qif {

/// Finite sampling grid standing in for size -> infinity. Powers of two
/// by default; explicit lists for odd cases.
class SizeSchedule {
 public:
  static SizeSchedule powers_of_two(unsigned j_min, unsigned j_max);
  static SizeSchedule explicit_sizes(std::vector<std::uint64_t> sizes);

  const std::vector<std::uint64_t>& sizes() const noexcept { return sizes_; }

  /// Snaps every point into the family's domain (deduplicated, ordered).
  /// `warnings` (if given) receives one line per adjusted size.
  SizeSchedule snapped_for(const ProgramFamily& family,
                           std::vector<std::string>* warnings = nullptr) const;

 private:
  explicit SizeSchedule(std::vector<std::uint64_t> sizes);
  std::vector<std::uint64_t> sizes_;
};

/// Leakage of the family's channel at one size: the Renyi entropy of the
/// output distribution (the conditional term vanishes for deterministic
/// programs). Bits.
double leakage(const ProgramFamily& family, std::uint64_t size,
               RenyiOrder order);

/// The input-side mutual information route: log2 |A| minus the expected
/// log-preimage-size. Under a uniform prior this collapses to the Shannon
/// output entropy for every order, which is exactly what the property
/// tests pin; the order argument documents the definition but does not
/// change the value.
double alt_leakage(const ProgramFamily& family, std::uint64_t size,
                   RenyiOrder order);

struct LeakageSeries {
  RenyiOrder order = RenyiOrder::infinity();
  std::string family_name;
  std::vector<std::pair<std::uint64_t, double>> points;  // (size, bits)
};

/// Samples leakage along the schedule. Sizes must already be in-domain
/// (DomainError names the offending size otherwise).
LeakageSeries leakage_series(const ProgramFamily& family,
                             const SizeSchedule& schedule, RenyiOrder order);

enum class OrderClass { FopConsistent, SuspectedIop };

struct FiniteOrderReport {
  OrderClass order_class = OrderClass::FopConsistent;
  std::uint64_t max_support = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> supports;  // (size, support)
  std::string note;
};

/// Finite-evidence check of the bounded-support property: flags the
/// family as suspected infinite-order when the output support still grows
/// between the last two schedule points. Evidence, not proof.
FiniteOrderReport finite_order_check(const ProgramFamily& family,
                                     const SizeSchedule& schedule);

}  // namespace qif
