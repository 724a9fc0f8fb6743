#include "qif/leakage.hpp"

#include <algorithm>
#include <cmath>

namespace qif {

SizeSchedule::SizeSchedule(std::vector<std::uint64_t> sizes)
    : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw InvalidParameter("schedule must not be empty");
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 2)
      throw InvalidParameter("schedule sizes must be at least 2");
    if (i > 0 && sizes_[i] <= sizes_[i - 1])
      throw InvalidParameter("schedule sizes must be strictly increasing");
  }
}

SizeSchedule SizeSchedule::powers_of_two(unsigned j_min, unsigned j_max) {
  if (j_min < 1 || j_min > j_max || j_max > 62)
    throw InvalidParameter("powers-of-two schedule needs 1 <= j_min <= j_max <= 62");
  std::vector<std::uint64_t> sizes;
  sizes.reserve(j_max - j_min + 1);
  for (unsigned j = j_min; j <= j_max; ++j) sizes.push_back(1ull << j);
  return SizeSchedule(std::move(sizes));
}

SizeSchedule SizeSchedule::explicit_sizes(std::vector<std::uint64_t> sizes) {
  return SizeSchedule(std::move(sizes));
}

SizeSchedule SizeSchedule::snapped_for(const ProgramFamily& family,
                                       std::vector<std::string>* warnings) const {
  std::vector<std::uint64_t> out;
  out.reserve(sizes_.size());
  for (std::uint64_t s : sizes_) {
    const std::uint64_t snapped = family.snap_size(s);
    if (snapped != s && warnings)
      warnings->push_back("size " + std::to_string(s) + " snapped to " +
                          std::to_string(snapped) + " for " + family.name());
    if (out.empty() || snapped > out.back()) out.push_back(snapped);
  }
  return SizeSchedule(std::move(out));
}

double leakage(const ProgramFamily& family, std::uint64_t size,
               RenyiOrder order) {
  return renyi_entropy(family.distribution_at(size), order);
}

double alt_leakage(const ProgramFamily& family, std::uint64_t size,
                   RenyiOrder order) {
  (void)order;  // collapses for every order under the uniform prior
  const Distribution d = family.distribution_at(size);
  const long double total = static_cast<long double>(d.total());
  long double acc = 0.0L;
  for (const auto& r : d.runs()) {
    // P(O=o) * log2 |preimage(o)| summed over outcomes with this count
    const long double p = static_cast<long double>(r.count) / total;
    acc += static_cast<long double>(r.repeats) * p *
           std::log2l(static_cast<long double>(r.count));
  }
  return static_cast<double>(std::log2l(total) - acc);
}

LeakageSeries leakage_series(const ProgramFamily& family,
                             const SizeSchedule& schedule, RenyiOrder order) {
  LeakageSeries series;
  series.order = order;
  series.family_name = family.name();
  series.points.reserve(schedule.sizes().size());
  for (std::uint64_t size : schedule.sizes()) {
    if (!family.valid_size(size))
      throw DomainError("size " + std::to_string(size) +
                        " outside the domain of " + family.name());
    series.points.emplace_back(size, leakage(family, size, order));
  }
  return series;
}

FiniteOrderReport finite_order_check(const ProgramFamily& family,
                                     const SizeSchedule& schedule) {
  FiniteOrderReport report;
  for (std::uint64_t size : schedule.sizes()) {
    const std::uint64_t support = family.distribution_at(size).support_size();
    report.supports.emplace_back(size, support);
    report.max_support = std::max(report.max_support, support);
  }
  const std::size_t n = report.supports.size();
  const bool grows =
      n >= 2 && report.supports[n - 1].second > report.supports[n - 2].second;
  report.order_class = grows ? OrderClass::SuspectedIop : OrderClass::FopConsistent;
  report.note = grows
                    ? "output support still grows at the largest sampled sizes; "
                      "finite-evidence heuristic, not a proof"
                    : "output support stops growing over the sampled sizes; "
                      "finite-evidence heuristic, not a proof";
  return report;
}

}  // namespace qif
