#include "qif/distribution.hpp"

#include <algorithm>
#include <numeric>

namespace qif {

Fraction::Fraction(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
  if (d == 0) throw InvalidParameter("fraction denominator must be positive");
  const std::uint64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

double Fraction::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

Distribution Distribution::from_counts(std::span<const std::uint64_t> raw,
                                       std::uint64_t total) {
  std::vector<Run> runs;
  runs.reserve(raw.size());
  for (std::uint64_t c : raw) {
    if (c > 0) runs.push_back(Run{c, 1});
  }
  return from_runs(std::move(runs), total);
}

Distribution Distribution::from_runs(std::vector<Run> runs,
                                     std::uint64_t total) {
  if (total == 0) throw InvalidParameter("total must be positive");
  std::erase_if(runs,
                [](const Run& r) { return r.count == 0 || r.repeats == 0; });
  if (runs.empty()) throw EmptySupport("all outcome counts are zero");

  std::sort(runs.begin(), runs.end(),
            [](const Run& a, const Run& b) { return a.count > b.count; });
  std::vector<Run> merged;
  merged.reserve(runs.size());
  for (const Run& r : runs) {
    if (!merged.empty() && merged.back().count == r.count) {
      merged.back().repeats += r.repeats;
    } else {
      merged.push_back(r);
    }
  }

  unsigned __int128 sum = 0;
  std::uint64_t support = 0;
  for (const Run& r : merged) {
    sum += static_cast<unsigned __int128>(r.count) * r.repeats;
    support += r.repeats;
  }
  if (sum != total)
    throw SumMismatch("counts sum to a value different from the stated total " +
                      std::to_string(total));

  Distribution d;
  d.runs_ = std::move(merged);
  d.total_ = total;
  d.support_ = support;
  return d;
}

std::vector<std::uint64_t> Distribution::expanded_counts() const {
  constexpr std::uint64_t kExpandLimit = 1ull << 24;
  if (support_ > kExpandLimit)
    throw Error("support too large to expand (" + std::to_string(support_) +
                " outcomes)");
  std::vector<std::uint64_t> out;
  out.reserve(support_);
  for (const Run& r : runs_) out.insert(out.end(), r.repeats, r.count);
  return out;
}

Distribution realize_probabilities(std::span<const ProbRun> probs,
                                   std::uint64_t total) {
  if (probs.empty()) throw EmptySupport("empty probability vector");

  // floor(p * total) per group; the exact remainder decides who gets the
  // missing units. Every outcome inside a group shares one remainder, so
  // granting group-by-group in remainder order is the per-outcome
  // largest-remainder rule (ties broken by group position).
  struct Part {
    std::uint64_t base;
    unsigned __int128 rem;  // remainder numerator, over `den`
    std::uint64_t den;
    std::uint64_t repeats;
  };
  std::vector<Part> parts;
  parts.reserve(probs.size());
  unsigned __int128 assigned = 0;
  for (const ProbRun& pr : probs) {
    const unsigned __int128 scaled =
        static_cast<unsigned __int128>(pr.prob.num) * total;
    const std::uint64_t base = static_cast<std::uint64_t>(scaled / pr.prob.den);
    parts.push_back(Part{base, scaled % pr.prob.den, pr.prob.den, pr.repeats});
    assigned += static_cast<unsigned __int128>(base) * pr.repeats;
  }
  if (assigned > total) throw SumMismatch("probability vector sums past one");
  std::uint64_t leftover = static_cast<std::uint64_t>(total - assigned);

  std::vector<std::size_t> order(parts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return parts[a].rem * parts[b].den >
                            parts[b].rem * parts[a].den;
                   });

  // leftover < total outcome count, so a single pass suffices
  std::vector<std::uint64_t> grant(parts.size(), 0);
  for (std::size_t pos = 0; pos < order.size() && leftover > 0; ++pos) {
    const std::size_t i = order[pos];
    const std::uint64_t take = std::min<std::uint64_t>(leftover, parts[i].repeats);
    grant[i] = take;
    leftover -= take;
  }
  if (leftover > 0) throw SumMismatch("probability vector sums short of one");

  std::vector<Distribution::Run> runs;
  runs.reserve(parts.size() * 2);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Part& p = parts[i];
    if (grant[i] > 0) runs.push_back({p.base + 1, grant[i]});
    if (p.repeats > grant[i]) {
      if (p.base == 0)
        throw DomainError("total " + std::to_string(total) +
                          " too small to realize probability vector onto");
      runs.push_back({p.base, p.repeats - grant[i]});
    }
  }
  return Distribution::from_runs(std::move(runs), total);
}

}  // namespace qif
