#include "qif/entropy.hpp"

#include <cmath>
#include <limits>

namespace qif {

RenyiOrder RenyiOrder::finite(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidParameter("finite Renyi order requires alpha > 0");
  if (alpha == 1.0)
    throw InvalidParameter("alpha = 1 is the Shannon tag, not Finite");
  return RenyiOrder(Kind::Finite, alpha);
}

RenyiOrder RenyiOrder::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Infinity")
    return infinity();
  std::size_t used = 0;
  double a = 0.0;
  try {
    a = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidParameter("cannot parse Renyi order '" + text + "'");
  }
  if (used != text.size())
    throw InvalidParameter("cannot parse Renyi order '" + text + "'");
  if (a == 0.0) return zero();
  if (a == 1.0) return shannon();
  return finite(a);
}

double RenyiOrder::alpha() const {
  if (kind_ != Kind::Finite)
    throw InvalidParameter("alpha() is only defined for Finite orders");
  return alpha_;
}

double RenyiOrder::numeric() const noexcept {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Shannon: return 1.0;
    case Kind::Finite: return alpha_;
    case Kind::Infinity: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

std::string RenyiOrder::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Shannon: return "1";
    case Kind::Infinity: return "inf";
    case Kind::Finite: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", alpha_);
      return buf;
    }
  }
  return "?";
}

namespace {

// Kahan-compensated accumulator in extended precision; the power sums mix
// one heavy term with up to 2^24 tiny ones.
struct Accum {
  long double sum = 0.0L;
  long double comp = 0.0L;
  void add(long double x) {
    const long double y = x - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

long double shannon_bits(const Distribution& d) {
  const long double total = static_cast<long double>(d.total());
  Accum acc;
  for (const auto& r : d.runs()) {
    if (r.count == d.total()) continue;  // p = 1 contributes 0
    const long double p = static_cast<long double>(r.count) / total;
    const long double term = p * std::log2l(total / static_cast<long double>(r.count));
    acc.add(term * static_cast<long double>(r.repeats));
  }
  return acc.sum;
}

// log2(sum p_i^a) / (1 - a), computed with p_max factored out so the sum
// never underflows: log2 S = a*log2(p1) + log2(sum m*(p/p1)^a).
long double finite_bits(const Distribution& d, double a) {
  const long double total = static_cast<long double>(d.total());
  const long double alpha = static_cast<long double>(a);
  const long double p1 = static_cast<long double>(d.max_count()) / total;
  Accum acc;
  for (const auto& r : d.runs()) {
    const long double ratio =
        static_cast<long double>(r.count) / static_cast<long double>(d.max_count());
    const long double pow_term =
        (r.count == d.max_count()) ? 1.0L : std::exp2l(alpha * std::log2l(ratio));
    acc.add(pow_term * static_cast<long double>(r.repeats));
  }
  const long double log_sum = alpha * std::log2l(p1) + std::log2l(acc.sum);
  return log_sum / (1.0L - alpha);
}

}  // namespace

double renyi_entropy(const Distribution& d, RenyiOrder order) {
  switch (order.kind()) {
    case RenyiOrder::Kind::Zero:
      return static_cast<double>(
          std::log2l(static_cast<long double>(d.support_size())));
    case RenyiOrder::Kind::Shannon:
      return static_cast<double>(shannon_bits(d));
    case RenyiOrder::Kind::Finite:
      return static_cast<double>(finite_bits(d, order.alpha()));
    case RenyiOrder::Kind::Infinity:
      return static_cast<double>(-std::log2l(
          static_cast<long double>(d.max_count()) /
          static_cast<long double>(d.total())));
  }
  return 0.0;
}

double t_alpha(const Distribution& d, RenyiOrder order) {
  if (order.kind() == RenyiOrder::Kind::Zero)
    throw UnsupportedOrder("T_alpha is undefined at order 0");
  if (d.max_count() == d.total()) return 0.0;  // point mass, by continuity
  // 1 - p1 from the exact integer complement; no cancellation as p1 -> 1
  const long double t = static_cast<long double>(d.total() - d.max_count()) /
                        static_cast<long double>(d.total());
  switch (order.kind()) {
    case RenyiOrder::Kind::Infinity:
      return static_cast<double>(t);
    case RenyiOrder::Kind::Shannon:
      return static_cast<double>(-t * std::log2l(t));
    case RenyiOrder::Kind::Finite: {
      const double a = order.alpha();
      if (a > 1.0) return static_cast<double>(t);
      return static_cast<double>(std::exp2l(static_cast<long double>(a) * std::log2l(t)));
    }
    default:
      return 0.0;
  }
}

double lemma2_ratio(const Distribution& d, RenyiOrder order) {
  if (d.max_count() == d.total())
    throw DegenerateDistribution("max_prob is 1; ratio undefined");
  return renyi_entropy(d, order) / t_alpha(d, order);
}

}  // namespace qif
