#include "altcantor/series.hpp"

#include <algorithm>
#include <numeric>

#include "altcantor/error.hpp"

namespace altcantor {

namespace {

constexpr std::size_t kDefaultEnclosureDepth = 64;

void require_exact(const BasisSequence& basis) {
  if (!basis.is_exact()) {
    throw Error(ErrorCode::ExactUnavailable, "no closed form for rule basis " + basis.to_string());
  }
}

// sum_{n>=1} c_n / (d_1...d_n) where c_n = head[n-1] for n <= H and c_n = cycle[(n-H-1) % L]
// afterwards. The basis must repeat with a period dividing L past position H.
ExactRational periodic_series(const BasisSequence& basis, const std::vector<mpz_class>& head,
                              const std::vector<mpz_class>& cycle) {
  const std::size_t h = head.size();
  mpq_class value = 0;
  if (!cycle.empty()) {
    mpq_class block = 0;
    mpz_class q = 1;
    for (std::size_t j = cycle.size(); j >= 1; --j) {
      const Element d = basis.element(h + j);
      block = (block + cycle[j - 1]) / d;
      q *= d;
    }
    value = block * q / (q - 1);
  }
  for (std::size_t n = h; n >= 1; --n) {
    value = (value + head[n - 1]) / basis.element(n);
  }
  return ExactRational(value);
}

mpz_class weight(SeriesKind kind, std::size_t n, Digit e) {
  switch (kind) {
    case SeriesKind::NegaD: return mpz_class(parity_sign(n) * e);
    case SeriesKind::NegaDn: return mpz_class(-parity_sign(n) * (1 + e));
    case SeriesKind::PositiveD: return mpz_class(e);
  }
  return 0;
}

// Enclosure of the residual after n terms for the given series convention.
ExactInterval kind_residual(SeriesKind kind, const BasisSequence& basis, std::size_t n, std::size_t depth) {
  const ExactInterval negad = basis.is_exact() ? residual_bounds(basis, n) : residual_bounds_enclosure(basis, n, depth);
  switch (kind) {
    case SeriesKind::NegaD: return negad;
    case SeriesKind::PositiveD: return {ExactRational(0), ExactRational(mpz_class(1), basis.prefix_product(n))};
    case SeriesKind::NegaDn: {
      const ExactInterval a = basis.is_exact() ? ExactInterval::point(tail_sum(basis, n))
                                               : tail_sum_enclosure(basis, n, depth);
      const ExactRational scale(mpz_class(parity_sign(n)), basis.prefix_product(n));
      return a * scale - negad;
    }
  }
  return negad;
}

}  // namespace

ExactInterval as_interval(const SeriesValue& v) {
  if (const auto* r = std::get_if<ExactRational>(&v)) return ExactInterval::point(*r);
  return std::get<ExactInterval>(v);
}

ExactRational tail_sum(const BasisSequence& basis, std::size_t n) {
  require_exact(basis);
  const BasisSequence shifted = basis.shifted(n);
  std::vector<mpz_class> head(shifted.head_length());
  for (std::size_t k = 1; k <= head.size(); ++k) head[k - 1] = -parity_sign(k);
  std::vector<mpz_class> cycle(std::lcm(shifted.period().size(), std::size_t{2}));
  for (std::size_t j = 1; j <= cycle.size(); ++j) cycle[j - 1] = -parity_sign(head.size() + j);
  return periodic_series(shifted, head, cycle);
}

ExactInterval tail_sum_enclosure(const BasisSequence& basis, std::size_t n, std::size_t depth) {
  depth = std::max<std::size_t>(depth, 1);
  // Partial sums of depth and depth+1 terms bracket the alternating sum.
  mpq_class inner = 0;
  for (std::size_t k = depth + 1; k >= 1; --k) {
    inner = (inner + (k % 2 == 1 ? 1 : -1)) / basis.element(n + k);
  }
  const ExactRational s_long(inner);
  const ExactRational last(mpz_class(parity_sign(depth)), basis.range_product(n, n + depth + 1));
  const ExactRational s_short = s_long - last;
  return ExactInterval::hull(s_short, s_long);
}

SeriesValue tail_sum(const BasisSequence& basis, std::size_t n, EvalMode mode) {
  if (mode.type == EvalMode::Type::Exact) return tail_sum(basis, n);
  return tail_sum_enclosure(basis, n, mode.depth);
}

ExactInterval domain(const BasisSequence& basis) {
  const ExactRational a0 = tail_sum(basis, 0);
  return {a0 - ExactRational(1), a0};
}

ExactInterval domain_enclosure(const BasisSequence& basis, std::size_t depth) {
  if (basis.is_exact()) return domain(basis);
  const ExactInterval a0 = tail_sum_enclosure(basis, 0, depth);
  return {a0.lo() - ExactRational(1), a0.hi()};
}

ExactInterval residual_bounds(const BasisSequence& basis, std::size_t n) {
  const ExactRational a = tail_sum(basis, n);
  const ExactRational p(basis.prefix_product(n));
  if (n % 2 == 0) return {(a - ExactRational(1)) / p, a / p};
  return {-a / p, (ExactRational(1) - a) / p};
}

ExactInterval residual_bounds_enclosure(const BasisSequence& basis, std::size_t n, std::size_t depth) {
  if (basis.is_exact()) return residual_bounds(basis, n);
  const ExactInterval a = tail_sum_enclosure(basis, n, depth);
  const ExactRational p(basis.prefix_product(n));
  if (n % 2 == 0) return {(a.lo() - ExactRational(1)) / p, a.hi() / p};
  return {-a.hi() / p, (ExactRational(1) - a.lo()) / p};
}

ExactRational partial_sum(const DigitString& digits, const BasisSequence& basis, std::size_t n) {
  mpq_class value = 0;
  for (std::size_t k = n; k >= 1; --k) {
    value = (value + weight(digits.kind(), k, digits.digit(k))) / basis.element(k);
  }
  return ExactRational(value);
}

ExactRational evaluate_exact(const DigitString& digits, const BasisSequence& basis) {
  if (!basis.is_exact() && digits.kind() != SeriesKind::NegaDn && digits.has_zeros_tail()) {
    return partial_sum(digits, basis, digits.prefix().size());
  }
  require_exact(basis);
  if (digits.is_truncated()) {
    throw Error(ErrorCode::ExactUnavailable, "truncated digit string has no exact value");
  }
  const std::size_t h = std::max(digits.prefix().size(), basis.head_length());
  const std::size_t l = std::lcm(std::lcm(digits.tail_period(), basis.period().size()), std::size_t{2});
  std::vector<mpz_class> head(h), cycle(l);
  for (std::size_t n = 1; n <= h; ++n) head[n - 1] = weight(digits.kind(), n, digits.digit(n));
  for (std::size_t j = 1; j <= l; ++j) cycle[j - 1] = weight(digits.kind(), h + j, digits.digit(h + j));
  return periodic_series(basis, head, cycle);
}

bool exactly_evaluable(const DigitString& digits, const BasisSequence& basis) {
  if (digits.is_truncated()) return false;
  return basis.is_exact() || (digits.kind() != SeriesKind::NegaDn && digits.has_zeros_tail());
}

ExactInterval evaluate_enclosure(const DigitString& digits, const BasisSequence& basis, std::size_t depth) {
  if (digits.is_truncated()) {
    const std::size_t n = digits.prefix().size();
    return kind_residual(digits.kind(), basis, n, std::max(depth, kDefaultEnclosureDepth)) +
           partial_sum(digits, basis, n);
  }
  const std::size_t n = std::max(depth, digits.prefix().size());
  return kind_residual(digits.kind(), basis, n, std::max(depth, kDefaultEnclosureDepth)) +
         partial_sum(digits, basis, n);
}

SeriesValue evaluate(const DigitString& digits, const BasisSequence& basis, EvalMode mode) {
  if (digits.is_truncated() || mode.type == EvalMode::Type::Interval) {
    return evaluate_enclosure(digits, basis, mode.depth);
  }
  return evaluate_exact(digits, basis);
}

ExactRational negad_prefix_value(std::span<const Digit> digits, const BasisSequence& basis) {
  mpq_class value = 0;
  for (std::size_t k = digits.size(); k >= 1; --k) {
    value = (value + parity_sign(k) * digits[k - 1]) / basis.element(k);
  }
  return ExactRational(value);
}

}  // namespace altcantor
