#include "altcantor/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "altcantor/codec.hpp"
#include "altcantor/error.hpp"
#include "altcantor/transforms.hpp"

namespace altcantor {

namespace {

SeriesValue value_of(const DigitString& digits, const BasisSequence& basis) {
  if (exactly_evaluable(digits, basis)) return evaluate_exact(digits, basis);
  return evaluate_enclosure(digits, basis, 0);
}

// Digits e_{k+1}, e_{k+2}, ... as a string description (tail phase preserved).
Tail tail_after(const DigitString& digits, std::size_t k, std::vector<Digit>& rest) {
  if (digits.is_truncated()) {
    const auto& p = digits.prefix();
    if (k > p.size()) throw Error(ErrorCode::ExactUnavailable, "shift past the known digits of a truncated string");
    rest.assign(p.begin() + static_cast<std::ptrdiff_t>(k), p.end());
    return TruncatedTail{};
  }
  const std::size_t h = std::max(digits.prefix().size(), k);
  for (std::size_t n = k + 1; n <= h; ++n) rest.push_back(digits.digit(n));
  if (digits.has_zeros_tail()) return ZerosTail{};
  std::vector<Digit> cycle;
  for (std::size_t n = h + 1; n <= h + digits.tail_period(); ++n) cycle.push_back(digits.digit(n));
  return PeriodicTail{std::move(cycle)};
}

void require_digits(std::span<const Digit> prefix, const BasisSequence& basis) {
  DigitString(SeriesKind::NegaD, std::vector<Digit>(prefix.begin(), prefix.end()), ZerosTail{}, basis);
}

}  // namespace

ExactRational shift_closed_form(const ExactRational& x, std::span<const Digit> leading, const BasisSequence& basis) {
  const std::size_t k = leading.size();
  const ExactRational pk(basis.prefix_product(k));
  return ExactRational(parity_sign(k)) * pk * (x - negad_prefix_value(leading, basis));
}

ShiftResult shift(const DigitString& digits, const BasisSequence& basis, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "shift count must be positive");
  if (digits.kind() != SeriesKind::NegaD) throw Error(ErrorCode::InvalidArgument, "shift expects a negad string");
  const DigitString checked(digits.pattern(), basis);
  std::vector<Digit> rest;
  Tail tail = tail_after(checked, k, rest);
  BasisSequence next = basis.shifted(k);
  DigitString out = DigitString(SeriesKind::NegaD, std::move(rest), std::move(tail), next).normalized();
  SeriesValue value = value_of(out, next);
  if (const auto* v = std::get_if<ExactRational>(&value); v && exactly_evaluable(checked, basis)) {
    const ExactRational closed = shift_closed_form(evaluate_exact(checked, basis), checked.leading(k), basis);
    if (closed != *v) throw std::logic_error("shift: closed form disagrees with digit shift");
  }
  return {std::move(out), std::move(next), std::move(value)};
}

ExactRational shift_value(const ExactRational& x, const BasisSequence& basis, std::size_t k) {
  GreedyExpander expander(x, basis);
  for (std::size_t i = 0; i < k; ++i) expander.next();
  return expander.remainder();
}

ShiftResult shift_delete(const DigitString& digits, const BasisSequence& basis, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "deleted position must be positive");
  if (digits.kind() != SeriesKind::NegaD) throw Error(ErrorCode::InvalidArgument, "shift_delete expects a negad string");
  const DigitString checked(digits.pattern(), basis);
  std::vector<Digit> head = checked.leading(std::min(m - 1, checked.is_truncated() ? checked.prefix().size() : m - 1));
  std::vector<Digit> rest;
  Tail tail;
  if (checked.is_truncated() && m > checked.prefix().size()) {
    tail = TruncatedTail{};
  } else {
    tail = tail_after(checked, m, rest);
  }
  head.insert(head.end(), rest.begin(), rest.end());
  BasisSequence next = basis.without_position(m);
  DigitString out = DigitString(SeriesKind::NegaD, std::move(head), std::move(tail), next).normalized();
  SeriesValue value = value_of(out, next);
  return {std::move(out), std::move(next), std::move(value)};
}

DigitString digit_shift(const DigitString& digits, const BasisSequence& basis) {
  const DigitString checked(digits.pattern(), basis);
  std::vector<Digit> rest;
  Tail tail = tail_after(checked, 1, rest);
  // Positions to check: the explicit part, then (exact bases) one full joint
  // period; rule elements grow, so past the largest digit nothing can fail.
  std::size_t reach = checked.prefix().size() + 1;
  if (!checked.is_truncated() && !checked.has_zeros_tail()) {
    const auto& cyc = checked.period();
    const Digit top = *std::max_element(cyc.begin(), cyc.end());
    if (basis.is_exact()) {
      reach = std::max(reach, basis.head_length()) + std::lcm(cyc.size(), basis.period().size()) + 1;
    } else {
      while (basis.element(reach) <= top) ++reach;
    }
  } else if (checked.is_truncated()) {
    reach = checked.prefix().size();
  }
  for (std::size_t n = 1; n <= reach; ++n) {
    if (checked.is_truncated() && n + 1 > checked.prefix().size()) break;
    if (checked.digit(n + 1) > basis.element(n) - 1) throw NotWellDefinedError(n);
  }
  return DigitString(checked.kind(), std::move(rest), std::move(tail), basis).normalized();
}

std::vector<ExactRational> fixed_points(const BasisSequence& basis) {
  if (!basis.is_constant()) throw Error(ErrorCode::UnsupportedBasis, "fixed points need a constant basis");
  const Element d = basis.element(1);
  std::vector<ExactRational> out;
  for (Element i = 0; i < d; ++i) out.emplace_back(-i, d + 1);
  return out;
}

ExactRational periodic_point(const BasisSequence& basis, std::span<const Digit> prefix) {
  const std::size_t m = prefix.size();
  if (!basis.is_purely_periodic() || m == 0 || m % basis.period().size() != 0) {
    throw Error(ErrorCode::UnsupportedBasis, "periodic points need a purely periodic basis with period dividing m");
  }
  require_digits(prefix, basis);
  const ExactRational s = ExactRational(parity_sign(m)) * ExactRational(basis.prefix_product(m));
  return s * negad_prefix_value(prefix, basis) / (s - ExactRational(1));
}

ExactRational preperiodic_point(const BasisSequence& basis, std::span<const Digit> prefix, std::size_t m,
                                std::size_t c) {
  if (c == 0 || prefix.size() != m + c) throw Error(ErrorCode::InvalidArgument, "prefix must hold m + c digits");
  if (!basis.is_exact() || basis.head_length() > m || c % basis.period().size() != 0) {
    throw Error(ErrorCode::UnsupportedBasis, "basis must repeat with period dividing c beyond position m");
  }
  require_digits(prefix, basis);
  const ExactRational q = ExactRational(-parity_sign(c)) * ExactRational(basis.range_product(m, m + c));
  const ExactRational den = ExactRational(1) + q;
  if (den.is_zero()) throw Error(ErrorCode::DegenerateDenominator, "1 + (-1)^(c+1) d_{m+1}...d_{m+c} vanishes");
  const ExactRational first = negad_prefix_value(prefix.first(m), basis);
  const ExactRational full = negad_prefix_value(prefix, basis);
  return (first + q * full) / den;
}

std::optional<std::size_t> finite_expansion(const mpz_class& p, const mpz_class& q, const BasisSequence& basis) {
  if (q <= 0) throw Error(ErrorCode::InvalidArgument, "q must be positive");
  mpz_class r = q / gcd(p, q);
  if (r == 1) return 0;
  auto step = [&](std::size_t n) {
    const mpz_class d(static_cast<long>(basis.element(n)));
    r /= gcd(r, d);
  };
  if (basis.is_exact()) {
    std::size_t n = 0;
    for (; n < basis.head_length(); ++n) {
      step(n + 1);
      if (r == 1) return n + 1;
    }
    for (;;) {
      const mpz_class before = r;
      for (std::size_t j = 0; j < basis.period().size(); ++j) {
        step(++n);
        if (r == 1) return n;
      }
      if (r == before) return std::nullopt;
    }
  }
  // Rule elements grow without bound and every rule position index is at
  // least n, so every prime power of q that can ever divide shows up by n = q.
  if (!q.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "denominator too large for a rule basis");
  const std::size_t bound = basis.head_length() + q.get_ui() + 1;
  for (std::size_t n = 1; n <= bound; ++n) {
    step(n);
    if (r == 1) return n;
  }
  return std::nullopt;
}

std::size_t rationality_budget(const ExactRational& x, const BasisSequence& basis) {
  (void)basis;
  // phi^k(x) stays in [-1, 1] with denominator dividing den(x).
  const mpz_class states = 2 * x.den() + 2;
  if (!states.fits_ulong_p()) return std::numeric_limits<std::size_t>::max();
  return states.get_ui();
}

ProbeResult rationality_probe(const ExactRational& x, const BasisSequence& basis, std::size_t budget) {
  GreedyExpander expander(x, basis);
  std::map<ExactRational, std::size_t> seen;
  ProbeResult result;
  for (std::size_t k = 0; k <= budget; ++k) {
    const auto [it, inserted] = seen.emplace(expander.remainder(), k);
    result.iterations = k;
    if (!inserted) {
      result.witness = RationalWitness{it->second, k};
      return result;
    }
    if (k < budget) expander.next();
  }
  return result;
}

ProbeResult rationality_probe(const DigitString& digits, const BasisSequence& basis, std::size_t budget) {
  // value(NegaDn) = -value(NegaD) - value(all ones): probe the same digits read as NegaD.
  if (digits.kind() == SeriesKind::NegaDn) return rationality_probe(negad_of_negadn(digits, basis), basis, budget);
  if (exactly_evaluable(digits, basis) && digits.kind() == SeriesKind::NegaD) {
    return rationality_probe(evaluate_exact(digits, basis), basis, budget);
  }
  if (digits.kind() != SeriesKind::NegaD) throw Error(ErrorCode::InvalidArgument, "the probe reads negad strings");
  std::size_t last = budget;
  if (digits.is_truncated()) last = std::min(last, digits.prefix().size());
  std::vector<ExactInterval> orbit;
  orbit.push_back(as_interval(value_of(digits, basis)));
  for (std::size_t k = 1; k <= last; ++k) orbit.push_back(as_interval(shift(digits, basis, k).value));
  ProbeResult result;
  result.iterations = last;
  for (std::size_t t = 1; t < orbit.size(); ++t) {
    for (std::size_t k = 0; k < t; ++k) {
      if (orbit[k].intersects(orbit[t])) ++result.unrefuted_pairs;
    }
  }
  return result;
}

}  // namespace altcantor
