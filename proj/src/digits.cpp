#include "altcantor/digits.hpp"

#include <algorithm>
#include <numeric>

#include "altcantor/error.hpp"

namespace altcantor {

namespace {

const std::vector<Digit> kNoDigits;

std::string join(const std::vector<Digit>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

// Number of leading positions that determine validity of the whole sequence.
std::size_t validation_reach(const DigitPattern& p, const BasisSequence& basis) {
  const auto* periodic = std::get_if<PeriodicTail>(&p.tail);
  if (!periodic) return p.prefix.size();
  const std::size_t start = std::max(p.prefix.size(), basis.head_length());
  if (basis.is_exact()) return start + std::lcm(periodic->digits.size(), basis.period().size());
  // Rule elements increase past the head, so one period of digits settles every later position.
  return start + periodic->digits.size();
}

Digit pattern_digit(const DigitPattern& p, std::size_t n) {
  if (n <= p.prefix.size()) return p.prefix[n - 1];
  if (std::holds_alternative<ZerosTail>(p.tail)) return 0;
  if (const auto* periodic = std::get_if<PeriodicTail>(&p.tail)) {
    return periodic->digits[(n - p.prefix.size() - 1) % periodic->digits.size()];
  }
  throw Error(ErrorCode::ExactUnavailable, "digit " + std::to_string(n) + " lies beyond a truncated prefix");
}

}  // namespace

std::string_view series_kind_name(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::NegaD: return "negad";
    case SeriesKind::NegaDn: return "negadn";
    case SeriesKind::PositiveD: return "posd";
  }
  return "negad";
}

DigitString::DigitString(const DigitPattern& pattern, const BasisSequence& basis) : p_(pattern) {
  if (const auto* periodic = std::get_if<PeriodicTail>(&p_.tail); periodic && periodic->digits.empty()) {
    throw Error(ErrorCode::InvalidArgument, "periodic tail must be non-empty");
  }
  const std::size_t reach = validation_reach(p_, basis);
  for (std::size_t n = 1; n <= reach; ++n) {
    const Digit e = pattern_digit(p_, n);
    const Element d = basis.element(n);
    if (e < 0 || e >= d) {
      throw Error(ErrorCode::DigitOutOfRange, "digit " + std::to_string(e) + " at position " + std::to_string(n) +
                                                  " is outside {0,...," + std::to_string(d - 1) + "}");
    }
  }
}

const std::vector<Digit>& DigitString::period() const {
  if (const auto* periodic = std::get_if<PeriodicTail>(&p_.tail)) return periodic->digits;
  return kNoDigits;
}

std::size_t DigitString::tail_period() const {
  if (has_zeros_tail()) return 1;
  return period().size();
}

Digit DigitString::digit(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "digit positions start at 1");
  return pattern_digit(p_, n);
}

std::vector<Digit> DigitString::leading(std::size_t count) const {
  std::vector<Digit> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) out.push_back(digit(n));
  return out;
}

DigitString DigitString::normalized() const {
  DigitPattern p = p_;
  if (auto* periodic = std::get_if<PeriodicTail>(&p.tail)) {
    auto& per = periodic->digits;
    const std::size_t len = per.size();
    for (std::size_t t = 1; t <= len; ++t) {
      if (len % t) continue;
      bool ok = true;
      for (std::size_t i = t; i < len && ok; ++i) ok = per[i] == per[i - t];
      if (ok) {
        per.resize(t);
        break;
      }
    }
    while (!p.prefix.empty() && p.prefix.back() == per.back()) {
      std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
      p.prefix.pop_back();
    }
    if (per.size() == 1 && per[0] == 0) p.tail = ZerosTail{};
  }
  if (std::holds_alternative<ZerosTail>(p.tail)) {
    while (!p.prefix.empty() && p.prefix.back() == 0) p.prefix.pop_back();
  }
  return DigitString(Unchecked{}, std::move(p));
}

DigitString DigitString::with_kind(SeriesKind kind) const {
  DigitPattern p = p_;
  p.kind = kind;
  return DigitString(Unchecked{}, std::move(p));
}

bool DigitString::same_sequence(const DigitString& other) const {
  if (is_truncated() || other.is_truncated()) {
    return is_truncated() && other.is_truncated() && prefix() == other.prefix();
  }
  const std::size_t reach =
      std::max(prefix().size(), other.prefix().size()) + std::lcm(tail_period(), other.tail_period());
  for (std::size_t n = 1; n <= reach; ++n) {
    if (digit(n) != other.digit(n)) return false;
  }
  return true;
}

std::string DigitString::to_string() const {
  std::string s = join(p_.prefix);
  if (const auto* periodic = std::get_if<PeriodicTail>(&p_.tail)) {
    s += ";tail=periodic:" + join(periodic->digits);
  } else if (is_truncated()) {
    s += ";tail=trunc";
  }
  if (p_.kind != SeriesKind::NegaD) {
    s += ";kind=";
    s += series_kind_name(p_.kind);
  }
  return s;
}

DigitString make_digits(SeriesKind kind, std::vector<Digit> head, std::vector<Digit> cycle,
                        const BasisSequence& basis) {
  Tail tail = ZerosTail{};
  if (!cycle.empty()) tail = PeriodicTail{std::move(cycle)};
  return DigitString(DigitPattern{kind, std::move(head), std::move(tail)}, basis).normalized();
}

DigitLayout layout(const DigitString& digits, const BasisSequence& basis, std::size_t min_head,
                   std::size_t cycle_multiple) {
  if (digits.is_truncated()) throw Error(ErrorCode::ExactUnavailable, "truncated digits have no periodic layout");
  std::size_t h = std::max(digits.prefix().size(), min_head);
  std::size_t l = std::lcm(digits.tail_period(), std::max<std::size_t>(cycle_multiple, 1));
  if (basis.is_exact()) {
    h = std::max(h, basis.head_length());
    l = std::lcm(l, basis.period().size());
  }
  DigitLayout out;
  out.head = digits.leading(h);
  out.cycle.reserve(l);
  for (std::size_t n = h + 1; n <= h + l; ++n) out.cycle.push_back(digits.digit(n));
  return out;
}

}  // namespace altcantor
