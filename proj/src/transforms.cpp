#include "altcantor/transforms.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "altcantor/error.hpp"

namespace altcantor {

namespace {

using DigitMap = std::function<Digit(std::size_t n, Digit e)>;

// Applies a position-dependent digit map. Maps that read the basis need an
// exact basis unless the string is truncated (only the prefix is touched).
DigitString map_digits(const DigitString& digits, const BasisSequence& basis, SeriesKind kind, const DigitMap& f,
                       std::size_t cycle_multiple) {
  if (digits.is_truncated()) {
    std::vector<Digit> prefix = digits.prefix();
    for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = f(i + 1, prefix[i]);
    return DigitString(kind, std::move(prefix), TruncatedTail{}, basis);
  }
  if (!basis.is_exact()) {
    throw Error(ErrorCode::UnsupportedBasis, "digit map over a rule basis leaves no periodic description");
  }
  DigitLayout lay = layout(digits, basis, 0, cycle_multiple);
  const std::size_t h = lay.head.size();
  for (std::size_t i = 0; i < h; ++i) lay.head[i] = f(i + 1, lay.head[i]);
  for (std::size_t i = 0; i < lay.cycle.size(); ++i) lay.cycle[i] = f(h + i + 1, lay.cycle[i]);
  return make_digits(kind, std::move(lay.head), std::move(lay.cycle), basis);
}

SeriesKind flipped(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::PositiveD: return SeriesKind::NegaDn;
    case SeriesKind::NegaDn: return SeriesKind::PositiveD;
    case SeriesKind::NegaD: break;
  }
  throw Error(ErrorCode::InvalidArgument, "parity complement maps between posd and negadn strings");
}

}  // namespace

DigitString negadn_of_negad(const DigitString& digits, const BasisSequence& basis) {
  if (digits.kind() != SeriesKind::NegaD) throw Error(ErrorCode::InvalidArgument, "expected a negad string");
  return DigitString(digits.pattern(), basis).with_kind(SeriesKind::NegaDn);
}

DigitString negad_of_negadn(const DigitString& digits, const BasisSequence& basis) {
  if (digits.kind() != SeriesKind::NegaDn) throw Error(ErrorCode::InvalidArgument, "expected a negadn string");
  return DigitString(digits.pattern(), basis).with_kind(SeriesKind::NegaD);
}

DigitString parity_complement(const DigitString& digits, const BasisSequence& basis, Parity which) {
  const SeriesKind kind = flipped(digits.kind());
  const std::size_t hit = which == Parity::Even ? 0 : 1;
  return map_digits(
      digits, basis, kind,
      [&](std::size_t n, Digit e) { return n % 2 == hit ? basis.element(n) - 1 - e : e; }, 2);
}

CompressedDigits pair_compress(const DigitString& digits, const BasisSequence& basis) {
  const SeriesKind kind = digits.kind();
  if (kind == SeriesKind::NegaD) throw Error(ErrorCode::InvalidArgument, "pair compression takes posd or negadn strings");
  CompressedBasis cb(basis);
  const bool padded = digits.prefix().size() % 2 == 1;
  auto combine = [&](std::size_t pair, Digit odd, Digit even) -> Digit {
    const Digit d2 = basis.element(2 * pair);
    if (kind == SeriesKind::PositiveD) return odd * d2 + even;
    return (odd + 1) * d2 - even - 1;
  };
  if (digits.is_truncated()) {
    if (padded) throw Error(ErrorCode::InvalidArgument, "truncated prefix of odd length cannot be paired");
    std::vector<Digit> out;
    const auto& p = digits.prefix();
    for (std::size_t i = 0; i + 1 < p.size(); i += 2) out.push_back(combine(i / 2 + 1, p[i], p[i + 1]));
    return {DigitString(SeriesKind::PositiveD, std::move(out), TruncatedTail{}, cb.compressed), cb, kind, padded};
  }
  if (!basis.is_exact() && !(kind == SeriesKind::PositiveD && digits.has_zeros_tail())) {
    throw Error(ErrorCode::UnsupportedBasis, "compressed digits over a rule basis leave no periodic description");
  }
  // Lay out so both the head and the cycle have even length; pairs never straddle.
  DigitLayout lay = layout(digits, basis, digits.prefix().size() + (padded ? 1 : 0), 2);
  if (lay.head.size() % 2 == 1) {
    lay.head.push_back(lay.cycle.front());
    std::rotate(lay.cycle.begin(), lay.cycle.begin() + 1, lay.cycle.end());
  }
  std::vector<Digit> head, cycle;
  for (std::size_t i = 0; i < lay.head.size(); i += 2) head.push_back(combine(i / 2 + 1, lay.head[i], lay.head[i + 1]));
  const std::size_t base = lay.head.size() / 2;
  for (std::size_t i = 0; i < lay.cycle.size(); i += 2) {
    cycle.push_back(combine(base + i / 2 + 1, lay.cycle[i], lay.cycle[i + 1]));
  }
  if (kind == SeriesKind::PositiveD && digits.has_zeros_tail()) cycle.clear();
  return {make_digits(SeriesKind::PositiveD, std::move(head), std::move(cycle), cb.compressed), cb, kind, padded};
}

DigitString pair_decompress(const CompressedDigits& c) {
  const BasisSequence& basis = c.basis.source;
  const SeriesKind kind = c.source_kind;
  auto split = [&](std::size_t pair, Digit v, std::vector<Digit>& out) {
    const Digit d2 = basis.element(2 * pair);
    if (kind == SeriesKind::PositiveD) {
      out.push_back(v / d2);
      out.push_back(v % d2);
    } else {
      out.push_back(v / d2);
      out.push_back(d2 - 1 - v % d2);
    }
  };
  if (c.digits.is_truncated()) {
    std::vector<Digit> out;
    for (std::size_t i = 0; i < c.digits.prefix().size(); ++i) split(i + 1, c.digits.prefix()[i], out);
    return DigitString(kind, std::move(out), TruncatedTail{}, basis);
  }
  if (kind == SeriesKind::PositiveD && c.digits.has_zeros_tail()) {
    std::vector<Digit> out;
    for (std::size_t i = 0; i < c.digits.prefix().size(); ++i) split(i + 1, c.digits.prefix()[i], out);
    return make_digits(kind, std::move(out), {}, basis);
  }
  DigitLayout lay = layout(c.digits, c.basis.compressed);
  // The source basis period in pairs must divide the cycle as well.
  if (basis.is_exact()) {
    const std::size_t pairs = std::lcm(basis.period().size(), std::size_t{2}) / 2;
    const std::size_t target = std::lcm(lay.cycle.size(), pairs);
    std::vector<Digit> cycle;
    for (std::size_t i = 0; i < target; ++i) cycle.push_back(lay.cycle[i % lay.cycle.size()]);
    lay.cycle = std::move(cycle);
    while (2 * lay.head.size() < basis.head_length()) {
      lay.head.push_back(lay.cycle.front());
      std::rotate(lay.cycle.begin(), lay.cycle.begin() + 1, lay.cycle.end());
    }
  }
  std::vector<Digit> head, cycle;
  for (std::size_t i = 0; i < lay.head.size(); ++i) split(i + 1, lay.head[i], head);
  for (std::size_t i = 0; i < lay.cycle.size(); ++i) split(lay.head.size() + i + 1, lay.cycle[i], cycle);
  return make_digits(kind, std::move(head), std::move(cycle), basis);
}

std::pair<DigitString, DigitString> parity_split(const DigitString& digits, const BasisSequence& basis) {
  auto mask = [&](std::size_t keep) {
    const DigitMap f = [keep](std::size_t n, Digit e) { return n % 2 == keep ? e : Digit{0}; };
    if (digits.is_truncated()) {
      std::vector<Digit> p = digits.prefix();
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = f(i + 1, p[i]);
      return DigitString(digits.kind(), std::move(p), TruncatedTail{}, basis);
    }
    // Masking needs only the digit period, not the basis period.
    const std::size_t h = digits.prefix().size();
    const std::size_t l = std::lcm(digits.tail_period(), std::size_t{2});
    std::vector<Digit> head = digits.leading(h), cycle;
    for (std::size_t i = 0; i < h; ++i) head[i] = f(i + 1, head[i]);
    if (!digits.has_zeros_tail()) {
      for (std::size_t n = h + 1; n <= h + l; ++n) cycle.push_back(f(n, digits.digit(n)));
    }
    return make_digits(digits.kind(), std::move(head), std::move(cycle), basis);
  };
  return {mask(1), mask(0)};
}

}  // namespace altcantor
