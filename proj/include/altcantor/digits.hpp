#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "altcantor/basis.hpp"

namespace altcantor {

using Digit = std::int64_t;

// Series convention a digit string is read under.
//   NegaD:     sum (-1)^n e_n / (d_1...d_n)
//   NegaDn:    sum (1 + e_n)(-1)^(n+1) / (d_1...d_n)
//   PositiveD: sum e_n / (d_1...d_n)
enum class SeriesKind { NegaD, NegaDn, PositiveD };

struct ZerosTail {
  friend bool operator==(const ZerosTail&, const ZerosTail&) = default;
};
struct PeriodicTail {
  std::vector<Digit> digits;
  friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};
// Digits beyond the prefix are unknown.
struct TruncatedTail {
  friend bool operator==(const TruncatedTail&, const TruncatedTail&) = default;
};
using Tail = std::variant<ZerosTail, PeriodicTail, TruncatedTail>;

// Unvalidated digit description, as produced by parsers. Turn it into a
// DigitString by pairing it with a basis.
struct DigitPattern {
  SeriesKind kind = SeriesKind::NegaD;
  std::vector<Digit> prefix;
  Tail tail = ZerosTail{};
  friend bool operator==(const DigitPattern&, const DigitPattern&) = default;
};

// A digit sequence validated against a basis: every e_n lies in {0, ..., d_n - 1},
// including every position generated by a periodic tail.
class DigitString {
 public:
  DigitString(const DigitPattern& pattern, const BasisSequence& basis);
  DigitString(SeriesKind kind, std::vector<Digit> prefix, Tail tail, const BasisSequence& basis)
      : DigitString(DigitPattern{kind, std::move(prefix), std::move(tail)}, basis) {}

  SeriesKind kind() const { return p_.kind; }
  const std::vector<Digit>& prefix() const { return p_.prefix; }
  const Tail& tail() const { return p_.tail; }
  const DigitPattern& pattern() const { return p_; }

  bool has_zeros_tail() const { return std::holds_alternative<ZerosTail>(p_.tail); }
  bool is_truncated() const { return std::holds_alternative<TruncatedTail>(p_.tail); }
  // Period digits, empty unless the tail is periodic.
  const std::vector<Digit>& period() const;
  // Tail period length as a digit sequence: 1 for zeros, t for periodic, 0 for truncated.
  std::size_t tail_period() const;

  // e_n for n >= 1. Throws ExactUnavailable past the prefix of a truncated string.
  Digit digit(std::size_t n) const;
  // e_1 ... e_count.
  std::vector<Digit> leading(std::size_t count) const;

  // Same digit sequence with the minimal prefix/period description.
  DigitString normalized() const;
  DigitString with_kind(SeriesKind kind) const;

  // Digit-level identity of the described sequences (tails compared as sequences).
  bool same_sequence(const DigitString& other) const;

  // Grammar form: "c1,c2,...;tail=zeros|periodic:...|trunc;kind=negad|negadn|posd".
  std::string to_string() const;

  friend bool operator==(const DigitString& a, const DigitString& b) { return a.p_ == b.p_; }

 private:
  struct Unchecked {};
  DigitString(Unchecked, DigitPattern pattern) : p_(std::move(pattern)) {}

  DigitPattern p_;
};

// Validating constructor helpers used across modules.
// Builds the eventually periodic sequence `head` followed by `cycle` repeated
// and returns its normalized DigitString.
DigitString make_digits(SeriesKind kind, std::vector<Digit> head, std::vector<Digit> cycle,
                        const BasisSequence& basis);

// Eventually periodic digits laid out as an explicit head followed by a
// repeating cycle. The head covers at least `min_head` positions and the basis
// preperiod; the cycle length is a multiple of the tail period, of the basis
// period (exact bases) and of `cycle_multiple`, so position-dependent maps
// stay periodic. Not defined for truncated strings.
struct DigitLayout {
  std::vector<Digit> head;
  std::vector<Digit> cycle;
};
DigitLayout layout(const DigitString& digits, const BasisSequence& basis, std::size_t min_head = 0,
                   std::size_t cycle_multiple = 1);

std::string_view series_kind_name(SeriesKind kind);

}  // namespace altcantor
