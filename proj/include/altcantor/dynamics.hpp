#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "altcantor/basis.hpp"
#include "altcantor/digits.hpp"
#include "altcantor/rational.hpp"
#include "altcantor/series.hpp"

namespace altcantor {

struct ShiftResult {
  DigitString digits;
  BasisSequence basis;  // D_k for shift, the basis without position m for shift_delete
  SeriesValue value;
};

// phi^k: drops e_1..e_k and moves to the basis D_k. For exact inputs the
// value is also computed from the closed form
//   (-1)^k d_1...d_k x + (-1)^(k+1) d_1...d_k value(e_1..e_k 0 0 ...)
// and the two must agree.
ShiftResult shift(const DigitString& digits, const BasisSequence& basis, std::size_t k);

// The closed form on values; `leading` holds e_1..e_k.
ExactRational shift_closed_form(const ExactRational& x, std::span<const Digit> leading, const BasisSequence& basis);

// phi^k of a number through its canonical digits.
ExactRational shift_value(const ExactRational& x, const BasisSequence& basis, std::size_t k);

// phi_m: removes digit m and element m.
ShiftResult shift_delete(const DigitString& digits, const BasisSequence& basis, std::size_t m);

// Shifts the digits left over the same basis. Defined everywhere iff the
// basis is non-increasing; otherwise only when every digit fits its new slot.
DigitString digit_shift(const DigitString& digits, const BasisSequence& basis);

// -i/(d+1), i = 0..d-1, for a constant basis.
std::vector<ExactRational> fixed_points(const BasisSequence& basis);

// The x with phi^m(x) = x whose first m digits are `prefix`; the basis must be
// purely periodic with period dividing m.
ExactRational periodic_point(const BasisSequence& basis, std::span<const Digit> prefix);

// The x with phi^m(x) = phi^(m+c)(x) whose first m+c digits are `prefix`.
ExactRational preperiodic_point(const BasisSequence& basis, std::span<const Digit> prefix, std::size_t m,
                                std::size_t c);

// Least n0 with q | d_1...d_n0, if any (0 when q = 1).
std::optional<std::size_t> finite_expansion(const mpz_class& p, const mpz_class& q, const BasisSequence& basis);

struct RationalWitness {
  std::size_t k;
  std::size_t t;
  friend bool operator==(const RationalWitness&, const RationalWitness&) = default;
};

struct ProbeResult {
  std::optional<RationalWitness> witness;  // empty: no repeat within the budget
  std::size_t iterations = 0;
  // Digit streams only: pairs (k, t) whose enclosures still overlap at the end.
  std::size_t unrefuted_pairs = 0;
};

// First k < t with phi^k(x) = phi^t(x), iterating at most `budget` shifts.
ProbeResult rationality_probe(const ExactRational& x, const BasisSequence& basis, std::size_t budget);
// Exact strings are evaluated and probed as numbers. Truncated strings and rule
// bases give only enclosures, so a repeat can be refuted but never confirmed.
// NegaDn strings are probed as the same digits read as NegaD.
ProbeResult rationality_probe(const DigitString& digits, const BasisSequence& basis, std::size_t budget);

// Enough iterations to decide the probe for x over an exact basis.
std::size_t rationality_budget(const ExactRational& x, const BasisSequence& basis);

}  // namespace altcantor
