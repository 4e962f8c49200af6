#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "altcantor/basis.hpp"
#include "altcantor/digits.hpp"
#include "altcantor/interval.hpp"
#include "altcantor/rational.hpp"

namespace altcantor {

enum class EncodingClass { Terminating, PeriodicTail, TruncatedAtHorizon };

struct EncodingResult {
  DigitString digits;
  EncodingClass classification;
  std::size_t steps_used;
};

struct EncodeOptions {
  // With cycle detection off the horizon becomes a hard limit (HorizonExceeded).
  bool cycle_detection = true;
};

// Greedy cylinder selection for x in [a_0 - 1, a_0]. Emits the canonical
// digits e_1, e_2, ... one at a time and tracks the remainder phi^n(x), which
// lies in the domain of the shifted basis D_n.
class GreedyExpander {
 public:
  GreedyExpander(const ExactRational& x, const BasisSequence& basis);

  std::size_t position() const { return n_; }
  const ExactRational& remainder() const { return y_; }
  const BasisSequence& basis() const { return basis_; }

  // a_n for the current position (exact bases only).
  ExactRational current_tail_sum() const { return tail_sum_at(n_); }

  // Emits e_{n+1} and advances the remainder to phi^{n+1}(x).
  Digit next();

 private:
  ExactRational tail_sum_at(std::size_t n) const;
  mpz_class floor_of_offset(const ExactRational& t, std::size_t n) const;

  BasisSequence basis_;
  ExactRational y_;
  std::size_t n_ = 0;
  mutable std::vector<ExactRational> tail_cache_;
};

// True when x lies in the domain of the basis (decided by refinement for rule bases).
bool in_domain(const ExactRational& x, const BasisSequence& basis);

// Canonical NegaD encoding of x. Exact bases always end in a zeros or periodic
// tail; rule bases terminate when the remainder reaches 0 and are otherwise
// truncated at the horizon.
EncodingResult encode(const ExactRational& x, const BasisSequence& basis, std::size_t horizon,
                      EncodeOptions options = {});

// First `count` canonical digits of x.
std::vector<Digit> leading_digits(const ExactRational& x, const BasisSequence& basis, std::size_t count);

// The other representation of the same number, if the string ends in one of
// the alternating (d-1, 0, ...) / (0, d-1, ...) tails from some position m+1 >= 2.
std::optional<DigitString> twin(const DigitString& digits, const BasisSequence& basis);

// Replaces the excluded representation (tail e_{m+2i-1} = 0, e_{m+2i} = d - 1)
// by its twin; normalizes the description. Idempotent.
DigitString canonicalize(const DigitString& digits, const BasisSequence& basis);

bool is_nega_d_rational(const DigitString& digits, const BasisSequence& basis);

// Order of the represented numbers, decided on canonical digits.
std::strong_ordering compare(const DigitString& a, const DigitString& b, const BasisSequence& basis);

// Digit string reading e_m.. from position `start` as the alternating extremal
// tail: top = (d-1, 0, d-1, ...), bottom = (0, d-1, 0, ...), with the given leading digits.
DigitString alternating_tail(std::vector<Digit> leading, std::size_t start, bool top, const BasisSequence& basis);

}  // namespace altcantor
