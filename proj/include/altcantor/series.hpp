#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include "altcantor/basis.hpp"
#include "altcantor/digits.hpp"
#include "altcantor/interval.hpp"
#include "altcantor/rational.hpp"

namespace altcantor {

// Exact closed form, or a rigorous enclosure from a depth-truncated sum.
struct EvalMode {
  enum class Type { Exact, Interval };
  Type type = Type::Exact;
  std::size_t depth = 0;

  static EvalMode exact() { return {Type::Exact, 0}; }
  static EvalMode interval(std::size_t depth) { return {Type::Interval, depth}; }
};

using SeriesValue = std::variant<ExactRational, ExactInterval>;

// Enclosure of a series value: a point interval for exact values.
ExactInterval as_interval(const SeriesValue& v);

// a_n = sum_{k>=1} (-1)^(k+1) / (d_{n+1} ... d_{n+k}).
ExactRational tail_sum(const BasisSequence& basis, std::size_t n);
// Enclosure of a_n between consecutive partial sums of depth and depth+1 terms.
ExactInterval tail_sum_enclosure(const BasisSequence& basis, std::size_t n, std::size_t depth);
SeriesValue tail_sum(const BasisSequence& basis, std::size_t n, EvalMode mode);

// [a_0 - 1, a_0].
ExactInterval domain(const BasisSequence& basis);
// Enclosure of the domain hull for any basis (exact when the basis is).
ExactInterval domain_enclosure(const BasisSequence& basis, std::size_t depth);

// Bounds on the residual r_n = sum_{k>n} (-1)^k e_k / (d_1...d_k) over all digit choices.
ExactInterval residual_bounds(const BasisSequence& basis, std::size_t n);
ExactInterval residual_bounds_enclosure(const BasisSequence& basis, std::size_t n, std::size_t depth);

// Signed partial sum of the first n terms under the string's convention.
ExactRational partial_sum(const DigitString& digits, const BasisSequence& basis, std::size_t n);

// Value of the digit string under its series convention.
//  - exact: requires an exact basis and a zeros/periodic tail;
//  - interval(depth): sums `depth` terms (at least the prefix) and adds the residual enclosure.
// A truncated tail always yields an interval: the prefix value plus the residual bounds.
SeriesValue evaluate(const DigitString& digits, const BasisSequence& basis, EvalMode mode);
ExactRational evaluate_exact(const DigitString& digits, const BasisSequence& basis);
// True when evaluate_exact succeeds: an exact basis, or finitely many nonzero
// NegaD/PositiveD terms over a rule basis.
bool exactly_evaluable(const DigitString& digits, const BasisSequence& basis);
ExactInterval evaluate_enclosure(const DigitString& digits, const BasisSequence& basis, std::size_t depth);

// Value of NegaD digits e_1..e_k followed by zeros (the point Delta_{e_1...e_k(0)}).
ExactRational negad_prefix_value(std::span<const Digit> digits, const BasisSequence& basis);

}  // namespace altcantor
