#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "altcantor/basis.hpp"
#include "altcantor/digits.hpp"
#include "altcantor/interval.hpp"
#include "altcantor/rational.hpp"

namespace altcantor {

inline constexpr std::size_t kDefaultCountBound = std::size_t{1} << 22;

// Digits c_1..c_m fixing a rank-m cylinder.
using CylinderBase = std::vector<Digit>;

// Closed interval of all numbers whose first m canonical or twin digits are the base.
ExactInterval cylinder(std::span<const Digit> base, const BasisSequence& basis);

// The rank-m base containing x, chosen by the canonical encoding on shared endpoints.
CylinderBase locate(const ExactRational& x, const BasisSequence& basis, std::size_t rank);

// Fixed digits c_i at positions k_1 < k_2 < ... (1-based).
struct PositionConstraint {
  std::vector<std::pair<std::size_t, Digit>> entries;
};

struct PositionStats {
  ExactRational measure;
  ExactRational diameter;
};

// Lebesgue measure and diameter of the set of numbers with the constrained
// digits (the domain has length 1).
PositionStats position_set_stats(const PositionConstraint& constraint, const BasisSequence& basis);

// All rank-`rank` bases obeying the constraint, in lexicographic order.
std::vector<CylinderBase> position_set_cover(const PositionConstraint& constraint, const BasisSequence& basis,
                                             std::size_t rank, std::size_t count_bound = kDefaultCountBound);

// The incomplete sums of a fixed NegaD series: each digit is either e_n or 0.
struct IncompleteSumSpec {
  DigitString s0;
  BasisSequence basis;

  IncompleteSumSpec(const DigitString& digits, const BasisSequence& b);
};

// Smallest interval holding every incomplete sum whose first n choices are `selection`.
ExactInterval ms0_cylinder(const IncompleteSumSpec& spec, std::span<const Digit> selection);

struct MsCoverInterval {
  CylinderBase selection;
  ExactInterval interval;
};

// Distance between the two children of `parent` at the last level.
struct SiblingGap {
  CylinderBase parent;
  ExactRational gap;
};

struct MsCover {
  std::size_t depth = 0;
  std::vector<MsCoverInterval> intervals;  // sorted by lo
  ExactRational total_length;
  std::vector<SiblingGap> gaps;  // one per parent with e_depth != 0
};

MsCover ms0_cover(const IncompleteSumSpec& spec, std::size_t depth, std::size_t count_bound = kDefaultCountBound);

// (e_n - sum_k e_{n+k} / (d_{n+1}...d_{n+k})) / (d_1...d_n); 0 when e_n = 0.
ExactRational ms0_gap(const IncompleteSumSpec& spec, std::size_t n);

enum class MsClass { Singleton, FiniteSet, FullSegment, FiniteUnionOfSegments, CantorNull, UnclassifiedEmpirical };

struct MsClassification {
  MsClass kind;
  std::optional<ExactInterval> segment = std::nullopt;  // FullSegment only
  // Cover statistics, filled for UnclassifiedEmpirical.
  std::size_t cover_depth = 0;
  std::size_t cover_count = 0;
  std::optional<ExactRational> cover_total = std::nullopt;
};

MsClassification ms0_classify(const IncompleteSumSpec& spec);

std::string_view ms_class_name(MsClass kind);

struct FaithfulGate {
  bool passed;
  std::optional<mpz_class> comparison_constant;  // (sup d_n)^2 when bounded
};

// Cylinder covers give the same dimension as arbitrary covers for bounded bases.
FaithfulGate faithful_gate(const BasisSequence& basis);

// C[-D, V]: numbers whose every digit lies in V.
struct DigitAlphabet {
  std::vector<Digit> digits;
};

using CoverTarget = std::variant<PositionConstraint, IncompleteSumSpec, DigitAlphabet>;

struct CoveringSum {
  double alpha;
  double log_sum;  // natural log of sum |cylinder|^alpha
};

struct DimensionOptions {
  std::vector<double> alpha_grid;  // empty: 0, 0.05, ..., 1
  double tolerance = 1e-3;
  bool require_gate = true;
  std::size_t count_bound = kDefaultCountBound;
};

struct DimensionEstimate {
  double estimate;
  std::vector<CoveringSum> table;
  FaithfulGate gate;
  std::size_t depth;
};

// Rank-`depth` cylinder covering sums over the alpha grid; the estimate is
// where the sum crosses 1, refined by bisection.
DimensionEstimate dimension_estimate(const CoverTarget& target, const BasisSequence& basis, std::size_t depth,
                                     const DimensionOptions& options = {});

}  // namespace altcantor
