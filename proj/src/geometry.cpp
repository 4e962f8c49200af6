#include "altcantor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "altcantor/codec.hpp"
#include "altcantor/error.hpp"
#include "altcantor/series.hpp"

namespace altcantor {

namespace {

double log_of(const mpz_class& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

void check_base(std::span<const Digit> base, const BasisSequence& basis) {
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i] < 0 || base[i] >= basis.element(i + 1)) {
      throw Error(ErrorCode::DigitOutOfRange,
                  "digit " + std::to_string(base[i]) + " out of range at position " + std::to_string(i + 1));
    }
  }
}

void check_constraint(const PositionConstraint& c, const BasisSequence& basis) {
  std::size_t last = 0;
  for (const auto& [k, digit] : c.entries) {
    if (k <= last) throw Error(ErrorCode::InvalidArgument, "constraint positions must increase from 1");
    if (digit < 0 || digit >= basis.element(k)) {
      throw Error(ErrorCode::DigitOutOfRange, "digit " + std::to_string(digit) + " out of range at position " +
                                                  std::to_string(k));
    }
    last = k;
  }
}

// NegaD value of the s0 digits past position n, keeping only positions of the given parity.
ExactRational masked_tail(const IncompleteSumSpec& spec, std::size_t n, std::size_t parity) {
  DigitLayout lay = layout(spec.s0, spec.basis, n, 2);
  const std::size_t h = lay.head.size();
  auto keep = [&](std::size_t pos) { return pos > n && pos % 2 == parity; };
  for (std::size_t i = 0; i < h; ++i) {
    if (!keep(i + 1)) lay.head[i] = 0;
  }
  bool zero_cycle = true;
  for (std::size_t i = 0; i < lay.cycle.size(); ++i) {
    if (!keep(h + i + 1)) lay.cycle[i] = 0;
    zero_cycle = zero_cycle && lay.cycle[i] == 0;
  }
  if (zero_cycle) lay.cycle.clear();
  return evaluate_exact(make_digits(SeriesKind::NegaD, std::move(lay.head), std::move(lay.cycle), spec.basis),
                        spec.basis);
}

void check_selection(const IncompleteSumSpec& spec, std::span<const Digit> selection) {
  for (std::size_t i = 0; i < selection.size(); ++i) {
    const Digit e = spec.s0.digit(i + 1);
    if (selection[i] != 0 && selection[i] != e) {
      throw Error(ErrorCode::InvalidSelection, "choice " + std::to_string(selection[i]) + " at position " +
                                                   std::to_string(i + 1) + " is neither 0 nor " + std::to_string(e));
    }
  }
}

// A cover made of `count` cylinders of length 1/inverse_length each.
struct CoverGroup {
  mpz_class count;
  mpz_class inverse_length;
};

double log_covering_sum(const std::vector<CoverGroup>& groups, double alpha) {
  std::vector<double> terms;
  for (const auto& g : groups) terms.push_back(log_of(g.count) - alpha * log_of(g.inverse_length));
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

}  // namespace

ExactInterval cylinder(std::span<const Digit> base, const BasisSequence& basis) {
  check_base(base, basis);
  const std::size_t m = base.size();
  const ExactRational g = negad_prefix_value(base, basis);
  const ExactRational a = tail_sum(basis, m);
  const ExactRational scale = ExactRational(parity_sign(m)) / ExactRational(basis.prefix_product(m));
  const ExactRational u = g + (a - ExactRational(1)) * scale;
  const ExactRational v = g + a * scale;
  return {min(u, v), max(u, v)};
}

CylinderBase locate(const ExactRational& x, const BasisSequence& basis, std::size_t rank) {
  return leading_digits(x, basis, rank);
}

PositionStats position_set_stats(const PositionConstraint& constraint, const BasisSequence& basis) {
  check_constraint(constraint, basis);
  ExactRational measure(1);
  ExactRational diameter(1);
  for (const auto& [k, digit] : constraint.entries) {
    const Element d = basis.element(k);
    measure = measure / ExactRational(d);
    diameter = diameter - ExactRational(mpz_class(d - 1), basis.prefix_product(k));
  }
  return {measure, diameter};
}

std::vector<CylinderBase> position_set_cover(const PositionConstraint& constraint, const BasisSequence& basis,
                                             std::size_t rank, std::size_t count_bound) {
  check_constraint(constraint, basis);
  if (!constraint.entries.empty() && constraint.entries.back().first > rank) {
    throw Error(ErrorCode::InvalidArgument, "cover rank is below the last constrained position");
  }
  std::vector<std::optional<Digit>> fixed(rank);
  for (const auto& [k, digit] : constraint.entries) fixed[k - 1] = digit;
  mpz_class count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    if (!fixed[i]) count *= static_cast<unsigned long>(basis.element(i + 1));
  }
  if (count > static_cast<unsigned long>(count_bound)) {
    throw Error(ErrorCode::CombinatorialLimit, "cover needs " + count.get_str() + " cylinders");
  }
  std::vector<CylinderBase> out;
  out.reserve(count.get_ui());
  CylinderBase cur(rank, 0);
  for (std::size_t i = 0; i < rank; ++i) {
    if (fixed[i]) cur[i] = *fixed[i];
  }
  std::vector<std::size_t> free_positions;
  for (std::size_t i = 0; i < rank; ++i) {
    if (!fixed[i]) free_positions.push_back(i);
  }
  // Odometer over the free positions, last position fastest.
  for (bool more = true; more;) {
    out.push_back(cur);
    more = false;
    for (std::size_t j = free_positions.size(); j-- > 0;) {
      const std::size_t i = free_positions[j];
      if (++cur[i] < basis.element(i + 1)) {
        more = true;
        break;
      }
      cur[i] = 0;
    }
  }
  return out;
}

IncompleteSumSpec::IncompleteSumSpec(const DigitString& digits, const BasisSequence& b)
    : s0(DigitString(digits.pattern(), b).normalized()), basis(b) {
  if (s0.kind() != SeriesKind::NegaD) throw Error(ErrorCode::InvalidArgument, "s0 must be a negad string");
  if (s0.is_truncated()) throw Error(ErrorCode::InvalidArgument, "s0 must be eventually periodic");
}

ExactInterval ms0_cylinder(const IncompleteSumSpec& spec, std::span<const Digit> selection) {
  check_selection(spec, selection);
  const std::size_t n = selection.size();
  const ExactRational g = negad_prefix_value(selection, spec.basis);
  return {g + masked_tail(spec, n, 1), g + masked_tail(spec, n, 0)};
}

MsCover ms0_cover(const IncompleteSumSpec& spec, std::size_t depth, std::size_t count_bound) {
  std::size_t free = 0;
  for (std::size_t i = 1; i <= depth; ++i) free += spec.s0.digit(i) != 0;
  if (free >= 63 || (std::size_t{1} << free) > count_bound) {
    throw Error(ErrorCode::CombinatorialLimit, "cover needs 2^" + std::to_string(free) + " intervals");
  }
  const ExactRational lo_off = masked_tail(spec, depth, 1);
  const ExactRational hi_off = masked_tail(spec, depth, 0);
  const Digit last = depth > 0 ? spec.s0.digit(depth) : 0;

  MsCover cover;
  cover.depth = depth;
  cover.intervals.reserve(std::size_t{1} << free);
  CylinderBase sel(depth, 0);
  std::vector<ExactRational> weights(depth);
  for (std::size_t i = 1; i <= depth; ++i) {
    weights[i - 1] = ExactRational(parity_sign(i) * spec.s0.digit(i)) / ExactRational(spec.basis.prefix_product(i));
  }
  // Depth-first over the choices; g carries the prefix value.
  auto visit = [&](auto&& self, std::size_t pos, const ExactRational& g) -> void {
    if (pos == depth) {
      cover.intervals.push_back({sel, ExactInterval(g + lo_off, g + hi_off)});
      return;
    }
    sel[pos] = 0;
    self(self, pos + 1, g);
    if (spec.s0.digit(pos + 1) != 0) {
      sel[pos] = spec.s0.digit(pos + 1);
      self(self, pos + 1, g + weights[pos]);
      sel[pos] = 0;
    }
  };
  visit(visit, 0, ExactRational(0));

  if (depth > 0 && last != 0) {
    // Siblings differ only in the last choice and are adjacent in DFS order.
    for (std::size_t i = 0; i + 1 < cover.intervals.size(); i += 2) {
      const ExactInterval& a = cover.intervals[i].interval;
      const ExactInterval& b = cover.intervals[i + 1].interval;
      const ExactRational gap = max(a.lo(), b.lo()) - min(a.hi(), b.hi());
      CylinderBase parent(cover.intervals[i].selection.begin(), cover.intervals[i].selection.end() - 1);
      cover.gaps.push_back({std::move(parent), gap});
    }
  }
  const ExactRational width = hi_off - lo_off;
  cover.total_length = width * ExactRational(static_cast<long>(cover.intervals.size()));
  std::stable_sort(cover.intervals.begin(), cover.intervals.end(),
                   [](const MsCoverInterval& a, const MsCoverInterval& b) { return a.interval.lo() < b.interval.lo(); });
  return cover;
}

ExactRational ms0_gap(const IncompleteSumSpec& spec, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "gap level starts at 1");
  // With e_n = 0 both children are the same interval.
  if (spec.s0.digit(n) == 0) return ExactRational(0);
  // sum_{k>n} e_k / (d_1...d_k) is the width of the rank-n cylinder.
  const ExactRational rest = masked_tail(spec, n, 0) - masked_tail(spec, n, 1);
  return ExactRational(spec.s0.digit(n)) / ExactRational(spec.basis.prefix_product(n)) - rest;
}

MsClassification ms0_classify(const IncompleteSumSpec& spec) {
  const DigitString& s = spec.s0;
  const BasisSequence& b = spec.basis;
  const bool finite = s.has_zeros_tail();
  if (finite && std::all_of(s.prefix().begin(), s.prefix().end(), [](Digit e) { return e == 0; })) {
    return {MsClass::Singleton, std::nullopt};
  }
  if (finite) return {MsClass::FiniteSet, std::nullopt};
  const bool tail_ones = s.period() == std::vector<Digit>{1};
  const bool basis_eventually_two = b.is_exact() && b.period() == std::vector<Element>{2};
  if (basis_eventually_two && tail_ones) {
    if (b.is_constant() && s.prefix().empty()) return {MsClass::FullSegment, ms0_cylinder(spec, {})};
    return {MsClass::FiniteUnionOfSegments, std::nullopt};
  }
  if (!basis_eventually_two) return {MsClass::CantorNull, std::nullopt};
  MsClassification out{MsClass::UnclassifiedEmpirical, std::nullopt};
  out.cover_depth = 12;
  const MsCover cover = ms0_cover(spec, out.cover_depth);
  out.cover_count = cover.intervals.size();
  out.cover_total = cover.total_length;
  return out;
}

std::string_view ms_class_name(MsClass kind) {
  switch (kind) {
    case MsClass::Singleton: return "singleton";
    case MsClass::FiniteSet: return "finite_set";
    case MsClass::FullSegment: return "full_segment";
    case MsClass::FiniteUnionOfSegments: return "finite_union_of_segments";
    case MsClass::CantorNull: return "cantor_null";
    case MsClass::UnclassifiedEmpirical: return "unclassified_empirical";
  }
  return "unknown";
}

FaithfulGate faithful_gate(const BasisSequence& basis) {
  const auto top = basis.max_element();
  if (!top) return {false, std::nullopt};
  const mpz_class d(static_cast<long>(*top));
  return {true, d * d};
}

DimensionEstimate dimension_estimate(const CoverTarget& target, const BasisSequence& basis, std::size_t depth,
                                     const DimensionOptions& options) {
  DimensionEstimate out{0.0, {}, faithful_gate(basis), depth};
  if (!out.gate.passed && options.require_gate) {
    throw Error(ErrorCode::GateFailed, "cylinder covers are not known to be faithful for unbounded bases");
  }
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  const mpz_class inverse_length = basis.prefix_product(depth);
  mpz_class count = 1;
  if (const auto* alphabet = std::get_if<DigitAlphabet>(&target)) {
    for (std::size_t n = 1; n <= depth; ++n) {
      for (Digit v : alphabet->digits) check_base(std::span<const Digit>(&v, 1), basis.shifted(n - 1));
    }
    std::vector<Digit> v = alphabet->digits;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) throw Error(ErrorCode::InvalidArgument, "empty digit alphabet");
    mpz_ui_pow_ui(count.get_mpz_t(), v.size(), depth);
  } else if (const auto* c = std::get_if<PositionConstraint>(&target)) {
    check_constraint(*c, basis);
    if (!c->entries.empty() && c->entries.back().first > depth) {
      throw Error(ErrorCode::InvalidArgument, "depth is below the last constrained position");
    }
    count = inverse_length;
    for (const auto& [k, digit] : c->entries) count /= static_cast<unsigned long>(basis.element(k));
  } else {
    const auto& spec = std::get<IncompleteSumSpec>(target);
    if (!(spec.basis == basis)) throw Error(ErrorCode::InvalidArgument, "spec basis differs from the given basis");
    // Rank-depth cylinders of the selections.
    for (std::size_t i = 1; i <= depth; ++i) {
      if (spec.s0.digit(i) != 0) count *= 2;
    }
  }
  if (count > static_cast<unsigned long>(options.count_bound)) {
    throw Error(ErrorCode::CombinatorialLimit, "cover needs " + count.get_str() + " cylinders");
  }
  const std::vector<CoverGroup> groups{{count, inverse_length}};

  std::vector<double> grid = options.alpha_grid;
  if (grid.empty()) {
    for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
  }
  std::sort(grid.begin(), grid.end());
  for (double a : grid) out.table.push_back({a, log_covering_sum(groups, a)});

  // The sum decreases in alpha; find the grid cell where it drops through 1.
  for (const auto& row : out.table) {
    if (row.log_sum == 0.0) {
      out.estimate = row.alpha;
      return out;
    }
  }
  if (out.table.front().log_sum < 0) {
    out.estimate = out.table.front().alpha;
    return out;
  }
  if (out.table.back().log_sum > 0) {
    out.estimate = out.table.back().alpha;
    return out;
  }
  std::size_t i = 1;
  while (out.table[i].log_sum > 0) ++i;
  double lo = out.table[i - 1].alpha;
  double hi = out.table[i].alpha;
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (log_covering_sum(groups, mid) > 0 ? lo : hi) = mid;
  }
  out.estimate = 0.5 * (lo + hi);
  return out;
}

}  // namespace altcantor
