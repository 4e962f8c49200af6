#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace altcantor {

using Element = std::int64_t;

enum class BasisKind { Constant, EventuallyPeriodic, Rule };

// Rule-defined element sequences: factorial d_n = n+1, primes d_n = p_n, even d_n = 2n.
enum class BasisRule { Factorial, Primes, Even };

namespace detail {
struct ProductCache;
}

// The element sequence (d_n), n >= 1, every element >= 2.
//
// Eventually periodic sequences (constant ones included) are stored as a
// minimal preperiod plus a minimal period. Rule sequences are stored as an
// explicit head followed by the rule read from an offset, optionally grouped
// (group 2 multiplies consecutive pairs); shifting, position deletion and
// pair compression keep a rule sequence a rule sequence.
class BasisSequence {
 public:
  static BasisSequence constant(Element d);
  static BasisSequence eventually_periodic(std::vector<Element> prefix, std::vector<Element> period);
  static BasisSequence periodic(std::vector<Element> period) { return eventually_periodic({}, std::move(period)); }
  static BasisSequence rule(BasisRule rule);

  BasisKind kind() const { return kind_; }
  // True for eventually periodic (and constant) bases: closed-form sums exist.
  bool is_exact() const { return kind_ != BasisKind::Rule; }
  bool is_constant() const { return kind_ == BasisKind::Constant; }
  bool is_purely_periodic() const { return is_exact() && prefix_.empty(); }
  bool is_bounded() const { return is_exact(); }
  // sup d_n for bounded bases.
  std::optional<Element> max_element() const;
  // d_{n+1} <= d_n for every n.
  bool is_non_increasing() const;

  // d_n for n >= 1.
  Element element(std::size_t n) const;
  // d_1 d_2 ... d_n; 1 for n = 0.
  mpz_class prefix_product(std::size_t n) const;
  // d_{from+1} ... d_{to}; 1 when to <= from.
  mpz_class range_product(std::size_t from, std::size_t to) const;

  // Preperiod and period of an exact basis (period 1 for a constant basis).
  const std::vector<Element>& preperiod() const { return prefix_; }
  const std::vector<Element>& period() const { return period_; }
  // Number of explicit head elements before the periodic/rule part begins.
  std::size_t head_length() const { return prefix_.size(); }

  std::optional<BasisRule> rule_id() const;

  // D_k: the sequence d_{k+1}, d_{k+2}, ...
  BasisSequence shifted(std::size_t k) const;
  // The sequence with element m removed.
  BasisSequence without_position(std::size_t m) const;
  // p_n = d_{2n-1} d_{2n}.
  BasisSequence pair_compressed() const;

  // Grammar form accepted by the CLI: const:d | periodic:... | prefix:...;periodic:... | factorial | primes | even.
  // Derived rule bases (shifted, compressed) have no grammar form and render descriptively.
  std::string to_string() const;

  friend bool operator==(const BasisSequence& a, const BasisSequence& b);

 private:
  BasisSequence() = default;
  void normalize();
  Element rule_element(std::size_t k) const;  // k-th element of the rule part, k >= 1

  BasisKind kind_ = BasisKind::Constant;
  std::vector<Element> prefix_;  // preperiod (exact) or head (rule)
  std::vector<Element> period_;  // exact bases only
  BasisRule rule_ = BasisRule::Factorial;
  std::size_t rule_offset_ = 0;
  std::size_t rule_group_ = 1;
  std::shared_ptr<detail::ProductCache> cache_;
};

// n-th prime (1-based).
Element nth_prime(std::size_t n);

}  // namespace altcantor
