#include "altcantor/basis.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "altcantor/error.hpp"

namespace altcantor {

namespace detail {

// Memoized prefix products for rule bases. Shared between copies of a basis
// value; guarded because bases are shared across threads.
struct ProductCache {
  std::mutex mutex;
  std::vector<mpz_class> products{mpz_class(1)};
};

}  // namespace detail

namespace {

void check_elements(const std::vector<Element>& v) {
  for (Element d : v) {
    if (d < 2) throw Error(ErrorCode::ElementTooSmall, "basis element " + std::to_string(d) + " < 2");
  }
}

std::vector<Element> rotate_left(const std::vector<Element>& v, std::size_t k) {
  std::vector<Element> out(v);
  if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
  return out;
}

std::string join(const std::vector<Element>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

Element nth_prime(std::size_t n) {
  static std::mutex mutex;
  static std::vector<Element> primes;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "prime index starts at 1");
  std::lock_guard lock(mutex);
  std::size_t limit = 64;
  while (primes.size() < n) {
    limit *= 2;
    std::vector<bool> composite(limit + 1, false);
    primes.clear();
    for (std::size_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<Element>(i));
      for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes[n - 1];
}

BasisSequence BasisSequence::constant(Element d) {
  return eventually_periodic({}, {d});
}

BasisSequence BasisSequence::eventually_periodic(std::vector<Element> prefix, std::vector<Element> period) {
  if (period.empty()) throw Error(ErrorCode::InvalidArgument, "basis period must be non-empty");
  check_elements(prefix);
  check_elements(period);
  BasisSequence b;
  b.kind_ = BasisKind::EventuallyPeriodic;
  b.prefix_ = std::move(prefix);
  b.period_ = std::move(period);
  b.normalize();
  return b;
}

BasisSequence BasisSequence::rule(BasisRule rule) {
  BasisSequence b;
  b.kind_ = BasisKind::Rule;
  b.rule_ = rule;
  b.cache_ = std::make_shared<detail::ProductCache>();
  return b;
}

void BasisSequence::normalize() {
  if (kind_ == BasisKind::Rule) return;
  const std::size_t p = period_.size();
  for (std::size_t t = 1; t <= p; ++t) {
    if (p % t) continue;
    bool ok = true;
    for (std::size_t i = t; i < p && ok; ++i) ok = period_[i] == period_[i - t];
    if (ok) {
      period_.resize(t);
      break;
    }
  }
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    prefix_.pop_back();
  }
  kind_ = (prefix_.empty() && period_.size() == 1) ? BasisKind::Constant : BasisKind::EventuallyPeriodic;
}

std::optional<BasisRule> BasisSequence::rule_id() const {
  if (kind_ == BasisKind::Rule) return rule_;
  return std::nullopt;
}

std::optional<Element> BasisSequence::max_element() const {
  if (!is_exact()) return std::nullopt;
  Element m = *std::max_element(period_.begin(), period_.end());
  for (Element d : prefix_) m = std::max(m, d);
  return m;
}

bool BasisSequence::is_non_increasing() const {
  if (!is_exact()) return false;
  if (period_.size() != 1) return false;
  for (std::size_t i = 1; i < prefix_.size(); ++i) {
    if (prefix_[i] > prefix_[i - 1]) return false;
  }
  return prefix_.empty() || prefix_.back() >= period_[0];
}

Element BasisSequence::rule_element(std::size_t k) const {
  Element value = 1;
  for (std::size_t i = 0; i < rule_group_; ++i) {
    const std::size_t idx = rule_offset_ + (k - 1) * rule_group_ + i + 1;
    switch (rule_) {
      case BasisRule::Factorial: value *= static_cast<Element>(idx) + 1; break;
      case BasisRule::Even: value *= 2 * static_cast<Element>(idx); break;
      case BasisRule::Primes: value *= nth_prime(idx); break;
    }
  }
  return value;
}

Element BasisSequence::element(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "basis positions start at 1");
  if (n <= prefix_.size()) return prefix_[n - 1];
  const std::size_t k = n - prefix_.size();
  if (is_exact()) return period_[(k - 1) % period_.size()];
  return rule_element(k);
}

mpz_class BasisSequence::prefix_product(std::size_t n) const {
  if (is_exact()) {
    mpz_class result = 1;
    for (std::size_t i = 0; i < std::min(n, prefix_.size()); ++i) result *= prefix_[i];
    if (n <= prefix_.size()) return result;
    const std::size_t k = n - prefix_.size();
    const std::size_t full = k / period_.size();
    const std::size_t rest = k % period_.size();
    mpz_class period_product = 1;
    for (Element d : period_) period_product *= d;
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), period_product.get_mpz_t(), full);
    result *= power;
    for (std::size_t i = 0; i < rest; ++i) result *= period_[i];
    return result;
  }
  std::lock_guard lock(cache_->mutex);
  auto& products = cache_->products;
  while (products.size() <= n) {
    products.push_back(products.back() * element(products.size()));
  }
  return products[n];
}

mpz_class BasisSequence::range_product(std::size_t from, std::size_t to) const {
  if (to <= from) return 1;
  if (!is_exact() || to - from > 64) return prefix_product(to) / prefix_product(from);
  mpz_class r = 1;
  for (std::size_t n = from + 1; n <= to; ++n) r *= element(n);
  return r;
}

BasisSequence BasisSequence::shifted(std::size_t k) const {
  BasisSequence b = *this;
  if (k <= prefix_.size()) {
    b.prefix_.erase(b.prefix_.begin(), b.prefix_.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    const std::size_t rest = k - prefix_.size();
    b.prefix_.clear();
    if (is_exact()) {
      b.period_ = rotate_left(period_, rest);
    } else {
      b.rule_offset_ += rest * rule_group_;
    }
  }
  if (!is_exact()) {
    b.cache_ = std::make_shared<detail::ProductCache>();
  }
  b.normalize();
  return b;
}

BasisSequence BasisSequence::without_position(std::size_t m) const {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "basis positions start at 1");
  BasisSequence b = *this;
  const std::size_t reach = std::max(m, prefix_.size());
  std::vector<Element> head;
  head.reserve(reach);
  for (std::size_t n = 1; n <= reach; ++n) {
    if (n != m) head.push_back(element(n));
  }
  b.prefix_ = std::move(head);
  const std::size_t consumed = reach - prefix_.size();
  if (is_exact()) {
    b.period_ = rotate_left(period_, consumed);
  } else {
    b.rule_offset_ += consumed * rule_group_;
    b.cache_ = std::make_shared<detail::ProductCache>();
  }
  b.normalize();
  return b;
}

BasisSequence BasisSequence::pair_compressed() const {
  if (is_exact()) {
    const std::size_t start = prefix_.size() + (prefix_.size() % 2);
    const std::size_t cycle = std::lcm(period_.size(), std::size_t{2});
    std::vector<Element> head, per;
    for (std::size_t n = 1; n <= start; n += 2) head.push_back(element(n) * element(n + 1));
    for (std::size_t n = start + 1; n <= start + cycle; n += 2) per.push_back(element(n) * element(n + 1));
    return eventually_periodic(std::move(head), std::move(per));
  }
  BasisSequence b = *this;
  std::vector<Element> head;
  const std::size_t reach = prefix_.size() + (prefix_.size() % 2);
  for (std::size_t n = 1; n <= reach; n += 2) head.push_back(element(n) * element(n + 1));
  b.rule_offset_ += (reach - prefix_.size()) * rule_group_;
  b.rule_group_ *= 2;
  b.prefix_ = std::move(head);
  b.cache_ = std::make_shared<detail::ProductCache>();
  return b;
}

std::string BasisSequence::to_string() const {
  switch (kind_) {
    case BasisKind::Constant: return "const:" + std::to_string(period_[0]);
    case BasisKind::EventuallyPeriodic:
      if (prefix_.empty()) return "periodic:" + join(period_);
      return "prefix:" + join(prefix_) + ";periodic:" + join(period_);
    case BasisKind::Rule: break;
  }
  std::string name = rule_ == BasisRule::Factorial ? "factorial" : (rule_ == BasisRule::Primes ? "primes" : "even");
  if (prefix_.empty() && rule_offset_ == 0 && rule_group_ == 1) return name;
  std::ostringstream os;
  os << name << "[head=" << join(prefix_) << ";offset=" << rule_offset_ << ";group=" << rule_group_ << "]";
  return os.str();
}

bool operator==(const BasisSequence& a, const BasisSequence& b) {
  if (a.kind_ != b.kind_ || a.prefix_ != b.prefix_) return false;
  if (a.is_exact()) return a.period_ == b.period_;
  return a.rule_ == b.rule_ && a.rule_offset_ == b.rule_offset_ && a.rule_group_ == b.rule_group_;
}

}  // namespace altcantor
