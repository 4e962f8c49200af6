#include "altcantor/codec.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "altcantor/error.hpp"
#include "altcantor/series.hpp"

namespace altcantor {

namespace {

constexpr std::size_t kMaxRefineDepth = 4096;

struct TailMatch {
  std::size_t start;  // first position of the alternating tail
  bool top;           // (d-1, 0, ...) when true, (0, d-1, ...) otherwise
};

// Smallest position j such that the digits from j on form an alternating
// extremal tail. Only exact bases admit such tails for eventually periodic digits.
std::optional<TailMatch> find_alternating_tail(const DigitString& s, const BasisSequence& basis) {
  if (!basis.is_exact() || s.is_truncated()) return std::nullopt;
  const std::size_t h = std::max(s.prefix().size(), basis.head_length());
  const std::size_t l = std::lcm(std::lcm(s.tail_period(), basis.period().size()), std::size_t{2});
  auto expected = [&](std::size_t n, std::size_t j, bool top) {
    const bool extremal = ((n - j) % 2 == 0) == top;
    return extremal ? basis.element(n) - 1 : Digit{0};
  };
  auto matches_directly = [&](std::size_t j, bool top) {
    for (std::size_t n = j; n < j + l; ++n) {
      if (s.digit(n) != expected(n, j, top)) return false;
    }
    return true;
  };
  // Past h everything repeats with period l, so a window of l positions decides.
  bool top_next = matches_directly(h + 1, true);
  bool bot_next = matches_directly(h + 1, false);
  std::optional<TailMatch> best;
  if (top_next) best = TailMatch{h + 1, true};
  if (bot_next) best = TailMatch{h + 1, false};
  for (std::size_t j = h; j >= 1; --j) {
    const Digit e = s.digit(j);
    const bool top_here = e == basis.element(j) - 1 && bot_next;
    const bool bot_here = e == 0 && top_next;
    if (top_here) best = TailMatch{j, true};
    if (bot_here) best = TailMatch{j, false};
    top_next = top_here;
    bot_next = bot_here;
  }
  if (best && best->start > h + 1) return best;
  // Within the periodic part the minimal start may precede h+1 only via the backward scan.
  return best;
}

DigitString twin_from_match(const DigitString& s, const TailMatch& match, const BasisSequence& basis) {
  const std::size_t m = match.start - 1;
  std::vector<Digit> lead = s.leading(m);
  lead[m - 1] += match.top ? -1 : 1;
  return alternating_tail(std::move(lead), match.start, !match.top, basis).with_kind(s.kind());
}

void require_negad_like(const DigitString& s) {
  if (s.kind() == SeriesKind::PositiveD) {
    throw Error(ErrorCode::InvalidArgument, "twin representations are defined for alternating strings");
  }
}

}  // namespace

GreedyExpander::GreedyExpander(const ExactRational& x, const BasisSequence& basis) : basis_(basis), y_(x) {
  if (!in_domain(x, basis)) {
    throw Error(ErrorCode::OutOfDomain, x.to_string() + " lies outside the domain of " + basis.to_string());
  }
}

ExactRational GreedyExpander::tail_sum_at(std::size_t n) const {
  const std::size_t h = basis_.head_length();
  const std::size_t p = basis_.period().size();
  const std::size_t slot = n < h + p ? n : h + (n - h) % p;
  if (tail_cache_.size() <= slot) {
    for (std::size_t k = tail_cache_.size(); k <= slot; ++k) tail_cache_.push_back(tail_sum(basis_, k));
  }
  return tail_cache_[slot];
}

// floor(t - a_n) where a_n may be irrational (rule bases): refine the
// enclosure until no integer lies strictly inside (t - hi, t - lo).
mpz_class GreedyExpander::floor_of_offset(const ExactRational& t, std::size_t n) const {
  if (basis_.is_exact()) return (t - tail_sum_at(n)).floor();
  for (std::size_t depth = 8; depth <= kMaxRefineDepth; depth *= 2) {
    const ExactInterval a = tail_sum_enclosure(basis_, n, depth);
    const ExactRational lower = t - a.hi();
    const ExactRational upper = t - a.lo();
    const mpz_class k = lower.floor();
    if (upper <= ExactRational(mpz_class(k + 1))) return k;
  }
  throw Error(ErrorCode::ExactUnavailable, "digit selection undecided at position " + std::to_string(n + 1));
}

Digit GreedyExpander::next() {
  const Element d = basis_.element(n_ + 1);
  const ExactRational scaled = -ExactRational(d) * y_;
  // Admissible digits are e with -d*y - e in [a_{n+1} - 1, a_{n+1}]; on a shared
  // endpoint the larger one is canonical.
  const mpz_class k = mpz_class(floor_of_offset(scaled, n_ + 1) + 1);
  const Digit e = std::min<Digit>(d - 1, k.get_si());
  y_ = scaled - ExactRational(e);
  ++n_;
  return e;
}

bool in_domain(const ExactRational& x, const BasisSequence& basis) {
  if (basis.is_exact()) return domain(basis).contains(x);
  for (std::size_t depth = 8; depth <= kMaxRefineDepth; depth *= 2) {
    const ExactInterval a0 = tail_sum_enclosure(basis, 0, depth);
    if (x < a0.lo() - ExactRational(1) || x > a0.hi()) return false;
    if (x > a0.hi() - ExactRational(1) && x < a0.lo()) return true;
  }
  throw Error(ErrorCode::ExactUnavailable, "domain membership undecided for " + x.to_string());
}

DigitString alternating_tail(std::vector<Digit> leading, std::size_t start, bool top, const BasisSequence& basis) {
  if (!basis.is_exact()) throw Error(ErrorCode::ExactUnavailable, "alternating tails need an exact basis");
  if (leading.size() + 1 != start) throw Error(ErrorCode::InvalidArgument, "leading digits must end before start");
  const std::size_t h = std::max(start - 1, basis.head_length());
  const std::size_t l = std::lcm(basis.period().size(), std::size_t{2});
  auto pattern = [&](std::size_t n) {
    const bool extremal = ((n - start) % 2 == 0) == top;
    return extremal ? basis.element(n) - 1 : Digit{0};
  };
  std::vector<Digit> head = std::move(leading);
  for (std::size_t n = start; n <= h; ++n) head.push_back(pattern(n));
  std::vector<Digit> cycle;
  for (std::size_t n = h + 1; n <= h + l; ++n) cycle.push_back(pattern(n));
  return make_digits(SeriesKind::NegaD, std::move(head), std::move(cycle), basis);
}

EncodingResult encode(const ExactRational& x, const BasisSequence& basis, std::size_t horizon, EncodeOptions options) {
  GreedyExpander expander(x, basis);
  std::vector<Digit> out;
  if (!basis.is_exact()) {
    while (out.size() < horizon && !expander.remainder().is_zero()) out.push_back(expander.next());
    if (expander.remainder().is_zero()) {
      return {make_digits(SeriesKind::NegaD, std::move(out), {}, basis), EncodingClass::Terminating, out.size()};
    }
    const std::size_t steps = out.size();
    return {DigitString(SeriesKind::NegaD, std::move(out), TruncatedTail{}, basis), EncodingClass::TruncatedAtHorizon,
            steps};
  }

  const std::size_t h = basis.head_length();
  const std::size_t p = basis.period().size();
  std::map<std::pair<std::size_t, ExactRational>, std::size_t> seen;
  // Remainders share the denominator of x and stay in [-1, 1].
  const mpz_class state_bound = (2 * x.den() + 1) * static_cast<unsigned long>(h + p) + 2;
  for (std::size_t step = 0;; ++step) {
    const ExactRational& y = expander.remainder();
    const std::size_t n = expander.position();
    if (y.is_zero()) {
      return {make_digits(SeriesKind::NegaD, std::move(out), {}, basis), EncodingClass::Terminating, step};
    }
    const ExactRational a = expander.current_tail_sum();
    if (y == a || y == a - ExactRational(1)) {
      // Extremal point of the shifted domain: the remaining digits are forced.
      return {alternating_tail(std::move(out), n + 1, y != a, basis), EncodingClass::PeriodicTail, step};
    }
    if (options.cycle_detection) {
      const std::size_t phase = n < h ? n : h + (n - h) % p;
      const auto [it, inserted] = seen.emplace(std::make_pair(phase, y), n);
      if (!inserted) {
        const std::size_t i = it->second;
        std::vector<Digit> head(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(i));
        std::vector<Digit> cycle(out.begin() + static_cast<std::ptrdiff_t>(i), out.end());
        return {make_digits(SeriesKind::NegaD, std::move(head), std::move(cycle), basis), EncodingClass::PeriodicTail,
                step};
      }
      if (mpz_class(static_cast<unsigned long>(step)) > state_bound) {
        throw Error(ErrorCode::HorizonExceeded, "cycle not found within the state bound");
      }
    } else if (step >= horizon) {
      throw Error(ErrorCode::HorizonExceeded, "no terminating or extremal tail within " + std::to_string(horizon) +
                                                  " digits");
    }
    out.push_back(expander.next());
  }
}

std::vector<Digit> leading_digits(const ExactRational& x, const BasisSequence& basis, std::size_t count) {
  GreedyExpander expander(x, basis);
  std::vector<Digit> out;
  out.reserve(count);
  while (out.size() < count) {
    if (expander.remainder().is_zero()) {
      out.resize(count, 0);
      break;
    }
    out.push_back(expander.next());
  }
  return out;
}

std::optional<DigitString> twin(const DigitString& digits, const BasisSequence& basis) {
  require_negad_like(digits);
  const auto match = find_alternating_tail(digits, basis);
  if (!match || match->start < 2) return std::nullopt;
  return twin_from_match(digits, *match, basis);
}

DigitString canonicalize(const DigitString& digits, const BasisSequence& basis) {
  require_negad_like(digits);
  const auto match = find_alternating_tail(digits, basis);
  if (match && match->start >= 2 && !match->top) return twin_from_match(digits, *match, basis);
  return digits.normalized();
}

bool is_nega_d_rational(const DigitString& digits, const BasisSequence& basis) {
  return twin(digits, basis).has_value();
}

std::strong_ordering compare(const DigitString& a, const DigitString& b, const BasisSequence& basis) {
  if (a.kind() != SeriesKind::NegaD || b.kind() != SeriesKind::NegaD) {
    throw Error(ErrorCode::InvalidArgument, "compare expects NegaD strings");
  }
  const DigitString ca = canonicalize(a, basis);
  const DigitString cb = canonicalize(b, basis);
  std::size_t reach = 0;
  if (ca.is_truncated() || cb.is_truncated()) {
    reach = std::min(ca.is_truncated() ? ca.prefix().size() : SIZE_MAX, cb.is_truncated() ? cb.prefix().size() : SIZE_MAX);
  } else {
    reach = std::max(ca.prefix().size(), cb.prefix().size()) + std::lcm(ca.tail_period(), cb.tail_period());
  }
  for (std::size_t n = 1; n <= reach; ++n) {
    const Digit x = ca.digit(n);
    const Digit y = cb.digit(n);
    if (x == y) continue;
    // Even positions carry positive weight, odd positions negative weight.
    const bool a_smaller = (n % 2 == 0) ? x < y : x > y;
    return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ca.is_truncated() || cb.is_truncated()) {
    throw Error(ErrorCode::ExactUnavailable, "truncated strings agree on every known digit");
  }
  return std::strong_ordering::equal;
}

}  // namespace altcantor
