#include <doctest.h>

#include <random>

#include "altcantor/codec.hpp"
#include "altcantor/dynamics.hpp"
#include "altcantor/error.hpp"
#include "altcantor/series.hpp"
#include "oracle.hpp"

using namespace altcantor;

namespace {

ExactRational q(const char* s) { return ExactRational::parse(s); }
const BasisSequence two = BasisSequence::constant(2);

DigitString negad(std::vector<Digit> prefix, Tail tail, const BasisSequence& b = two) {
  return DigitString(SeriesKind::NegaD, std::move(prefix), std::move(tail), b);
}

ExactRational exact(const SeriesValue& v) { return std::get<ExactRational>(v); }

}  // namespace

TEST_CASE("shift examples") {
  const auto b = BasisSequence::periodic({2, 5, 3});
  const auto z = shift(negad({}, ZerosTail{}, b), b, 4);
  CHECK(exact(z.value) == ExactRational(0));
  CHECK(z.basis == b.shifted(4));
  CHECK(exact(shift(negad({}, PeriodicTail{{1}}), two, 1).value) == q("-1/3"));
  const auto r = shift(negad({1}, ZerosTail{}), two, 1);
  CHECK(exact(r.value) == ExactRational(0));
  CHECK(shift_closed_form(q("-1/2"), std::vector<Digit>{1}, two) == ExactRational(0));
}

TEST_CASE("shift moves the digit phase with the basis") {
  const auto b = BasisSequence::periodic({2, 3});
  const auto s = negad({1}, PeriodicTail{{2, 0}}, b);
  const auto r = shift(s, b, 1);
  CHECK(r.basis == BasisSequence::periodic({3, 2}));
  CHECK(r.digits.same_sequence(negad({}, PeriodicTail{{2, 0}}, r.basis)));
  CHECK(exact(r.value) == shift_closed_form(evaluate_exact(s, b), std::vector<Digit>{1}, b));
}

TEST_CASE("shift over a rule basis yields an enclosure for infinite tails") {
  const auto f = BasisSequence::rule(BasisRule::Factorial);
  const auto r = shift(negad({1, 2}, PeriodicTail{{1}}, f), f, 1);
  CHECK(std::holds_alternative<ExactInterval>(r.value));
  const auto t = shift(negad({1, 2}, ZerosTail{}, f), f, 1);
  // Digit 2 over d_1 = 3 of the shifted basis.
  CHECK(exact(t.value) == q("-2/3"));
}

TEST_CASE("deleting a position") {
  CHECK(exact(shift_delete(negad({1}, ZerosTail{}), two, 1).value) == ExactRational(0));
  const auto a = shift_delete(negad({0, 1}, ZerosTail{}), two, 2);
  CHECK(a.digits.same_sequence(negad({0}, ZerosTail{})));
  CHECK(exact(a.value) == ExactRational(0));
  CHECK(exact(shift_delete(negad({1, 1}, ZerosTail{}), two, 2).value) == q("-1/2"));
  const auto b = BasisSequence::periodic({2, 3});
  const auto r = shift_delete(negad({1, 2, 1}, ZerosTail{}, b), b, 2);
  CHECK(r.basis.element(2) == 2);
  // Digits 1,1 over 2,2.
  CHECK(exact(r.value) == q("-1/4"));
}

TEST_CASE("digit shift over the same basis") {
  std::mt19937_64 rng(41);
  for (Element d : {2, 3, 7}) {
    const auto b = BasisSequence::constant(d);
    const support::RandomBasis rb{b, {{}, {d}}};
    for (int i = 0; i < 10; ++i) CHECK_NOTHROW(digit_shift(support::random_digits(rng, rb), b));
  }
  const auto up = BasisSequence::periodic({2, 3});
  try {
    digit_shift(negad({0, 2}, ZerosTail{}, up), up);
    FAIL("expected NotWellDefined");
  } catch (const NotWellDefinedError& e) {
    CHECK(e.position() == 1);
  }
  CHECK(digit_shift(negad({0, 1}, ZerosTail{}, up), up).same_sequence(negad({1}, ZerosTail{}, up)));
  CHECK_THROWS_AS(digit_shift(negad({}, PeriodicTail{{0, 2}}, up), up), NotWellDefinedError);
  CHECK(digit_shift(negad({}, PeriodicTail{{1, 0}}, up), up).same_sequence(negad({}, PeriodicTail{{0, 1}}, up)));
}

TEST_CASE("fixed points are fixed") {
  CHECK(fixed_points(two) == std::vector<ExactRational>{0, q("-1/3")});
  CHECK(fixed_points(BasisSequence::constant(3)) == std::vector<ExactRational>{0, q("-1/4"), q("-1/2")});
  const auto ten = fixed_points(BasisSequence::constant(10));
  REQUIRE(ten.size() == 10);
  CHECK(ten[9] == q("-9/11"));
  for (Element d : {2, 3, 10}) {
    const auto b = BasisSequence::constant(d);
    for (const auto& x : fixed_points(b)) {
      CHECK(exact(shift(encode(x, b, 64).digits, b, 1).value) == x);
      CHECK(shift_value(x, b, 1) == x);
    }
  }
  CHECK_THROWS_AS(fixed_points(BasisSequence::periodic({2, 3})), Error);
}

TEST_CASE("periodic and preperiodic points") {
  CHECK(periodic_point(two, std::vector<Digit>{1, 0}) == q("-2/3"));
  CHECK(periodic_point(two, std::vector<Digit>{0, 0}) == ExactRational(0));
  CHECK(periodic_point(two, std::vector<Digit>{1, 1}) == q("-1/3"));
  CHECK(preperiodic_point(two, std::vector<Digit>{1, 0}, 0, 2) == q("-2/3"));
  const ExactRational x = preperiodic_point(two, std::vector<Digit>{1, 0, 0}, 1, 2);
  CHECK(x == q("-1/2"));
  CHECK(shift_value(x, two, 1) == shift_value(x, two, 3));
  CHECK(preperiodic_point(two, std::vector<Digit>{0, 0, 0}, 1, 2) == ExactRational(0));
  CHECK_THROWS_AS(periodic_point(BasisSequence::periodic({2, 3}), std::vector<Digit>{1}), Error);

  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const auto rb = support::random_basis(rng, 5, 0, 2);
    const std::size_t p = rb.basis.period().size();
    const std::size_t m = p * std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::vector<Digit> e;
    for (std::size_t n = 1; n <= m; ++n) e.push_back(std::uniform_int_distribution<Digit>(0, rb.seq(n) - 1)(rng));
    const ExactRational y = periodic_point(rb.basis, e);
    CHECK(y == evaluate_exact(negad({}, PeriodicTail{e}, rb.basis), rb.basis));
    CHECK(shift_value(y, rb.basis, m) == y);

    const std::size_t pre = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    const auto eb = support::random_basis(rng, 5, 0, 2);
    const auto basis = BasisSequence::eventually_periodic(std::vector<Element>(pre, 3), eb.seq.period);
    const std::size_t c = basis.period().size() * std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    std::vector<Digit> f;
    for (std::size_t n = 1; n <= pre + c; ++n) f.push_back(std::uniform_int_distribution<Digit>(0, basis.element(n) - 1)(rng));
    const ExactRational z = preperiodic_point(basis, f, pre, c);
    std::vector<Digit> head(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pre));
    std::vector<Digit> cycle(f.begin() + static_cast<std::ptrdiff_t>(pre), f.end());
    CHECK(z == evaluate_exact(make_digits(SeriesKind::NegaD, head, cycle, basis), basis));
    CHECK(shift_value(z, basis, pre) == shift_value(z, basis, pre + c));
  }
}

TEST_CASE("finite expansions") {
  CHECK(finite_expansion(1, 6, BasisSequence::periodic({2, 3})) == std::optional<std::size_t>(2));
  CHECK_FALSE(finite_expansion(1, 5, two));
  CHECK(finite_expansion(1, 8, two) == std::optional<std::size_t>(3));
  CHECK(finite_expansion(1, 7, BasisSequence::rule(BasisRule::Factorial)) == std::optional<std::size_t>(6));
  CHECK_FALSE(finite_expansion(1, 4, BasisSequence::rule(BasisRule::Primes)));
  CHECK(finite_expansion(1, 30, BasisSequence::rule(BasisRule::Primes)) == std::optional<std::size_t>(3));
  CHECK(finite_expansion(1, 9, BasisSequence::rule(BasisRule::Even)) == std::optional<std::size_t>(6));
  CHECK(finite_expansion(3, 3, two) == std::optional<std::size_t>(0));

  std::mt19937_64 rng(43);
  const std::vector<BasisSequence> bases{two, BasisSequence::constant(6), BasisSequence::eventually_periodic({5}, {2, 3}),
                                         BasisSequence::rule(BasisRule::Factorial), BasisSequence::rule(BasisRule::Primes)};
  for (const auto& b : bases) {
    const ExactInterval dom = b.is_exact() ? domain(b) : domain_enclosure(b, 64);
    for (int i = 0; i < 60; ++i) {
      const ExactRational x = support::random_in_domain(rng, ExactInterval(dom.lo() + q("1/1000"), dom.hi() - q("1/1000")), 60);
      const auto n0 = finite_expansion(x.num(), x.den(), b);
      const auto r = encode(x, b, 80);
      CHECK((r.classification == EncodingClass::Terminating) == n0.has_value());
      if (n0) CHECK(r.digits.prefix().size() <= *n0);
    }
  }
}

TEST_CASE("rationality probe") {
  const auto a = rationality_probe(q("-1/3"), two, 16);
  REQUIRE(a.witness);
  CHECK(*a.witness == RationalWitness{0, 1});
  const auto b = rationality_probe(q("-1/6"), two, 16);
  REQUIRE(b.witness);
  CHECK(b.witness->t - b.witness->k == 2);
  std::vector<Digit> sparse;
  for (int block = 1; sparse.size() < 64; ++block) {
    for (int z = 0; z < block && sparse.size() < 64; ++z) sparse.push_back(0);
    if (sparse.size() < 64) sparse.push_back(1);
  }
  const auto c = rationality_probe(negad(sparse, TruncatedTail{}), two, 64);
  CHECK_FALSE(c.witness);
  // Exact strings are decided as numbers.
  const auto d = rationality_probe(negad({1}, PeriodicTail{{1, 0}}), two, 16);
  CHECK(d.witness == b.witness);

  // NegaDn digits go through the NegaD reading of the same digits.
  const auto dn = DigitString(SeriesKind::NegaDn, {1}, PeriodicTail{{1, 0}}, two);
  CHECK(rationality_probe(dn, two, 16).witness == b.witness);
  CHECK_THROWS_AS(rationality_probe(DigitString(SeriesKind::PositiveD, {1}, ZerosTail{}, two), two, 16), Error);

  std::mt19937_64 rng(44);
  for (int i = 0; i < 100; ++i) {
    const auto rb = support::random_basis(rng);
    const ExactRational x = support::random_in_domain(rng, domain(rb.basis), 80);
    const auto r = rationality_probe(x, rb.basis, rationality_budget(x, rb.basis));
    REQUIRE(r.witness);
    CHECK(shift_value(x, rb.basis, r.witness->k) == shift_value(x, rb.basis, r.witness->t));
  }
}

TEST_CASE("closed form of the iterated shift and its inversion") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 100; ++i) {
    const auto rb = support::random_basis(rng);
    const auto s = support::random_digits(rng, rb);
    const ExactRational x = evaluate_exact(s, rb.basis);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto r = shift(s, rb.basis, k);
    const auto lead = s.leading(k);
    CHECK(exact(r.value) == shift_closed_form(x, lead, rb.basis));
    const ExactRational back = negad_prefix_value(lead, rb.basis) +
                               ExactRational(parity_sign(k)) * exact(r.value) / ExactRational(rb.basis.prefix_product(k));
    CHECK(back == x);
  }
}

TEST_CASE("the shift reverses order inside a first-rank cylinder and has slope -d_1") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 100; ++i) {
    const auto rb = support::random_basis(rng);
    const ExactRational x = support::random_in_domain(rng, domain(rb.basis), 500);
    const ExactRational y = support::random_in_domain(rng, domain(rb.basis), 500);
    if (x == y || leading_digits(x, rb.basis, 1) != leading_digits(y, rb.basis, 1)) continue;
    const ExactRational fx = shift_value(x, rb.basis, 1), fy = shift_value(y, rb.basis, 1);
    CHECK((x < y) == (fx > fy));
    CHECK((fx - fy) / (x - y) == ExactRational(-rb.seq(1)));
  }
}

TEST_CASE("twin representations jump under the shift") {
  // -1/6 over const 2: digits 1,(1,0) and 0,0,(1,0) straddle the first-rank boundary.
  const auto a = negad({1}, PeriodicTail{{1, 0}});
  const auto b = negad({0, 0}, PeriodicTail{{1, 0}});
  CHECK(evaluate_exact(a, two) == evaluate_exact(b, two));
  CHECK(exact(shift(a, two, 1).value) != exact(shift(b, two, 1).value));
}

TEST_CASE("digit alphabets are invariant under the shift") {
  const auto b = BasisSequence::constant(5);
  std::mt19937_64 rng(47);
  const std::vector<Digit> v{0, 2, 4};
  for (int i = 0; i < 50; ++i) {
    std::vector<Digit> head(4), cycle(2);
    for (auto& e : head) e = v[rng() % 3];
    for (auto& e : cycle) e = v[rng() % 3];
    const auto r = shift(make_digits(SeriesKind::NegaD, head, cycle, b), b, 1);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(std::find(v.begin(), v.end(), r.digits.digit(n)) != v.end());
  }
}
