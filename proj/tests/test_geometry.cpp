#include <doctest.h>

#include <cmath>
#include <random>

#include "altcantor/codec.hpp"
#include "altcantor/error.hpp"
#include "altcantor/geometry.hpp"
#include "altcantor/series.hpp"
#include "oracle.hpp"

using namespace altcantor;

namespace {

ExactRational q(const char* s) { return ExactRational::parse(s); }
const BasisSequence two = BasisSequence::constant(2);
const BasisSequence three = BasisSequence::constant(3);

DigitString negad(std::vector<Digit> prefix, Tail tail, const BasisSequence& b = two) {
  return DigitString(SeriesKind::NegaD, std::move(prefix), std::move(tail), b);
}

// min and max of the depth-N prefix sums over every digit string accepted by `allowed`.
std::pair<mpq_class, mpq_class> prefix_extrema(const oracle::Seq& d, std::size_t depth,
                                               const std::function<bool(std::size_t, Digit)>& allowed) {
  mpq_class lo = 0, hi = 0;
  bool first = true;
  std::vector<Digit> e(depth, 0);
  auto visit = [&](auto&& self, std::size_t pos, const mpq_class& g, const mpz_class& p) -> void {
    if (pos == depth) {
      if (first || g < lo) lo = g;
      if (first || g > hi) hi = g;
      first = false;
      return;
    }
    const mpz_class next = p * d(pos + 1);
    for (Digit c = 0; c < d(pos + 1); ++c) {
      if (!allowed(pos + 1, c)) continue;
      const int s = (pos + 1) % 2 == 0 ? 1 : -1;
      self(self, pos + 1, g + mpq_class(s * c) / next, next);
    }
  };
  visit(visit, 0, mpq_class(0), mpz_class(1));
  return {lo, hi};
}

}  // namespace

TEST_CASE("cylinder examples against enumerated extrema") {
  CHECK(cylinder(std::vector<Digit>{1}, two) == ExactInterval(q("-2/3"), q("-1/6")));
  CHECK(cylinder(std::vector<Digit>{0}, two) == ExactInterval(q("-1/6"), q("1/3")));
  CHECK(cylinder(std::vector<Digit>{}, two) == domain(two));
  const oracle::Seq d{{}, {2}};
  for (Digit c : {0, 1}) {
    const auto [lo, hi] = prefix_extrema(d, 16, [&](std::size_t n, Digit e) { return n != 1 || e == c; });
    const auto cyl = cylinder(std::vector<Digit>{c}, two);
    const mpq_class eps = oracle::tail_bound(d, 16);
    CHECK(oracle::within(cyl.lo().raw(), lo, eps));
    CHECK(oracle::within(cyl.hi().raw(), hi, eps));
  }
  CHECK_THROWS_AS(cylinder(std::vector<Digit>{2}, two), Error);
}

TEST_CASE("cylinder properties at small ranks") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rb = support::random_basis(rng, 4);
    const auto& b = rb.basis;
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    std::vector<Digit> base;
    for (std::size_t n = 1; n <= m; ++n) base.push_back(std::uniform_int_distribution<Digit>(0, rb.seq(n) - 1)(rng));
    const ExactInterval parent = cylinder(base, b);
    CHECK(parent.width() == ExactRational(1) / ExactRational(b.prefix_product(m)));
    std::vector<ExactInterval> kids;
    for (Digit c = 0; c < rb.seq(m + 1); ++c) {
      auto child = base;
      child.push_back(c);
      kids.push_back(cylinder(child, b));
      CHECK(parent.contains(kids.back()));
      CHECK(kids.back().width() == parent.width() / ExactRational(rb.seq(m + 1)));
    }
    // Children run right to left at odd ranks, left to right at even ranks, touching.
    for (std::size_t c = 0; c + 1 < kids.size(); ++c) {
      if ((m + 1) % 2 == 1) {
        CHECK(kids[c + 1].hi() == kids[c].lo());
      } else {
        CHECK(kids[c].hi() == kids[c + 1].lo());
      }
    }
    const auto& first = kids.front();
    const auto& last = kids.back();
    CHECK(min(first.lo(), last.lo()) == parent.lo());
    CHECK(max(first.hi(), last.hi()) == parent.hi());
    // Same-rank cylinders meet in at most a point.
    for (std::size_t a = 0; a < kids.size(); ++a) {
      for (std::size_t c = a + 1; c < kids.size(); ++c) {
        if (kids[a].intersects(kids[c])) {
          CHECK((kids[a].hi() == kids[c].lo() || kids[c].hi() == kids[a].lo()));
        }
      }
    }
  }
}

TEST_CASE("cylinders shrink to the encoded point") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rb = support::random_basis(rng);
    const auto s = support::random_digits(rng, rb);
    const ExactRational x = evaluate_exact(s, rb.basis);
    for (std::size_t m = 0; m <= 10; ++m) {
      const auto cyl = cylinder(s.leading(m), rb.basis);
      CHECK(cyl.contains(x));
      CHECK(cyl.width() == ExactRational(1) / ExactRational(rb.basis.prefix_product(m)));
    }
  }
}

TEST_CASE("locate") {
  CHECK(locate(ExactRational(0), two, 3) == CylinderBase{0, 0, 0});
  CHECK(locate(q("-1/6"), two, 2) == CylinderBase{1, 1});
  CHECK(locate(q("1/3"), two, 2) == CylinderBase{0, 1});
  CHECK_THROWS_AS(locate(ExactRational(1), two, 2), Error);
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rb = support::random_basis(rng);
    const ExactRational x = support::random_in_domain(rng, domain(rb.basis));
    const auto base = locate(x, rb.basis, 6);
    CHECK(cylinder(base, rb.basis).contains(x));
    CHECK(base == encode(x, rb.basis, 64).digits.leading(6));
  }
}

TEST_CASE("position set measure and diameter") {
  const auto b23 = BasisSequence::periodic({2, 3});
  CHECK(position_set_stats({{{2, 0}}}, b23).measure == q("1/3"));
  CHECK(position_set_stats({{{2, 1}}}, b23).diameter == q("2/3"));
  CHECK(position_set_stats({{{1, 0}, {3, 0}}}, two).measure == q("1/4"));
  CHECK_THROWS_AS(position_set_stats({{{3, 0}, {1, 0}}}, two), Error);
  CHECK_THROWS_AS(position_set_stats({{{1, 2}}}, two), Error);

  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 25; ++trial) {
    const auto rb = support::random_basis(rng, 3);
    PositionConstraint c;
    for (std::size_t k = 1; k <= 5; ++k) {
      if (rng() % 3 == 0) c.entries.emplace_back(k, std::uniform_int_distribution<Digit>(0, rb.seq(k) - 1)(rng));
    }
    const auto st = position_set_stats(c, rb.basis);
    const std::size_t depth = 10;
    const auto [lo, hi] = prefix_extrema(rb.seq, depth, [&](std::size_t n, Digit e) {
      for (const auto& [k, v] : c.entries) {
        if (k == n) return e == v;
      }
      return true;
    });
    const mpq_class eps = 2 * oracle::tail_bound(rb.seq, depth);
    CHECK(oracle::within(st.diameter.raw(), hi - lo, eps));
    // The constrained set fills a 1/prod(d_k) share of every rank-depth level.
    const auto cover = position_set_cover(c, rb.basis, 6);
    ExactRational total(0);
    for (const auto& base : cover) total = total + cylinder(base, rb.basis).width();
    CHECK(total == st.measure);
  }
}

TEST_CASE("position set covers") {
  const auto cover = position_set_cover({{{2, 1}}}, two, 2);
  CHECK(cover == std::vector<CylinderBase>{{0, 1}, {1, 1}});
  CHECK(position_set_cover({{{1, 0}}}, two, 1) == std::vector<CylinderBase>{{0}});
  CHECK_THROWS_AS(position_set_cover({}, two, 30, 1000), Error);
}

TEST_CASE("digit positions are independent") {
  const auto b = BasisSequence::periodic({2, 3, 4});
  for (std::size_t k1 = 1; k1 <= 4; ++k1) {
    for (std::size_t k2 = k1 + 1; k2 <= 5; ++k2) {
      const PositionConstraint both{{{k1, 1}, {k2, 1}}};
      CHECK(position_set_stats(both, b).measure ==
            position_set_stats({{{k1, 1}}}, b).measure * position_set_stats({{{k2, 1}}}, b).measure);
    }
  }
}

TEST_CASE("incomplete sum cylinders") {
  const IncompleteSumSpec s2(negad({}, PeriodicTail{{1}}), two);
  CHECK(ms0_cylinder(s2, {}) == ExactInterval(q("-2/3"), q("1/3")));
  const IncompleteSumSpec s3(negad({}, PeriodicTail{{1}}, three), three);
  CHECK(ms0_cylinder(s3, {}) == ExactInterval(q("-3/8"), q("1/8")));
  CHECK(ms0_cylinder(s3, {}).width() == q("1/2"));
  const IncompleteSumSpec fin(negad({1, 0, 1}, ZerosTail{}), two);
  const auto point = ms0_cylinder(fin, std::vector<Digit>{1, 0, 1});
  CHECK(point.lo() == point.hi());
  CHECK(point.lo() == q("-1/2") - q("1/8"));
  try {
    ms0_cylinder(s3, std::vector<Digit>{2});
    FAIL("expected InvalidSelection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSelection);
  }
}

TEST_CASE("incomplete sum covers") {
  const IncompleteSumSpec s2(negad({}, PeriodicTail{{1}}), two);
  const auto c2 = ms0_cover(s2, 3);
  CHECK(c2.intervals.size() == 8);
  CHECK(c2.total_length == ExactRational(1));
  for (const auto& g : c2.gaps) CHECK(g.gap == ExactRational(0));

  const IncompleteSumSpec s3(negad({}, PeriodicTail{{1}}, three), three);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto c = ms0_cover(s3, n);
    CHECK(c.intervals.size() == (std::size_t{1} << n));
    // 2^n intervals of length sum_{k>n} 3^-k = 3^-n / 2.
    CHECK(c.total_length == ExactRational(mpz_class(1) << n, 2 * BasisSequence::constant(3).prefix_product(n)));
    for (std::size_t i = 0; i + 1 < c.intervals.size(); ++i) {
      CHECK(c.intervals[i].interval.lo() <= c.intervals[i + 1].interval.lo());
    }
    for (const auto& g : c.gaps) CHECK(g.gap == ms0_gap(s3, n));
  }
  CHECK(ms0_cover(s3, 3).total_length == q("4/27"));

  const IncompleteSumSpec fin(negad({1}, ZerosTail{}), two);
  const auto cf = ms0_cover(fin, 4);
  CHECK(cf.intervals.size() == 2);
  CHECK(cf.total_length == ExactRational(0));
  CHECK_THROWS_AS(ms0_cover(s3, 30), Error);
}

TEST_CASE("sibling gaps are non-negative and vanish only on the special tail") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rb = support::random_basis(rng, 4);
    const IncompleteSumSpec spec(support::random_digits(rng, rb), rb.basis);
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto cover = ms0_cover(spec, n);
      const Digit e = spec.s0.digit(n);
      const ExactRational g = ms0_gap(spec, n);
      if (e == 0) {
        CHECK(cover.gaps.empty());
        continue;
      }
      bool special = e == 1;
      for (std::size_t k = n + 1; k <= n + 24 && special; ++k) special = spec.s0.digit(k) == rb.seq(k) - 1;
      CHECK(g >= ExactRational(0));
      CHECK((g == ExactRational(0)) == special);
      for (const auto& sg : cover.gaps) CHECK(sg.gap == g);
    }
  }
}

TEST_CASE("every deeper interval sits inside the cylinder of its prefix") {
  const IncompleteSumSpec spec(negad({2}, PeriodicTail{{1, 2}}, three), three);
  const auto deep = ms0_cover(spec, 7);
  for (const auto& iv : deep.intervals) {
    const std::vector<Digit> prefix(iv.selection.begin(), iv.selection.begin() + 4);
    CHECK(cylinder(prefix, three).contains(iv.interval));
    CHECK(ms0_cylinder(spec, prefix).contains(iv.interval));
  }
}

TEST_CASE("classification of incomplete sum sets") {
  CHECK(ms0_classify(IncompleteSumSpec(negad({}, ZerosTail{}), two)).kind == MsClass::Singleton);
  CHECK(ms0_classify(IncompleteSumSpec(negad({1, 0, 1}, ZerosTail{}), two)).kind == MsClass::FiniteSet);
  const auto full = ms0_classify(IncompleteSumSpec(negad({}, PeriodicTail{{1}}), two));
  CHECK(full.kind == MsClass::FullSegment);
  REQUIRE(full.segment);
  CHECK(*full.segment == ExactInterval(q("-2/3"), q("1/3")));
  const auto b = BasisSequence::eventually_periodic({3, 4}, {2});
  CHECK(ms0_classify(IncompleteSumSpec(DigitString(SeriesKind::NegaD, {2, 0}, PeriodicTail{{1}}, b), b)).kind ==
        MsClass::FiniteUnionOfSegments);
  CHECK(ms0_classify(IncompleteSumSpec(negad({}, PeriodicTail{{1}}, three), three)).kind == MsClass::CantorNull);
  const auto f = BasisSequence::rule(BasisRule::Factorial);
  CHECK(ms0_classify(IncompleteSumSpec(DigitString(SeriesKind::NegaD, {1}, PeriodicTail{{1}}, f), f)).kind ==
        MsClass::CantorNull);
  const auto other = ms0_classify(IncompleteSumSpec(negad({}, PeriodicTail{{1, 0}}), two));
  CHECK(other.kind == MsClass::UnclassifiedEmpirical);
  CHECK(other.cover_total.has_value());
}

TEST_CASE("cantor-type covers decay") {
  const IncompleteSumSpec s3(negad({}, PeriodicTail{{1}}, three), three);
  ExactRational previous(1);
  for (std::size_t n = 1; n <= 18; ++n) {
    const ExactRational t = ms0_cover(s3, n).total_length;
    CHECK(t <= previous);
    previous = t;
  }
  CHECK(previous < q("1/1000"));
}

TEST_CASE("dimension estimates") {
  const double target = std::log(2.0) / std::log(3.0);
  const auto c = dimension_estimate(DigitAlphabet{{0, 2}}, three, 20);
  CHECK(std::abs(c.estimate - target) < 0.02);
  CHECK(c.gate.passed);
  CHECK(*c.gate.comparison_constant == 9);
  const auto full = dimension_estimate(DigitAlphabet{{0, 1}}, two, 12);
  CHECK(full.estimate == 1.0);
  const IncompleteSumSpec s3(negad({}, PeriodicTail{{1}}, three), three);
  CHECK(std::abs(dimension_estimate(s3, three, 20).estimate - target) < 0.02);
  const auto pos = dimension_estimate(PositionConstraint{{{1, 0}}}, three, 8);
  // 3^7 cylinders of length 3^-8: the depth-8 crossing is 7/8, tending to 1.
  CHECK(std::abs(pos.estimate - 7.0 / 8.0) < 1e-3);
  for (auto rule : {BasisRule::Factorial, BasisRule::Primes}) {
    const auto b = BasisSequence::rule(rule);
    try {
      dimension_estimate(DigitAlphabet{{0, 1}}, b, 5);
      FAIL("expected GateFailed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GateFailed);
    }
    DimensionOptions opt;
    opt.require_gate = false;
    CHECK_FALSE(dimension_estimate(DigitAlphabet{{0, 1}}, b, 5, opt).gate.passed);
  }
  CHECK_THROWS_AS(dimension_estimate(DigitAlphabet{{0, 2}}, two, 4), Error);
}
