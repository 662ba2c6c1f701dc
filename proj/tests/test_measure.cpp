#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergolab/measure.hpp"
#include "ergolab/restricted.hpp"
#include "ergolab/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ergolab;
using namespace ergolab::testing;

namespace {

Rat random_rat(CounterRng& rng, long max_den = 64) {
  long den = 1 + static_cast<long>(rng.next() % static_cast<std::uint64_t>(max_den));
  long num = static_cast<long>(rng.next() % static_cast<std::uint64_t>(den + 1));
  return make_rat(num, den);
}

RatInterval random_interval(CounterRng& rng) {
  Rat a = random_rat(rng), b = random_rat(rng);
  if (a > b) std::swap(a, b);
  return {a, b};
}

}  // namespace

TEST_CASE("cylinder measures are exact products") {
  auto s = s3();
  CHECK(cylinder_measure(*s, Word{0}) == make_rat(1, 3));
  CHECK(cylinder_measure(*s, Word{1, 2}) == make_rat(1, 9));
  CHECK(cylinder_measure(*s, Word{}) == 1);
}

TEST_CASE("cylinder additivity at random nodes") {
  std::vector<SystemPtr> systems{doubling(), s3(), skew23(), grid23()};
  CounterRng rng(314, 0);
  int checks = 0;
  while (checks < 10000) {
    const auto& sys = systems[rng.next() % systems.size()];
    std::size_t len = rng.next() % 30;
    Word w(len);
    for (auto& c : w) c = static_cast<std::uint8_t>(rng.next() % sys->alphabet_size());
    Rat parent = cylinder_measure(*sys, w);
    Rat child_sum(0);
    w.push_back(0);
    for (std::size_t a = 0; a < sys->alphabet_size(); ++a) {
      w.back() = static_cast<std::uint8_t>(a);
      child_sum += cylinder_measure(*sys, w);
    }
    CHECK(parent == child_sum);
    ++checks;
  }
}

TEST_CASE("region_measure matches spec examples for S3") {
  auto s = s3();
  Box whole{{RatInterval{Rat(0), Rat(1)}, RatInterval{Rat(0), Rat(1)}}};
  MeasureInterval m = region_measure(*s, whole, 4);
  CHECK(m.lower == 1);
  CHECK(m.upper == 1);

  Box column{{RatInterval{Rat(0), make_rat(1, 2)}, RatInterval{Rat(0), Rat(1)}}};
  m = region_measure(*s, column, 1);
  CHECK(m.lower == make_rat(1, 3));
  CHECK(m.upper == make_rat(1, 3));

  Box corner{{RatInterval{Rat(0), make_rat(1, 4)}, RatInterval{Rat(0), make_rat(1, 9)}}};
  m = region_measure(*s, corner, 2);
  CHECK(m.lower == make_rat(1, 9));
  CHECK(m.upper == make_rat(1, 9));
}

TEST_CASE("region_measure agrees with flat enumeration on random boxes") {
  CounterRng rng(218, 0);
  std::vector<SystemPtr> systems{s3(), skew23(), grid23()};
  for (int trial = 0; trial < 60; ++trial) {
    const auto& sys = systems[rng.next() % systems.size()];
    Box box{{random_interval(rng), random_interval(rng)}};
    int gen = 1 + static_cast<int>(rng.next() % 6);
    MeasureInterval fast = region_measure(*sys, box, gen);
    MeasureInterval brute = brute_region(*sys, box, gen);
    CHECK(fast.lower == brute.lower);
    CHECK(fast.upper == brute.upper);
  }
  // dim 1 as well
  auto d = doubling_biased();
  for (int trial = 0; trial < 30; ++trial) {
    Box box{{random_interval(rng)}};
    int gen = 1 + static_cast<int>(rng.next() % 8);
    MeasureInterval fast = region_measure(*d, box, gen);
    MeasureInterval brute = brute_region(*d, box, gen);
    CHECK(fast.lower == brute.lower);
    CHECK(fast.upper == brute.upper);
  }
}

TEST_CASE("region_measure bracket is monotone in depth") {
  CounterRng rng(555, 1);
  std::vector<SystemPtr> systems{s3(), skew23(), doubling_biased()};
  int trials = 0;
  while (trials < 1000) {
    const auto& sys = systems[rng.next() % systems.size()];
    Box box;
    box.axes.push_back(random_interval(rng));
    if (sys->dim() == 2) box.axes.push_back(random_interval(rng));
    MeasureInterval prev = region_measure(*sys, box, 1);
    for (int depth = 2; depth <= 9; depth += 2) {
      MeasureInterval cur = region_measure(*sys, box, depth);
      CHECK(cur.lower >= prev.lower);
      CHECK(cur.upper <= prev.upper);
      CHECK(cur.lower <= cur.upper);
      prev = cur;
    }
    ++trials;
  }
}

TEST_CASE("zero-width boxes report boundary mass only in the upper bound") {
  auto s = s3();
  Box line{{RatInterval{make_rat(1, 2), make_rat(1, 2)}, RatInterval{Rat(0), Rat(1)}}};
  MeasureInterval m = region_measure(*s, line, 12);
  CHECK(m.lower == 0);
  CHECK(m.upper > 0);
  CHECK(m.upper < make_rat(1, 100));  // x-marginal is atomless
}

TEST_CASE("approximate squares: split index and exact measures") {
  auto s = s3();
  CHECK(s->split_index(1) == 0);
  CHECK(s->split_index(2) == 1);
  CHECK(s->split_index(3) == 1);
  CHECK(s->split_index(10) == 6);

  // k=2, word ((0,0),(1,.)): l=1, value = 1/3 * 2/3 = 2/9
  SymbolicPoint p = point_from_digits(s, {0, 1}, {0, 1});
  CHECK(approx_square_measure(*s, p, 2) == make_rat(2, 9));
  // k=1 -> marginal of the first i-digit
  CHECK(approx_square_measure(*s, p, 1) == make_rat(1, 3));
}

TEST_CASE("approx-square measure equals region bracket exactly (random words)") {
  CounterRng rng(77, 0);
  std::vector<SystemPtr> systems{s3(), skew23(), grid23()};
  int trials = 0;
  while (trials < 1000) {
    const auto& sys = systems[trials % systems.size()];
    int k = 1 + static_cast<int>(rng.next() % 7);
    SymbolicPoint p = sample_point(sys, static_cast<std::size_t>(k) + 4,
                                   rng.next(), 0);
    Rat direct = approx_square_measure(*sys, p, k);
    ApproxSquare sq = approx_square_at(*sys, p, k);
    MeasureInterval m = region_measure(*sys, sq.cell.to_box(*sys), k);
    CHECK(m.lower == direct);
    CHECK(m.upper == direct);
    ++trials;
  }
}

TEST_CASE("full-grid Lebesgue: approximate square has Lebesgue area") {
  auto g = grid23();
  CounterRng rng(4, 0);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 1 + static_cast<int>(rng.next() % 8);
    SymbolicPoint p = sample_point(g, static_cast<std::size_t>(k), rng.next(), 1);
    int l = g->split_index(k);
    Rat area(Int(1), pow_int(2, static_cast<unsigned>(k)) * pow_int(3, static_cast<unsigned>(l)));
    area.canonicalize();
    CHECK(approx_square_measure(*g, p, k) == area);
  }
}

TEST_CASE("projection measure: digit-walk CDF route") {
  auto s = s3();
  CHECK(projection_measure(*s, 0, {Rat(0), make_rat(1, 2)}) == make_rat(1, 3));
  CHECK(projection_measure(*s, 1, {Rat(0), make_rat(1, 3)}) == make_rat(1, 3));
  CHECK(projection_measure(*s, 0, {Rat(0), Rat(1)}) == 1);
  CHECK(projection_measure(*s, 1, {Rat(0), Rat(1)}) == 1);

  // non-adic endpoints: eventually periodic expansions sum exactly
  // x-marginal Bernoulli(1/3, 2/3): F(1/3) = 1/7 (alternating digits)
  CHECK(marginal_cdf(*s, 0, make_rat(1, 3)) == make_rat(1, 7));
}

TEST_CASE("projection equals region bracket on adic and non-adic intervals") {
  CounterRng rng(808, 0);
  std::vector<SystemPtr> systems{s3(), skew23(), grid23()};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& sys = systems[rng.next() % systems.size()];
    int axis = sys->dim() == 2 ? static_cast<int>(rng.next() % 2) : 0;
    RatInterval iv = random_interval(rng);
    Rat exact = projection_measure(*sys, axis, iv);
    Box strip;
    if (axis == 0) {
      strip.axes = {iv, RatInterval{Rat(0), Rat(1)}};
    } else {
      strip.axes = {RatInterval{Rat(0), Rat(1)}, iv};
    }
    MeasureInterval m = region_measure(*sys, strip, 24);
    CHECK(m.lower <= exact);
    CHECK(m.upper >= exact);
    // adic endpoints resolve exactly at matching depth
  }
  auto s = s3();
  RatInterval adic{make_rat(1, 4), make_rat(3, 8)};
  Rat exact = projection_measure(*s, 0, adic);
  Box strip{{adic, RatInterval{Rat(0), Rat(1)}}};
  MeasureInterval m = region_measure(*s, strip, 3);
  CHECK(m.lower == exact);
  CHECK(m.upper == exact);
}

TEST_CASE("ball measure: wrap-around, covering radius, Lebesgue oracle") {
  auto d = doubling();
  // center 0, r = 1/4: wraps to [0,1/4] and [3/4,1): length 1/2
  MeasureInterval m = ball_measure(*d, {Rat(0)}, make_rat(1, 4), 10);
  CHECK(m.lower == make_rat(1, 2));
  CHECK(m.upper == make_rat(1, 2));

  m = ball_measure(*d, {make_rat(1, 3)}, make_rat(1, 2), 4);
  CHECK(m.lower == 1);
  CHECK(m.upper == 1);

  auto g = grid23();
  // interior center, r = 0.1 -> area 0.04 within a narrow bracket
  MeasureInterval a = ball_measure(*g, {make_rat(1, 2), make_rat(1, 2)}, make_rat(1, 10), 12);
  CHECK(a.lower <= make_rat(1, 25));
  CHECK(a.upper >= make_rat(1, 25));
  CHECK(rat_to_double(a.width()) < 1e-3);
}

TEST_CASE("ball measure monotone in radius") {
  auto s = skew23();
  CounterRng rng(31, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rat> c{random_rat(rng), random_rat(rng)};
    Rat r1 = random_rat(rng, 16) / 4;
    Rat r2 = r1 + random_rat(rng, 16) / 8;
    MeasureInterval m1 = ball_measure(*s, c, r1, 10);
    MeasureInterval m2 = ball_measure(*s, c, r2, 10);
    CHECK(m1.lower <= m2.lower);
    CHECK(m1.upper <= m2.upper);
  }
}

TEST_CASE("inverse radius certifies its sandwich") {
  auto g = grid23();
  PlainMeasure mu(g);
  // Lebesgue: (2r)^2 = t -> r = sqrt(t)/2; t = 0.04 -> r = 0.1
  RadiusBracket b =
      inverse_radius(mu, {make_rat(1, 2), make_rat(1, 2)}, make_rat(1, 25), make_rat(1, 1000));
  CHECK(b.converged);
  CHECK(rat_to_double(b.lo) <= 0.1);
  CHECK(rat_to_double(b.hi) >= 0.1);
  CHECK(b.hi - b.lo <= make_rat(1, 1000));
  MeasureInterval lo_ball = mu.ball({make_rat(1, 2), make_rat(1, 2)}, b.lo, b.depth_used);
  MeasureInterval hi_ball = mu.ball({make_rat(1, 2), make_rat(1, 2)}, b.hi, b.depth_used);
  CHECK(lo_ball.upper <= make_rat(1, 25));
  CHECK(hi_ball.lower >= make_rat(1, 25));

  auto d = doubling();
  PlainMeasure mud(d);
  // 2r = t: t = 1/8 -> r = 1/16
  RadiusBracket bd = inverse_radius(mud, {make_rat(1, 3)}, make_rat(1, 8), make_rat(1, 4096));
  CHECK(bd.converged);
  CHECK(bd.lo <= make_rat(1, 16));
  CHECK(bd.hi >= make_rat(1, 16));

  // t = 1 keeps the upper end at the torus radius
  RadiusBracket b1 = inverse_radius(mud, {Rat(0)}, Rat(1), make_rat(1, 64));
  CHECK(b1.hi >= make_rat(1, 2) - make_rat(1, 64));
}

TEST_CASE("local dimension: exact on uniform systems, entropy value on S3") {
  auto g = grid23();
  SymbolicPoint p = sample_point(g, 50, 9, 0);
  LocalDimensionEstimate est = local_dimension(*g, p, 40);
  CHECK(est.value == doctest::Approx(2.0).epsilon(1e-12));

  auto d = doubling();
  SymbolicPoint q = sample_point(d, 50, 9, 1);
  CHECK(local_dimension(*d, q, 40).value == doctest::Approx(1.0).epsilon(1e-12));

  auto s = s3();
  int within = 0;
  const int samples = 60;
  for (int i = 0; i < samples; ++i) {
    SymbolicPoint x = sample_point(s, 40, 1234, static_cast<std::uint64_t>(i));
    double v = local_dimension(*s, x, 40).value;
    if (std::abs(v - 1.3389) < 0.05) ++within;
  }
  CHECK(within >= samples / 2);  // most samples concentrate at dim mu
}

TEST_CASE("measure dimension closed form vs Monte Carlo") {
  auto g = grid23();
  DimensionReport rg = measure_dimension(g, 30, 50, 5);
  CHECK(rg.closed_form == doctest::Approx(2.0));
  CHECK(rg.monte_carlo == doctest::Approx(2.0).epsilon(1e-9));

  auto d = doubling();
  CHECK(measure_dimension(d, 30, 50, 5).closed_form == doctest::Approx(1.0));

  auto s = s3();
  DimensionReport rs = measure_dimension(s, 40, 200, 7);
  CHECK(rs.closed_form == doctest::Approx(1.3389).epsilon(2e-4));
  CHECK(std::abs(rs.monte_carlo - rs.closed_form) < 0.05);
  CHECK(rs.consistent);
}

TEST_CASE("restricted measure: normalization and exact cell queries") {
  auto s = s3();
  // A = column [0,1/2) x [0,1]: mass 1/3
  std::vector<CellBox> col{{AdicInterval{1, Int(0)}, AdicInterval{0, Int(0)}}};
  CellUnion a = CellUnion::from_cells(s, col);
  RestrictedMeasure mu = restrict_measure(s, a);
  CHECK(mu.total_mass() == make_rat(1, 3));

  // mu_A of the generation-1 cylinder (0,0) is 1
  CellUnion cyl = CellUnion::from_words(s, {Word{0}});
  CHECK(mu.cell_union_mass(cyl) == 1);

  // doubling, A = [0,1/2): mu_A([0,1/4)) = 1/2
  auto d = doubling();
  std::vector<CellBox> half{{AdicInterval{1, Int(0)}, AdicInterval{0, Int(0)}}};
  RestrictedMeasure mud = restrict_measure(d, CellUnion::from_cells(d, half));
  Box quarter{{RatInterval{Rat(0), make_rat(1, 4)}}};
  MeasureInterval q = mud.region(quarter, 8);
  CHECK(q.lower == make_rat(1, 2));
  CHECK(q.upper == make_rat(1, 2));

  // whole-space restriction reproduces the measure
  RestrictedMeasure muw = restrict_measure(s, CellUnion::whole_space(s));
  Box box{{RatInterval{Rat(0), make_rat(1, 2)}, RatInterval{Rat(0), Rat(1)}}};
  MeasureInterval w = muw.region(box, 6);
  CHECK(w.lower == make_rat(1, 3));
  CHECK(w.upper == make_rat(1, 3));

  // mu_A(E) * mu(A) = mu(E and A) exactly on cell unions
  CellUnion e = CellUnion::from_words(s, {Word{0}, Word{1, 2}});
  Rat lhs = mu.cell_union_mass(e) * mu.total_mass();
  Rat rhs = a.intersect(e).measure();
  CHECK(lhs == rhs);

  CHECK_THROWS_AS(restrict_measure(s, CellUnion(s, 2, 1)), ValidationError);
}

TEST_CASE("restricted sampling lands in the set deterministically") {
  auto s = s3();
  std::vector<CellBox> col{{AdicInterval{1, Int(1)}, AdicInterval{1, Int(1)}}};
  CellUnion a = CellUnion::from_cells(s, col);
  RestrictedMeasure mu = restrict_measure(s, a);
  SymbolicPoint p1 = mu.sample(30, 21, 4);
  SymbolicPoint p2 = mu.sample(30, 21, 4);
  CHECK(p1.raw_digits() == p2.raw_digits());
  CHECK(a.contains(p1));
}
