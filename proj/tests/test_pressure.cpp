#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bdim/error.hpp"
#include "bdim/pressure.hpp"
#include "tables.hpp"

using namespace bdim;

namespace {

const double kLog2 = std::log(2.0);

DimensionOptions quick(int n) {
  DimensionOptions o;
  o.depth = n;
  o.previous_depth = false;
  o.cross_check = false;
  return o;
}

}  // namespace

TEST_CASE("zero scale gives the topological entropy") {
  ConstantPotential c(3, 0.7);
  for (int n = 2; n <= 8; ++n) {
    CHECK(pressure_transfer_matrix(c, 0.0, n).first.value == doctest::Approx(kLog2).epsilon(1e-12));
  }
  CHECK(PeriodicSum(c, 8).evaluate(0.0).value ==
        doctest::Approx(std::log(258.0) / 8.0).epsilon(1e-14));

  OrbitPotentialSource src(testing::three_disks(), 0.0);
  CHECK(std::abs(TransferMatrix(src, 4).evaluate(0.0).value - kLog2) < 1e-10);
  CHECK(std::abs(PeriodicSum(src, 8).evaluate(0.0).value - std::log(258.0) / 8.0) < 1e-12);

  ConstantPotential c4(4, 1.0);
  CHECK(std::abs(TransferMatrix(c4, 3).evaluate(0.0).value - std::log(3.0)) < 1e-10);
}

TEST_CASE("constant potential") {
  const double c = 0.9;
  ConstantPotential src(3, c);
  for (int n : {3, 4, 7}) {
    for (double s : {0.0, 0.3, 1.7}) {
      const double exact = kLog2 - s * c + std::log1p(2.0 * std::pow(-1.0, n) / std::pow(2.0, n)) / n;
      CHECK(PeriodicSum(src, n).evaluate(s).value == doctest::Approx(exact).epsilon(1e-13));
      CHECK(TransferMatrix(src, n).evaluate(s).value ==
            doctest::Approx(kLog2 - s * c).epsilon(1e-12));
    }
  }
  ConstantPotential l2(3, kLog2);
  CHECK(std::abs(bowen_root(l2, 6).root - 1.0) < 1e-10);

  const DimensionReport rep = dimension_report(src, quick(6));
  CHECK(rep.D == doctest::Approx(2 * kLog2 / c).epsilon(1e-12));
  CHECK(rep.lower == doctest::Approx(rep.D).epsilon(1e-12));
  CHECK(rep.upper == doctest::Approx(rep.D).epsilon(1e-12));
  CHECK(rep.h == doctest::Approx(kLog2).epsilon(1e-12));
}

TEST_CASE("periodic closure") {
  CHECK(periodic_closure({1, 2, 3}, 3).symbols() == std::vector<int>{1, 2, 3});
  CHECK(periodic_closure({1, 2, 1}, 3).symbols() == std::vector<int>{1, 2, 1, 2});
  CHECK(periodic_closure({2, 1, 2}, 3).symbols() == std::vector<int>{2, 1, 2, 1});
  CHECK(periodic_closure({1, 3, 1}, 3).symbols() == std::vector<int>{1, 3, 1, 2});
  CHECK_THROWS_AS(periodic_closure({1}, 3), DomainError);
}

TEST_CASE("Gibbs measure") {
  OrbitPotentialSource src(testing::three_disks(), 0.0);
  TransferMatrix tm(src, 6);
  for (double s : {0.0, 0.4, 0.9}) {
    const GibbsMeasure g = tm.gibbs(s);
    bool nonneg = true;
    for (double w : g.weights) nonneg = nonneg && w >= 0.0;
    CHECK(nonneg);
    CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::accumulate(g.edge_weights.begin(), g.edge_weights.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
    const auto a = g.marginal_drop_last(), b = g.marginal_drop_first();
    double gap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
    CHECK(gap < 1e-8);
  }
  // s = 0: Parry measure, uniform over edges of the regular word graph
  const GibbsMeasure g0 = tm.gibbs(0.0);
  double dev = 0.0;
  for (double w : g0.edge_weights) dev = std::max(dev, std::abs(w - 1.0 / g0.edge_weights.size()));
  CHECK(dev < 1e-10);

  // equal-weight average of psi over cylinders
  double avg = 0.0;
  for (const auto& v : tm.edge_values()) avg += v.psi;
  avg /= tm.edges();
  CHECK(gibbs_integrals(tm, 0.0).int_psi == doctest::Approx(avg).epsilon(1e-10));
}

TEST_CASE("pressure decreases in s and dP/ds = -int psi") {
  OrbitPotentialSource src(testing::radius_family(), 0.05);
  TransferMatrix tm(src, 5);
  PeriodicSum ps(src, 6);
  double prev_t = 1e9, prev_p = 1e9;
  bool monotone = true;
  for (int i = 0; i <= 20; ++i) {
    const double s = 0.1 * i;
    const double t = tm.evaluate(s).value, p = ps.evaluate(s).value;
    monotone = monotone && t < prev_t && p < prev_p;
    prev_t = t;
    prev_p = p;
  }
  CHECK(monotone);

  const double h = 1e-4;
  for (double s : {0.2, 0.5, 0.9}) {
    const double fd_t = (tm.evaluate(s + h).value - tm.evaluate(s - h).value) / (2 * h);
    CHECK(fd_t == doctest::Approx(-tm.evaluate(s).int_psi).epsilon(1e-4));
    const double fd_p = (ps.evaluate(s + h).value - ps.evaluate(s - h).value) / (2 * h);
    CHECK(fd_p == doctest::Approx(-ps.evaluate(s).int_psi).epsilon(1e-4));
  }
  const BowenResult r = bowen_root(tm);
  const double fd = (tm.evaluate(r.root + h).value - tm.evaluate(r.root - h).value) / (2 * h);
  CHECK(fd == doctest::Approx(-r.at_root.int_psi).epsilon(1e-4));
  CHECK(std::abs(r.at_root.value) <= 1e-13 * r.at_root.int_psi + 1e-15);
}

TEST_CASE("side-6 table: bracket and method agreement") {
  auto cache = std::make_shared<OrbitCache>();
  OrbitPotentialSource src(testing::three_disks(), 0.0, {}, cache);
  src.add_pool(8);

  std::vector<double> gaps;
  for (int n : {4, 6, 8}) {
    const double root = bowen_root(TransferMatrix(src, n)).root;
    gaps.push_back(std::abs(PeriodicSum(src, n).evaluate(root).value));
  }
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
  const double root10 = bowen_root(TransferMatrix(src, 10)).root;
  CHECK(std::abs(PeriodicSum(src, 10).evaluate(root10).value) < 1e-3);

  CHECK(std::abs(PeriodicSum(src, 6).evaluate(0.15).value - PeriodicSum(src, 8).evaluate(0.15).value) < 5e-3);

  DimensionOptions opt;
  const DimensionReport rep = dimension_report(testing::three_disks(), 0.0, opt, cache);
  CHECK(rep.bracket_ok());
  CHECK(rep.lower < rep.upper);
  CHECK(rep.Ds == rep.Du);
  CHECK(rep.D == doctest::Approx(2 * rep.Du));
  CHECK(rep.mu0_lower <= rep.D + 1e-12);
  CHECK(std::isfinite(rep.delta_n));
  CHECK(rep.delta_n < 1e-3);
  CHECK(std::abs(rep.periodic_pressure_at_root) == doctest::Approx(gaps[2]).epsilon(1e-6));
  CHECK(rep.int_dpsi == 0.0);
  CHECK(rep.dD_dalpha == 0.0);
  CHECK(rep.dD_bound == 0.0);
  CHECK(rep.h == doctest::Approx(rep.Du * rep.int_psi));
}

TEST_CASE("similarity invariance") {
  const BilliardTable t = testing::three_disks();
  const double d1 = dimension_report(t, 0.0, quick(6)).D;
  const double d2 = dimension_report(t.scaled(2.0), 0.0, quick(6)).D;
  CHECK(std::abs(d1 - d2) < 1e-6);
}

TEST_CASE("separated obstacles") {
  const BilliardTable t = testing::expansion_family();
  const DimensionReport near = dimension_report(t, 0.0, quick(6));
  const DimensionReport far = dimension_report(t, 9.0, quick(6));
  CHECK(far.D < near.D);
  CHECK(far.bracket_ok());
  CHECK(far.upper - far.lower < near.upper - near.lower);
  CHECK(far.dD_dalpha < 0.0);
  CHECK(far.derivative_bound_ok());
  // nearly constant potential
  CHECK(std::abs(far.Du - kLog2 / far.int_psi) / far.Du < 0.02);
}

TEST_CASE("dimension derivative against finite differences") {
  const int n = 6;
  const double h = 1e-3;
  for (const BilliardTable& t : {testing::radius_family(), testing::shift_family()}) {
    const DimensionReport rep = dimension_report(t, 0.0, quick(n));
    const double fd =
        (dimension_report(t, h, quick(n)).D - dimension_report(t, -h, quick(n)).D) / (2 * h);
    CHECK(std::abs(rep.dD_dalpha - fd) <= std::max(1e-3, 0.01 * std::abs(fd)));
    CHECK(rep.derivative_bound_ok());
    CHECK(rep.bracket_ok());
  }
  // growing radius shortens flights and raises the dimension
  CHECK(dimension_derivative(testing::radius_family(), 0.0, 4) > 0.0);
}

TEST_CASE("no-eclipse failure is rejected") {
  CHECK_THROWS_AS(OrbitPotentialSource(testing::three_disks(2.1), 0.0), GeometryError);
}
