#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bdim/deform.hpp"
#include "bdim/error.hpp"
#include "tables.hpp"

using namespace bdim;

namespace {

std::vector<CyclicWord> words_up_to(int m, int n_max) {
  std::vector<CyclicWord> out;
  for (int n = 2; n <= n_max; ++n) {
    for (auto& w : enumerate_cyclic_words(m, n)) out.push_back(w);
  }
  return out;
}

// Central difference of an orbit quantity across α.
struct Bracket {
  PeriodicOrbit mid, up, dn;
  double h;
};

Bracket bracket(const BilliardTable& t, const CyclicWord& w, double alpha, double h) {
  Bracket b{find_orbit(t, w, alpha), {}, {}, h};
  b.up = find_orbit(t, w, alpha + h, b.mid.u);
  b.dn = find_orbit(t, w, alpha - h, b.mid.u);
  return b;
}

double unwrap_diff(double a, double b, double L) {
  double d = a - b;
  if (d > L / 2) d -= L;
  if (d < -L / 2) d += L;
  return d;
}

bool close(double analytic, double fd, double rel = 1e-4, double abs = 1e-7) {
  return std::abs(analytic - fd) <= std::max(abs, rel * std::abs(fd));
}

int check_all(const BilliardTable& t, const CyclicWord& w, double alpha) {
  const Bracket br = bracket(t, w, alpha, 1e-5);
  const AlphaDerivatives a = alpha_derivatives(br.mid);
  const double h2 = 2 * br.h;
  int bad = 0;
  const TableAt at = t.at(alpha);
  for (int j = 0; j < w.size(); ++j) {
    const double L = at.curve(w[j] - 1).perimeter();
    bad += !close(a.du[j], unwrap_diff(br.up.u[j], br.dn.u[j], L) / h2);
    bad += !close(a.dp[j].x, (br.up.p[j].x - br.dn.p[j].x) / h2);
    bad += !close(a.dp[j].y, (br.up.p[j].y - br.dn.p[j].y) / h2);
    bad += !close(a.dd[j], (br.up.d[j] - br.dn.d[j]) / h2);
    bad += !close(a.dkappa[j], (br.up.kappa[j] - br.dn.kappa[j]) / h2);
    bad += !close(a.dcos_phi[j], (br.up.cos_phi[j] - br.dn.cos_phi[j]) / h2);
    bad += !close(a.dgamma[j], (br.up.gamma[j] - br.dn.gamma[j]) / h2);
  }
  return bad;
}

}  // namespace

TEST_CASE("static table has no α-derivatives") {
  const BilliardTable t = testing::three_disks();
  for (const CyclicWord& w : words_up_to(3, 4)) {
    const AlphaDerivatives a = alpha_derivatives(find_orbit(t, w, 0.0));
    for (int j = 0; j < w.size(); ++j) {
      CHECK(a.b[j] == 0.0);
      CHECK(a.du[j] == 0.0);
      CHECK(a.dd[j] == 0.0);
      CHECK(a.dkappa[j] == 0.0);
      CHECK(a.dcos_phi[j] == 0.0);
      CHECK(a.dgamma[j] == 0.0);
    }
  }
}

TEST_CASE("radius family on the chord") {
  const BilliardTable t = testing::radius_family();
  const CyclicWord w({1, 2});
  const PeriodicOrbit o = find_orbit(t, w, 0.0);
  const AlphaDerivatives a = alpha_derivatives(o);
  CHECK(a.dd[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(a.dd[1] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(a.dkappa[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(a.dkappa[1]) < 1e-12);
  CHECK(std::abs(a.dcos_phi[0]) < 1e-9);

  const PeriodicOrbit up = find_orbit(t, w, 1e-4, o.u), dn = find_orbit(t, w, -1e-4, o.u);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(a.du[j] - (up.u[j] - dn.u[j]) / 2e-4) < 1e-5);
  }
  // b against finite differences of grad G at fixed u.
  const auto gp = grad_G(t, w, o.u, 1e-5), gm = grad_G(t, w, o.u, -1e-5);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(a.b[j] - (gp[j] - gm[j]) / 2e-5 / o.cos_phi[j]) < 1e-5);
  }
  // Untouched obstacles: the right-hand side vanishes.
  const AlphaDerivatives u23 = alpha_derivatives(find_orbit(t, CyclicWord({2, 3}), 0.0));
  CHECK(u23.du[0] == 0.0);
  CHECK(u23.du[1] == 0.0);
}

TEST_CASE("shift along the chord") {
  const Vec2 c1 = testing::vertex(6, 0), c2 = testing::vertex(6, 1);
  const Vec2 dir = (c2 - c1) / norm(c2 - c1);
  const BilliardTable t = testing::shift_family(dir);
  const PeriodicOrbit o = find_orbit(t, CyclicWord({1, 2}), 0.0);
  const AlphaDerivatives a = alpha_derivatives(o);
  CHECK(std::abs(a.b[0]) < 1e-12);
  CHECK(std::abs(a.b[1]) < 1e-12);
  CHECK(a.dd[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(a.dd[1] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(a.dgamma[0]) < 1e-10);
}

TEST_CASE("mixed partial matches finite differences of the gradient away from the minimum") {
  const BilliardTable t = testing::mixed_family();
  for (const CyclicWord& w : words_up_to(3, 4)) {
    const PeriodicOrbit o = find_orbit(t, w, 0.05);
    std::vector<double> u = o.u;
    for (int j = 0; j < w.size(); ++j) u[j] += 0.03 * (j + 1);
    const TableAt at = t.at(0.05);
    std::vector<CurveJet> jets;
    for (int j = 0; j < w.size(); ++j) jets.push_back(at.curve(w[j] - 1).jets(u[j]));
    const auto m = mixed_partial(jets);
    const auto gp = grad_G(t, w, u, 0.05 + 1e-5), gm = grad_G(t, w, u, 0.05 - 1e-5);
    for (int j = 0; j < w.size(); ++j) CHECK(close(m[j], (gp[j] - gm[j]) / 2e-5, 1e-5, 1e-7));
  }
}

TEST_CASE("all first derivatives match α finite differences") {
  int bad = 0, cases = 0;
  for (const BilliardTable& t : {testing::radius_family(), testing::shift_family(),
                                 testing::expansion_family(), testing::mixed_family()}) {
    for (const CyclicWord& w : words_up_to(3, 6)) {
      bad += check_all(t, w, 0.0);
      ++cases;
    }
  }
  CHECK(cases > 100);
  CHECK(bad == 0);
}

TEST_CASE("bound suite over the n <= 8 pool") {
  for (const BilliardTable& t :
       {testing::radius_family(), testing::shift_family(), testing::expansion_family()}) {
    const double alpha = 0.0;
    std::vector<PeriodicOrbit> pool;
    PoolStats stats;
    for (const CyclicWord& w : words_up_to(3, 8)) {
      pool.push_back(find_orbit(t, w, alpha));
      stats.add(pool.back());
    }
    const BoundConstants k = bound_constants(t, stats);
    CHECK(k.C_u > 0.0);
    CHECK(std::isfinite(k.C_gamma));
    for (const PeriodicOrbit& o : pool) {
      const AlphaDerivatives a = alpha_derivatives(o);
      for (int j = 0; j < o.size(); ++j) {
        CHECK(std::abs(a.b[j]) <= k.b_max);
        CHECK(std::abs(a.du[j]) <= k.du_bound(o.cos_phi[j]));
        CHECK(std::abs(a.du[j]) <= k.C_u);
        CHECK(norm(a.dp[j]) <= k.C_p);
        CHECK(std::abs(a.dd[j]) <= k.C_d);
        CHECK(std::abs(a.dkappa[j]) <= k.C_kappa + 1e-15);
        CHECK(std::abs(a.dcos_phi[j]) <= k.C_phi);
        CHECK(std::abs(a.dgamma[j]) <= k.C_gamma);
      }
    }
  }
}

TEST_CASE("bound constants for special families") {
  const std::array<double, 3> grid{-0.5, 0.0, 0.5};
  const BilliardTable shift = testing::shift_family();
  PoolStats stats;
  for (const CyclicWord& w : words_up_to(3, 4)) stats.add(find_orbit(shift, w, 0.0));
  const BoundConstants k = bound_constants(deformation_constants(shift, grid, 256, 1.0), stats,
                                           false);
  CHECK(k.C_u == doctest::Approx(1.0 / (stats.cos_phi_min * stats.kappa_min * stats.d_min)));

  const BilliardTable still = testing::three_disks();
  PoolStats s2;
  s2.add(find_orbit(still, CyclicWord({1, 2}), 0.0));
  CHECK(bound_constants(still, s2).C_u == 0.0);
  CHECK_THROWS_AS(bound_constants(still, PoolStats{}), DomainError);
}

TEST_CASE("shift derivatives are linear in the shift vector") {
  const Vec2 v1{1.0, 0.0}, v2{0.3, -0.7};
  for (const CyclicWord& w : words_up_to(3, 4)) {
    const auto a = du_dalpha(find_orbit(testing::shift_family(v1), w, 0.0));
    const auto b = du_dalpha(find_orbit(testing::shift_family(v2), w, 0.0));
    const auto c = du_dalpha(find_orbit(testing::shift_family(v1 + v2), w, 0.0));
    for (int j = 0; j < w.size(); ++j) CHECK(std::abs(a[j] + b[j] - c[j]) < 1e-12);
  }
}

TEST_CASE("second derivative estimate") {
  const BilliardTable t = testing::radius_family();
  const CyclicWord w({1, 2, 3});
  const auto d2 = d2u_dalpha2(t, w, 0.05);
  const double h = 1e-3;
  const PeriodicOrbit m = find_orbit(t, w, 0.05);
  const PeriodicOrbit p = find_orbit(t, w, 0.05 + h, m.u), q = find_orbit(t, w, 0.05 - h, m.u);
  for (int j = 0; j < 3; ++j) {
    const double fd = (p.u[j] - 2 * m.u[j] + q.u[j]) / (h * h);
    CHECK(std::abs(d2[j] - fd) < 1e-3 * std::max(1.0, std::abs(fd)));
  }
}
