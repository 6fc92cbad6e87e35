#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "bdim/error.hpp"
#include "bdim/orbit.hpp"
#include "tables.hpp"

using namespace bdim;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<CyclicWord> words_up_to(int m, int n_max) {
  std::vector<CyclicWord> out;
  for (int n = 2; n <= n_max; ++n) {
    for (auto& w : enumerate_cyclic_words(m, n)) out.push_back(w);
  }
  return out;
}

Eigen::MatrixXd to_eigen(const CyclicTridiagonal& a) {
  const int n = a.size();
  const auto d = a.dense();
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = d[r * n + c];
  return m;
}

// Total length of the closed polygon through disk points at polar angles th.
double disk_length(const std::vector<Vec2>& centers, const std::vector<double>& th) {
  const int n = static_cast<int>(th.size());
  double g = 0.0;
  for (int j = 0; j < n; ++j) {
    const int i = (j + n - 1) % n;
    const Vec2 a = centers[i] + Vec2{std::cos(th[i]), std::sin(th[i])};
    const Vec2 b = centers[j] + Vec2{std::cos(th[j]), std::sin(th[j])};
    g += norm(b - a);
  }
  return g;
}

}  // namespace

TEST_CASE("two-bounce chord on the side-6 table") {
  const BilliardTable t = testing::three_disks();
  const PeriodicOrbit o = find_orbit(t, CyclicWord({1, 2}), 0.0);
  CHECK(o.residual <= 1e-10);
  CHECK(o.d[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(o.d[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(o.phi[0] < 1e-7);
  CHECK(o.phi[1] < 1e-7);
  CHECK(length_G(t, o.word, o.u, 0.0) == doctest::Approx(8.0).epsilon(1e-12));

  const CyclicTridiagonal h = hess_G(t, o.word, o.u, 0.0);
  const Eigen::MatrixXd m = to_eigen(h);
  CHECK(m(0, 0) == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(m(1, 1) == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(m(0, 1) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(m(1, 0) == doctest::Approx(0.5).epsilon(1e-10));

  // Perturbing u_1 makes the chord longer.
  std::vector<double> u = o.u;
  u[0] += 0.1;
  CHECK(grad_G(t, o.word, u, 0.0)[0] > 0.0);
}

TEST_CASE("three-bounce orbit against an independent grid search") {
  const BilliardTable t = testing::three_disks();
  const PeriodicOrbit o = find_orbit(t, CyclicWord({1, 2, 3}), 0.0);
  CHECK(o.reflection_residual < 1e-8);
  CHECK(o.phi[0] == doctest::Approx(o.phi[1]).epsilon(1e-9));
  CHECK(o.phi[1] == doctest::Approx(o.phi[2]).epsilon(1e-9));

  std::vector<Vec2> c{testing::vertex(6, 0), testing::vertex(6, 1), testing::vertex(6, 2)};
  std::vector<double> th(3);
  for (int j = 0; j < 3; ++j) th[j] = std::atan2(-c[j].y, -c[j].x) + 0.3 * (j + 1);
  for (double h = 0.5; h > 1e-9; h *= 0.5) {
    for (int sweep = 0; sweep < 4; ++sweep) {
      for (int j = 0; j < 3; ++j) {
        double best = disk_length(c, th), arg = th[j];
        for (int k = -8; k <= 8; ++k) {
          std::vector<double> w = th;
          w[j] = th[j] + h * k / 8.0;
          if (const double g = disk_length(c, w); g < best) best = g, arg = w[j];
        }
        th[j] = arg;
      }
    }
  }
  const double oracle = disk_length(c, th);
  CHECK(length_G(t, o.word, o.u, 0.0) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(oracle == doctest::Approx(3 * (6 - std::sqrt(3.0))).epsilon(1e-10));
}

TEST_CASE("length is invariant under cyclic rotation") {
  const BilliardTable t = testing::mixed_family();
  const CyclicWord w({1, 2, 3, 2});
  std::mt19937 rng(3);
  const TableAt at = t.at(0.1);
  const std::vector<double> u0 = initial_guess(at, w);
  std::vector<double> u = u0;
  std::normal_distribution<double> N(0.0, 0.2);
  for (double& x : u) x += N(rng);
  for (int k = 0; k < 4; ++k) {
    std::vector<double> ur(4);
    for (int j = 0; j < 4; ++j) ur[j] = u[(j + k) % 4];
    CHECK(length_G(at, w.rotated(k), ur) == doctest::Approx(length_G(at, w, u)).epsilon(1e-14));
  }
}

TEST_CASE("gradient and Hessian match finite differences") {
  std::mt19937 rng(5);
  std::normal_distribution<double> N(0.0, 0.05);
  for (const BilliardTable& t : {testing::three_disks(), testing::mixed_family()}) {
    const TableAt at = t.at(0.0);
    for (const CyclicWord& w : words_up_to(3, 5)) {
      const PeriodicOrbit o = find_orbit(at, w);
      std::vector<double> u = o.u;
      for (double& x : u) x += N(rng);
      const int n = w.size();
      const double h = 1e-6;
      const auto g = grad_G(at, w, u);
      for (int j = 0; j < n; ++j) {
        std::vector<double> up = u, dn = u;
        up[j] += h;
        dn[j] -= h;
        const double fd = (length_G(at, w, up) - length_G(at, w, dn)) / (2 * h);
        CHECK(std::abs(fd - g[j]) <= 1e-6 * std::max(1.0, std::abs(g[j])));
      }
      // Hessian at the minimizer, dense finite differences of the gradient.
      const Eigen::MatrixXd hm = to_eigen(hess_G(at, w, o.u));
      const Eigen::MatrixXd he = to_eigen(exact_hessian(at, w, o.u));
      const double hh = 1e-5;
      for (int j = 0; j < n; ++j) {
        std::vector<double> up = o.u, dn = o.u;
        up[j] += hh;
        dn[j] -= hh;
        const auto gp = grad_G(at, w, up), gm = grad_G(at, w, dn);
        for (int i = 0; i < n; ++i) {
          const double fd = (gp[i] - gm[i]) / (2 * hh);
          CHECK(std::abs(fd - hm(i, j)) <= 1e-5 * std::max(1.0, std::abs(fd)));
          CHECK(std::abs(fd - he(i, j)) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hm);
      CHECK(es.eigenvalues()[0] > 0.0);
    }
  }
}

TEST_CASE("orbits are unique across random starts") {
  std::mt19937 rng(17);
  const BilliardTable t = testing::mixed_family();
  const TableAt at = t.at(-0.1);
  for (const CyclicWord& w : words_up_to(3, 6)) {
    if (w != w.canonical()) continue;
    const PeriodicOrbit ref = find_orbit(at, w);
    const std::vector<double> guess = initial_guess(at, w);
    for (int trial = 0; trial < 16; ++trial) {
      std::vector<double> u = guess;
      for (int j = 0; j < w.size(); ++j) {
        const double L = at.curve(w[j] - 1).perimeter();
        u[j] += std::uniform_real_distribution<double>(-0.2 * L, 0.2 * L)(rng);
      }
      const PeriodicOrbit o = find_orbit(at, w, u);
      double dist = 0.0;
      for (int j = 0; j < w.size(); ++j) {
        const double L = at.curve(w[j] - 1).perimeter();
        double du = std::fmod(std::abs(o.u[j] - ref.u[j]), L);
        dist = std::max(dist, std::min(du, L - du));
      }
      CHECK(dist < 1e-8);
    }
  }
}

TEST_CASE("rotation equivariance of the solver") {
  const BilliardTable t = testing::mixed_family();
  const TableAt at = t.at(0.15);
  for (const CyclicWord& w : words_up_to(3, 5)) {
    const PeriodicOrbit o = find_orbit(at, w);
    for (int k = 1; k < w.size(); ++k) {
      const PeriodicOrbit r = find_orbit(at, w.rotated(k));
      const PeriodicOrbit e = rotate_orbit(o, k);
      for (int j = 0; j < w.size(); ++j) {
        CHECK(std::abs(r.u[j] - e.u[j]) < 1e-10);
        CHECK(std::abs(r.d[j] - e.d[j]) < 1e-10);
      }
    }
  }
}

TEST_CASE("orbit invariants over the side-6 pool") {
  const BilliardTable t = testing::three_disks();
  const TableAt at = t.at(0.0);
  PoolStats small, all;
  for (const CyclicWord& w : words_up_to(3, 8)) {
    const PeriodicOrbit o = find_orbit(at, w);
    CHECK(o.residual <= 1e-10);
    CHECK(o.reflection_residual < 1e-8);
    CHECK(o.clearance > 1e-9);
    for (int j = 0; j < o.size(); ++j) {
      CHECK(o.phi[j] < kPi / 2);
      CHECK(o.d[j] > 0.0);
      CHECK(o.kappa[j] == doctest::Approx(1.0));
      CHECK(o.gamma[j] == doctest::Approx(2.0 / o.cos_phi[j]));
    }
    // Varah guarantee on the scaled system.
    const CyclicTridiagonal a = scaled_system(o);
    const double hgap = a.dominance_gap();
    CHECK(hgap >= 2.0 * (1.0 - 1e-12));
    CHECK(to_eigen(a).inverse().cwiseAbs().rowwise().sum().maxCoeff() <=
          (1.0 / hgap) * (1 + 1e-12));
    if (w.size() <= 4) small.add(o);
    all.add(o);
  }
  CHECK(all.d_min <= small.d_min);
  CHECK(all.d_max >= small.d_max);
  CHECK(all.phi_max >= small.phi_max);
  CHECK(all.d_min == doctest::Approx(4.0));
}

TEST_CASE("warm start converges quickly") {
  const BilliardTable t = testing::radius_family();
  for (const CyclicWord& w : words_up_to(3, 4)) {
    const PeriodicOrbit o = find_orbit(t, w, 0.0);
    const PeriodicOrbit n = find_orbit(t, w, 0.01, o.u);
    CHECK(n.newton_steps <= 4);
    CHECK(n.residual <= 1e-10);
  }
}

TEST_CASE("word validation") {
  const BilliardTable t = testing::three_disks();
  CHECK_THROWS_AS(find_orbit(t, CyclicWord({1, 4}), 0.0), DomainError);
  CHECK_THROWS_AS(find_orbit(t, CyclicWord({1, 2}), 0.0, std::vector<double>{0.0}), DomainError);
}
