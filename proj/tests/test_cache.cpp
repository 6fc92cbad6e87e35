#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "bdim/error.hpp"
#include "bdim/kernels.hpp"
#include "bdim/pressure.hpp"
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

bool same(const OrbitRecord& a, const OrbitRecord& b) {
  return a.orbit.word == b.orbit.word && a.orbit.u == b.orbit.u && a.orbit.d == b.orbit.d &&
         a.derivs.du == b.derivs.du && a.front.k == b.front.k && a.front.dpsi == b.front.dpsi;
}

}  // namespace

TEST_CASE("rotations share one cached orbit") {
  const TableAt at = testing::radius_family().at(0.05);
  OrbitCache cache;
  const CyclicWord w({2, 3, 1, 3});
  const OrbitRecord direct = solve_record(at, w);
  cache.insert(direct);
  CHECK(cache.size() == 1);
  for (int k = 0; k < 4; ++k) {
    const CyclicWord r = w.rotated(k);
    auto hit = cache.find(r, 0.05);
    REQUIRE(hit.has_value());
    CHECK(hit->orbit.word == r);
    const OrbitRecord fresh = solve_record(at, r);
    double gap = 0.0;
    for (int j = 0; j < 4; ++j) {
      gap = std::max({gap, std::abs(hit->orbit.u[j] - fresh.orbit.u[j]),
                      std::abs(hit->derivs.du[j] - fresh.derivs.du[j]),
                      std::abs(hit->front.dpsi[j] - fresh.front.dpsi[j])});
    }
    CHECK(gap < 1e-9);
  }
  CHECK_FALSE(cache.find(w, 0.06).has_value());
  auto warm = cache.warm_start(w.rotated(1));
  REQUIRE(warm.has_value());
  CHECK((*warm)[0] == direct.orbit.u[1]);
}

TEST_CASE("parallel kernel matches the serial reference") {
  const TableAt at = testing::mixed_family().at(0.1);
  const auto words = words_up_to(3, 7);
  SolveOptions serial, parallel;
  parallel.execution = Execution::parallel;
  parallel.jobs = 4;
  const auto a = solve_records(at, words, serial);
  const auto b = solve_records(at, words, parallel);
  REQUIRE(a.size() == words.size());
  bool identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) identical = identical && same(a[i], b[i]);
  CHECK(identical);

  OrbitCache cache;
  const auto c = solve_records(at, words, parallel, &cache);
  bool cached_identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) cached_identical = cached_identical && same(a[i], c[i]);
  CHECK(cached_identical);
}

TEST_CASE("concurrent reports share one cache") {
  const BilliardTable t = testing::radius_family();
  DimensionOptions opt;
  opt.depth = 5;
  opt.previous_depth = false;
  const double r1 = dimension_report(t, 0.0, opt).D;
  const double r2 = dimension_report(t, 0.1, opt).D;

  auto cache = std::make_shared<OrbitCache>();
  opt.solve.execution = Execution::parallel;
  opt.solve.jobs = 2;
  double c1 = 0.0, c2 = 0.0;
  std::thread a([&] { c1 = dimension_report(t, 0.0, opt, cache).D; });
  std::thread b([&] { c2 = dimension_report(t, 0.1, opt, cache).D; });
  a.join();
  b.join();
  CHECK(std::abs(c1 - r1) < 1e-12);
  CHECK(std::abs(c2 - r2) < 1e-12);
  CHECK(cache->size() > 0);
}

TEST_CASE("warm starts cut Newton steps") {
  const BilliardTable t = testing::shift_family();
  const auto words = words_up_to(3, 6);
  OrbitCache cache;
  solve_records(t.at(0.0), words, {}, &cache);

  SolveOptions cold;
  cold.warm_start = false;
  const auto c = solve_records(t.at(0.01), words, cold, &cache);
  const auto w = solve_records(t.at(0.02), words, {}, &cache);
  long cold_steps = 0, warm_steps = 0;
  for (const auto& r : c) cold_steps += r.orbit.newton_steps;
  for (const auto& r : w) warm_steps += r.orbit.newton_steps;
  CHECK(warm_steps < cold_steps);
}

TEST_CASE("JSON-lines persistence") {
  const TableAt at = testing::three_disks().at(0.0);
  OrbitCache cache;
  solve_records(at, words_up_to(3, 4), {}, &cache);
  const std::string path = "test_cache_records.jsonl";
  cache.save_jsonl(path);

  std::ifstream in(path);
  std::size_t lines = 0;
  bool keys = true;
  for (std::string l; std::getline(in, l); ++lines) {
    const auto j = nlohmann::json::parse(l);
    keys = keys && j.contains("d_alpha") && j.contains("front") && j.contains("u") &&
           j.contains("residual") && j["front"].contains("psi");
  }
  CHECK(lines == cache.size());
  CHECK(keys);

  OrbitCache loaded;
  CHECK(loaded.load_jsonl(path) == lines);
  CHECK(loaded.size() == 0);
  const CyclicWord w({1, 3, 2});
  auto warm = loaded.warm_start(w);
  REQUIRE(warm.has_value());
  const OrbitRecord r = solve_record(at, w, warm);
  CHECK(r.orbit.newton_steps <= 1);

  std::ofstream bad(path);
  bad << "{\"word\": [1, 2], \"u\": [0.0\n";
  bad.close();
  CHECK_THROWS_AS(loaded.load_jsonl(path), DomainError);
  std::remove(path.c_str());
}

TEST_CASE("failures name the offending word") {
  const TableAt at = testing::three_disks().at(0.0);
  const std::vector<CyclicWord> words{CyclicWord({1, 2}), CyclicWord({1, 4})};
  try {
    solve_records(at, words);
    FAIL("expected an exception");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("1,4") != std::string::npos);
  }
}
