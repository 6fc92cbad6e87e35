#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "bdim/error.hpp"
#include "bdim/symbolic.hpp"

using namespace bdim;

namespace {

// Independent brute force: all m^n strings filtered by the cyclic rule.
std::vector<std::vector<int>> brute_force(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(n, 1);
  while (true) {
    bool ok = true;
    for (int j = 0; j < n; ++j) ok = ok && w[j] != w[(j + 1) % n];
    if (ok) out.push_back(w);
    int k = n - 1;
    while (k >= 0 && w[k] == m) w[k--] = 1;
    if (k < 0) break;
    ++w[k];
  }
  return out;
}

}  // namespace

TEST_CASE("two-letter words on three symbols") {
  const auto w = enumerate_cyclic_words(3, 2);
  REQUIRE(w.size() == 6);
  std::set<std::vector<int>> got;
  for (const auto& x : w) got.insert(x.symbols());
  const std::set<std::vector<int>> want{{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}};
  CHECK(got == want);
}

TEST_CASE("enumeration matches brute force, ordering and count_fix") {
  for (int m : {3, 4, 5}) {
    for (int n = 2; n <= 12; ++n) {
      if (m == 5 && n > 9) continue;
      const auto w = enumerate_cyclic_words(m, n);
      CHECK(w.size() == count_fix(m, n));
      bool sorted = true, valid = true;
      for (std::size_t k = 1; k < w.size(); ++k) sorted = sorted && w[k - 1] < w[k];
      CHECK(sorted);
      if (n <= 7) {
        const auto b = brute_force(m, n);
        REQUIRE(b.size() == w.size());
        bool same = true;
        for (std::size_t k = 0; k < b.size(); ++k) same = same && b[k] == w[k].symbols();
        CHECK(same);
      }
      for (const auto& x : w) {
        valid = valid && admissible_cyclic(x.symbols());
        for (int r = 0; r < n; ++r) valid = valid && admissible_cyclic(x.rotated(r).symbols());
      }
      CHECK(valid);
    }
  }
  CHECK(enumerate_cyclic_words(3, 3).size() == 6);
  CHECK(enumerate_cyclic_words(3, 8).size() == 258);
  CHECK_THROWS_AS(enumerate_cyclic_words(3, 1), DomainError);
}

TEST_CASE("count_fix values") {
  CHECK(count_fix(3, 2) == 6);
  CHECK(count_fix(4, 3) == 24);
  CHECK(count_fix(3, 10) == 1026);
  CHECK(count_fix(3, 1) == 0);
}

TEST_CASE("periodic truncation") {
  CHECK(truncate_periodic(OneSidedWord({1, 2, 3, 1, 2, 3}), 3).symbols() ==
        std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(truncate_periodic(OneSidedWord({1, 2, 1, 3}), 3), DomainError);
  CHECK(truncate_periodic(OneSidedWord({1, 2, 1, 2, 1}), 4).symbols() ==
        std::vector<int>{1, 2, 1, 2});
  CHECK_THROWS_AS(truncate_periodic(OneSidedWord({1, 2}), 3), DomainError);
  CHECK_THROWS_AS(OneSidedWord({1, 1, 2}), DomainError);
}

TEST_CASE("cylinder metric") {
  const CyclicWord a({1, 2, 3, 1, 2, 3, 1, 3});
  CHECK(cylinder_metric(a, a, 0.5) == 0.0);
  // Agree on indices -2..2, differ at 3.
  const CyclicWord x({1, 2, 3, 1, 2, 1, 2, 3});
  const CyclicWord y({1, 2, 3, 2, 3, 1, 2, 3});
  CHECK(x.at_cyclic(3) != y.at_cyclic(3));
  CHECK(cylinder_metric(x, y, 0.5) == doctest::Approx(0.125));
  CHECK(cylinder_metric(CyclicWord({1, 2}), CyclicWord({2, 1}), 0.5) == 1.0);
  CHECK(cylinder_metric(CyclicWord({1, 2}), CyclicWord({1, 2, 1, 2}), 0.5) == 0.0);
}

TEST_CASE("cylinder metric is a metric on small word sets") {
  std::vector<CyclicWord> words;
  for (int n = 2; n <= 5; ++n) {
    for (auto& w : enumerate_cyclic_words(3, n)) words.push_back(w);
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto& a = words[pick(rng)];
    const auto& b = words[pick(rng)];
    const auto& c = words[pick(rng)];
    const double ab = cylinder_metric(a, b, 0.4);
    CHECK(ab == cylinder_metric(b, a, 0.4));
    CHECK(ab <= cylinder_metric(a, c, 0.4) + cylinder_metric(c, b, 0.4) + 1e-15);
    CHECK(cylinder_metric(a, a, 0.4) == 0.0);
    if (a.size() == b.size() && a != b) CHECK(ab > 0.0);
  }
}

TEST_CASE("parsing, formatting and canonical rotation") {
  const CyclicWord w = parse_word("2,3,1");
  CHECK(w.str() == "2,3,1");
  int shift = -1;
  CHECK(w.canonical(&shift).str() == "1,2,3");
  CHECK(w.rotated(shift) == w.canonical());
  CHECK(parse_word(" 1, 2 ").str() == "1,2");
  CHECK_THROWS_AS(parse_word("1,1"), DomainError);
  CHECK_THROWS_AS(parse_word("1,,2"), DomainError);
  CHECK_THROWS_AS(parse_word("1,x"), DomainError);
  CHECK_THROWS_AS(parse_word("1"), DomainError);
  CHECK_THROWS_AS(parse_word("1,2,1"), DomainError);
}
