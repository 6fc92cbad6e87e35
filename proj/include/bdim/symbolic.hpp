#pragma once

// Words of the full shift on m symbols without immediate repeats.
// Symbols are 1-based throughout.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bdim {

class CyclicWord {
 public:
  CyclicWord() = default;
  // Throws DomainError unless n >= 2 and xi_i != xi_{i+1} cyclically.
  explicit CyclicWord(std::vector<int> symbols);

  int size() const { return static_cast<int>(s_.size()); }
  int operator[](int j) const { return s_[j]; }
  int at_cyclic(long j) const;
  const std::vector<int>& symbols() const { return s_; }

  CyclicWord rotated(int k) const;
  // Lexicographically smallest rotation and the shift that produces it.
  CyclicWord canonical(int* shift = nullptr) const;
  int max_symbol() const;

  std::string str() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) { return a.s_ <=> b.s_; }

 private:
  std::vector<int> s_;
};

class OneSidedWord {
 public:
  OneSidedWord() = default;
  explicit OneSidedWord(std::vector<int> symbols);

  int size() const { return static_cast<int>(s_.size()); }
  int operator[](int j) const { return s_[j]; }
  const std::vector<int>& symbols() const { return s_; }

 private:
  std::vector<int> s_;
};

bool admissible_cyclic(const std::vector<int>& symbols);
bool admissible_linear(const std::vector<int>& symbols);

// All cyclic words of length n over {1..m} in lexicographic order.
std::vector<CyclicWord> enumerate_cyclic_words(int m, int n);
// All linear words of length n (no immediate repeat) in lexicographic order.
std::vector<std::vector<int>> enumerate_linear_words(int m, int n);

// (m-1)^n + (m-1)(-1)^n
std::uint64_t count_fix(int m, int n);

// n-periodic closure of the first n symbols; DomainError if xi_n == xi_1.
CyclicWord truncate_periodic(const OneSidedWord& prefix, int n);

// Two-sided distance theta^N between the bi-infinite periodic extensions,
// N the largest j with agreement on all |i| < j.
double cylinder_metric(const CyclicWord& a, const CyclicWord& b, double theta);

CyclicWord parse_word(std::string_view text);

}  // namespace bdim
