#include "bdim/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bdim/error.hpp"

namespace bdim {

bool admissible_linear(const std::vector<int>& symbols) {
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    if (symbols[j] < 1) return false;
    if (j > 0 && symbols[j] == symbols[j - 1]) return false;
  }
  return true;
}

bool admissible_cyclic(const std::vector<int>& symbols) {
  return symbols.size() >= 2 && admissible_linear(symbols) && symbols.front() != symbols.back();
}

CyclicWord::CyclicWord(std::vector<int> symbols) : s_(std::move(symbols)) {
  if (s_.size() < 2) throw DomainError("cyclic words need length n >= 2");
  if (!admissible_cyclic(s_)) throw DomainError("inadmissible cyclic word " + str());
}

int CyclicWord::at_cyclic(long j) const {
  const long n = size();
  return s_[((j % n) + n) % n];
}

CyclicWord CyclicWord::rotated(int k) const {
  const int n = size();
  std::vector<int> r(n);
  for (int j = 0; j < n; ++j) r[j] = at_cyclic(static_cast<long>(j) + k);
  CyclicWord w;
  w.s_ = std::move(r);
  return w;
}

CyclicWord CyclicWord::canonical(int* shift) const {
  int best = 0;
  const int n = size();
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const int a = at_cyclic(k + j), b = at_cyclic(best + j);
      if (a != b) {
        if (a < b) best = k;
        break;
      }
    }
  }
  if (shift) *shift = best;
  return rotated(best);
}

int CyclicWord::max_symbol() const { return s_.empty() ? 0 : *std::max_element(s_.begin(), s_.end()); }

std::string CyclicWord::str() const {
  std::string out;
  for (std::size_t j = 0; j < s_.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(s_[j]);
  }
  return out;
}

OneSidedWord::OneSidedWord(std::vector<int> symbols) : s_(std::move(symbols)) {
  if (!admissible_linear(s_)) throw DomainError("one-sided word has an immediate repeat");
}

std::vector<std::vector<int>> enumerate_linear_words(int m, int n) {
  if (m < 2 || n < 1) throw DomainError("enumerate_linear_words needs m >= 2, n >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> w(n, 0);
  // Iterative depth-first search in lexicographic order.
  int pos = 0;
  w[0] = 0;
  while (pos >= 0) {
    ++w[pos];
    if (pos > 0 && w[pos] == w[pos - 1]) ++w[pos];
    if (w[pos] > m) {
      w[pos] = 0;
      --pos;
      continue;
    }
    if (pos == n - 1) {
      out.push_back(w);
    } else {
      ++pos;
      w[pos] = 0;
    }
  }
  return out;
}

std::vector<CyclicWord> enumerate_cyclic_words(int m, int n) {
  if (m < 3) throw DomainError("enumerate_cyclic_words needs m >= 3");
  if (n < 2) throw DomainError("no admissible cyclic word of length n <= 1");
  std::vector<CyclicWord> out;
  for (auto& w : enumerate_linear_words(m, n)) {
    if (w.front() != w.back()) out.emplace_back(std::move(w));
  }
  return out;
}

std::uint64_t count_fix(int m, int n) {
  if (m < 3 || n < 1) throw DomainError("count_fix needs m >= 3, n >= 1");
  std::uint64_t p = 1;
  const std::uint64_t base = static_cast<std::uint64_t>(m - 1);
  for (int k = 0; k < n; ++k) {
    if (p > std::numeric_limits<std::uint64_t>::max() / base) {
      throw DomainError("count_fix overflows 64 bits");
    }
    p *= base;
  }
  return (n % 2 == 0) ? p + base : p - base;
}

CyclicWord truncate_periodic(const OneSidedWord& prefix, int n) {
  if (n < 2) throw DomainError("periodic truncation needs n >= 2");
  if (prefix.size() < n) throw DomainError("prefix shorter than the truncation length");
  std::vector<int> s(prefix.symbols().begin(), prefix.symbols().begin() + n);
  if (s.front() == s.back()) {
    throw DomainError("inadmissible closure: xi_n == xi_1 at n = " + std::to_string(n));
  }
  return CyclicWord(std::move(s));
}

double cylinder_metric(const CyclicWord& a, const CyclicWord& b, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("cylinder metric needs θ in (0, 1)");
  // Periodic sequences agreeing on a window of length lcm-ish size agree everywhere.
  const long limit = 2L * a.size() * b.size() + 2;
  long agree = 0;
  while (agree < limit && a.at_cyclic(agree) == b.at_cyclic(agree) &&
         a.at_cyclic(-agree) == b.at_cyclic(-agree)) {
    ++agree;
  }
  if (agree >= limit) return 0.0;
  return std::pow(theta, static_cast<double>(agree));
}

CyclicWord parse_word(std::string_view text) {
  std::vector<int> s;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw DomainError("empty symbol in word \"" + std::string(text) + "\"");
    int v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw DomainError("bad symbol in word \"" + std::string(text) + "\"");
      v = v * 10 + (c - '0');
    }
    s.push_back(v);
    pos = comma + 1;
  }
  return CyclicWord(std::move(s));
}

}  // namespace bdim
