#include "bdim/orbit_cache.hpp"

#include <fstream>
#include <mutex>

#include <json.hpp>

#include "bdim/error.hpp"
#include "bdim/io.hpp"

namespace bdim {

std::optional<OrbitRecord> OrbitCache::find(const CyclicWord& word, double alpha) const {
  int shift = 0;
  const CyclicWord c = word.canonical(&shift);
  std::shared_lock lock(mutex_);
  auto it = records_.find({c.symbols(), alpha});
  if (it == records_.end()) return std::nullopt;
  // word = c.rotated(n - shift)
  const int n = word.size();
  return rotate_record(it->second, (n - shift) % n);
}

void OrbitCache::insert(const OrbitRecord& record) {
  int shift = 0;
  const CyclicWord c = record.orbit.word.canonical(&shift);
  OrbitRecord canon = rotate_record(record, shift);
  std::unique_lock lock(mutex_);
  warm_[c.symbols()] = canon.orbit.u;
  records_.insert_or_assign({c.symbols(), record.orbit.alpha}, std::move(canon));
}

std::optional<std::vector<double>> OrbitCache::warm_start(const CyclicWord& word) const {
  int shift = 0;
  const CyclicWord c = word.canonical(&shift);
  std::vector<double> u;
  {
    std::shared_lock lock(mutex_);
    auto it = warm_.find(c.symbols());
    if (it == warm_.end()) return std::nullopt;
    u = it->second;
  }
  const int n = word.size();
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = u[(j - shift + n) % n];
  return r;
}

void OrbitCache::set_warm_start(const CyclicWord& word, std::vector<double> u) {
  int shift = 0;
  const CyclicWord c = word.canonical(&shift);
  const int n = word.size();
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = u[(j + shift) % n];
  std::unique_lock lock(mutex_);
  warm_[c.symbols()] = std::move(r);
}

std::size_t OrbitCache::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

void OrbitCache::clear_records() {
  std::unique_lock lock(mutex_);
  records_.clear();
}

void OrbitCache::save_jsonl(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write cache file " + path);
  std::shared_lock lock(mutex_);
  std::map<std::pair<std::vector<int>, double>, std::string> lines = persisted_;
  for (const auto& [key, rec] : records_) lines[key] = record_to_json(rec).dump();
  for (const auto& [key, line] : lines) out << line << '\n';
}

std::size_t OrbitCache::load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  std::size_t count = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      CyclicWord w(j.at("word").get<std::vector<int>>());
      auto u = j.at("u").get<std::vector<double>>();
      if (static_cast<int>(u.size()) != w.size()) throw DomainError("u has wrong length");
      const double alpha = j.at("alpha").get<double>();
      set_warm_start(w, std::move(u));
      std::unique_lock lock(mutex_);
      persisted_[{w.canonical().symbols(), alpha}] = line;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    ++count;
  }
  return count;
}

}  // namespace bdim
