#pragma once

// Concurrent store of solved orbit records keyed by (word up to rotation, α),
// plus the latest parameters per rotation class for warm starts.

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "bdim/record.hpp"

namespace bdim {

class OrbitCache {
 public:
  OrbitCache() = default;
  OrbitCache(const OrbitCache&) = delete;
  OrbitCache& operator=(const OrbitCache&) = delete;

  // Record for exactly this word (rotated from the stored class representative).
  std::optional<OrbitRecord> find(const CyclicWord& word, double alpha) const;
  void insert(const OrbitRecord& record);

  // Parameters from the most recently inserted α of the word's rotation class.
  std::optional<std::vector<double>> warm_start(const CyclicWord& word) const;
  void set_warm_start(const CyclicWord& word, std::vector<double> u);

  std::size_t size() const;
  void clear_records();

  // JSON-lines persistence: one record per (word, α). Lines loaded earlier are
  // written back unless a record for the same key was solved in this run.
  void save_jsonl(const std::string& path) const;
  // Loaded records seed warm starts only; returns the number of lines read.
  std::size_t load_jsonl(const std::string& path);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::vector<int>, double>, OrbitRecord> records_;
  std::map<std::vector<int>, std::vector<double>> warm_;
  std::map<std::pair<std::vector<int>, double>, std::string> persisted_;
};

}  // namespace bdim
