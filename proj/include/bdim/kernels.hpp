#pragma once

// Batch orbit solves over word sets. The serial path is the reference; the
// parallel path distributes rotation classes over OpenMP threads and must give
// bit-identical records.

#include <span>
#include <vector>

#include "bdim/orbit_cache.hpp"
#include "bdim/record.hpp"

namespace bdim {

enum class Execution { serial, parallel };

struct SolveOptions {
  Execution execution = Execution::serial;
  int jobs = 0;  // 0: OpenMP default
  bool warm_start = true;
  FindOrbitOptions orbit;
};

// One record per input word, in input order. Words sharing a rotation class are
// solved once. Failures rethrow with the offending word in the message.
std::vector<OrbitRecord> solve_records(const TableAt& at, std::span<const CyclicWord> words,
                                       const SolveOptions& options = {},
                                       OrbitCache* cache = nullptr);

}  // namespace bdim
