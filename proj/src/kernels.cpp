#include "bdim/kernels.hpp"

#include <exception>
#include <map>
#include <string>

#include <omp.h>

#include "bdim/error.hpp"

namespace bdim {
namespace {

OrbitRecord solve_one(const TableAt& at, const CyclicWord& word, const SolveOptions& opt,
                      OrbitCache* cache) {
  if (cache) {
    if (auto hit = cache->find(word, at.alpha())) return *hit;
  }
  std::optional<std::vector<double>> init;
  if (cache && opt.warm_start) init = cache->warm_start(word);
  OrbitRecord r;
  try {
    r = solve_record(at, word, init, opt.orbit);
  } catch (const std::runtime_error&) {
    if (!init) throw;
    r = solve_record(at, word, std::nullopt, opt.orbit);
  }
  if (cache) cache->insert(r);
  return r;
}

[[noreturn]] void rethrow_with_word(std::exception_ptr e, const CyclicWord& w) {
  const std::string where = "word " + w.str() + ": ";
  try {
    std::rethrow_exception(e);
  } catch (const NumericalError& x) {
    throw NumericalError(where + x.what());
  } catch (const GeometryError& x) {
    throw GeometryError(where + x.what());
  } catch (const DomainError& x) {
    throw DomainError(where + x.what());
  }
}

}  // namespace

std::vector<OrbitRecord> solve_records(const TableAt& at, std::span<const CyclicWord> words,
                                       const SolveOptions& opt, OrbitCache* cache) {
  std::vector<CyclicWord> classes;
  std::vector<int> class_of(words.size()), shift_of(words.size());
  {
    std::map<CyclicWord, int> index;
    for (std::size_t i = 0; i < words.size(); ++i) {
      int s = 0;
      CyclicWord c = words[i].canonical(&s);
      auto [it, fresh] = index.try_emplace(c, static_cast<int>(classes.size()));
      if (fresh) classes.push_back(std::move(c));
      class_of[i] = it->second;
      shift_of[i] = s;
    }
  }

  const long nc = static_cast<long>(classes.size());
  std::vector<OrbitRecord> solved(nc);
  std::vector<std::exception_ptr> errors(nc);
  if (opt.execution == Execution::parallel) {
    const int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (long c = 0; c < nc; ++c) {
      try {
        solved[c] = solve_one(at, classes[c], opt, cache);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  } else {
    for (long c = 0; c < nc; ++c) {
      try {
        solved[c] = solve_one(at, classes[c], opt, cache);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  }
  for (long c = 0; c < nc; ++c) {
    if (errors[c]) rethrow_with_word(errors[c], classes[c]);
  }

  std::vector<OrbitRecord> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const int n = words[i].size();
    const int k = (n - shift_of[i]) % n;
    out.push_back(k == 0 ? solved[class_of[i]] : rotate_record(solved[class_of[i]], k));
  }
  return out;
}

}  // namespace bdim
