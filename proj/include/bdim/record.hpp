#pragma once

// Everything computed for one (word, α): the orbit, its α-derivatives and front data.

#include <optional>
#include <vector>

#include "bdim/deform.hpp"
#include "bdim/front.hpp"
#include "bdim/orbit.hpp"

namespace bdim {

struct OrbitRecord {
  PeriodicOrbit orbit;
  AlphaDerivatives derivs;
  FrontData front;
};

OrbitRecord solve_record(const TableAt& at, const CyclicWord& word,
                         std::optional<std::vector<double>> init = std::nullopt,
                         const FindOrbitOptions& options = {});

// Record of word.rotated(k).
OrbitRecord rotate_record(const OrbitRecord& record, int k);

}  // namespace bdim
