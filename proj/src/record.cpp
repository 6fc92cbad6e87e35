#include "bdim/record.hpp"

namespace bdim {
namespace {

template <class T>
void rotate_in_place(std::vector<T>& v, int k) {
  const int n = static_cast<int>(v.size());
  if (n == 0) return;
  std::vector<T> r(n);
  for (int j = 0; j < n; ++j) r[j] = v[((j + k) % n + n) % n];
  v = std::move(r);
}

}  // namespace

OrbitRecord solve_record(const TableAt& at, const CyclicWord& word,
                         std::optional<std::vector<double>> init, const FindOrbitOptions& options) {
  OrbitRecord r;
  r.orbit = find_orbit(at, word, std::move(init), options);
  r.derivs = alpha_derivatives(r.orbit);
  r.front = front_data(r.orbit, r.derivs);
  return r;
}

OrbitRecord rotate_record(const OrbitRecord& rec, int k) {
  OrbitRecord r;
  r.orbit = rotate_orbit(rec.orbit, k);
  r.derivs = rec.derivs;
  for (auto* v : {&r.derivs.b, &r.derivs.y, &r.derivs.du, &r.derivs.dd, &r.derivs.dkappa,
                  &r.derivs.dcos_phi, &r.derivs.dgamma}) {
    rotate_in_place(*v, k);
  }
  rotate_in_place(r.derivs.dp, k);
  r.front = rec.front;
  for (auto* v : {&r.front.k, &r.front.expansion, &r.front.contraction, &r.front.psi,
                  &r.front.psi_s, &r.front.dk, &r.front.dpsi}) {
    rotate_in_place(*v, k);
  }
  return r;
}

}  // namespace bdim
