#pragma once

// Random generators shared by the property tests.

#include <random>
#include <vector>

#include "mfc/linalg.hpp"
#include "mfc/poly.hpp"

namespace mfc::testing {

using Rng = std::mt19937_64;

inline Scalar random_rational(Rng& rng, long range = 5) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, range);
  return Scalar::rational(num(rng), den(rng));
}

inline Scalar random_scalar(Rng& rng, const FieldPtr& field, long range = 5) {
  std::vector<mpq_class> c(field->degree());
  for (auto& x : c) x = random_rational(rng, range).to_rational();
  return Scalar(field, std::move(c));
}

inline Scalar random_nonzero_scalar(Rng& rng, const FieldPtr& field, long range = 5) {
  for (;;) {
    Scalar s = random_scalar(rng, field, range);
    if (!s.is_zero()) return s;
  }
}

/// Random polynomial with up to `terms` terms of total degree <= max_degree.
inline Poly random_poly(Rng& rng, const RingPtr& ring, unsigned max_degree, int terms, long range = 3) {
  Poly p(ring);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<long> coeff(-range, range);
  for (int t = 0; t < terms; ++t) {
    auto monos = monomials_of_degree(ring->size(), deg(rng));
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    p.add_term(monos[pick(rng)], Scalar(coeff(rng)));
  }
  return p;
}

/// Random quasihomogeneous polynomial of the given weight.
inline Poly random_weighted_poly(Rng& rng, const RingPtr& ring, int weight, int terms, long range = 3) {
  Poly p(ring);
  auto monos = monomials_of_weight(ring->weights, weight);
  if (monos.empty()) return p;
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<long> coeff(-range, range);
  for (int t = 0; t < terms; ++t) p.add_term(monos[pick(rng)], Scalar(coeff(rng)));
  return p;
}

inline ScalarMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range = 2,
                                  double density = 0.6) {
  ScalarMatrix m(rows, cols);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<long> coeff(-range, range);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (keep(rng)) m(r, c) = Scalar(coeff(rng));
  return m;
}

}  // namespace mfc::testing
