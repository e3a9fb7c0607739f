#pragma once

// Random complexes and pair objects over a point.

#include "mfc/pairs.hpp"
#include "support.hpp"

namespace mfc::testing {

inline FreeComplex random_complex(Rng& rng, const RingPtr& base, int lo, int hi, const std::string& tag) {
  std::uniform_int_distribution<std::size_t> dim(0, 3);
  std::uniform_int_distribution<long> coeff(-2, 2);
  FreeComplex c(base);
  for (int n = lo; n <= hi; ++n) {
    std::vector<Generator> g;
    const std::size_t k = dim(rng);
    for (std::size_t i = 0; i < k; ++i) g.push_back({tag + std::to_string(n) + "_" + std::to_string(i), 0});
    c.set_term(n, g);
  }
  for (int n = hi - 1; n >= lo; --n) {
    std::vector<std::vector<Scalar>> kernel;
    if (n + 1 < hi && c.rank(n + 2) > 0) {
      kernel = kernel_basis(c.differential(n + 1).to_scalars());
    } else {
      for (std::size_t i = 0; i < c.rank(n + 1); ++i) {
        std::vector<Scalar> e(c.rank(n + 1));
        e[i] = Scalar(1);
        kernel.push_back(e);
      }
    }
    ScalarMatrix d(c.rank(n + 1), c.rank(n));
    for (std::size_t j = 0; j < c.rank(n); ++j)
      for (const auto& k : kernel) {
        Scalar a(coeff(rng));
        for (std::size_t i = 0; i < k.size(); ++i) d(i, j) += a * k[i];
      }
    c.set_differential(n, PolyMatrix::from_scalars(base, d));
  }
  return c;
}

// beta = alpha (+) X with phi = [c id | 0] + (d h + h d) for a random h.
inline PairObject random_pair(Rng& rng, const RingPtr& base) {
  FreeComplex alpha = random_complex(rng, base, 0, 2, "a");
  FreeComplex x = random_complex(rng, base, 0, 2, "x");
  FreeComplex beta = direct_sum(alpha, x);
  std::uniform_int_distribution<long> coeff(-2, 2);
  const Scalar c(coeff(rng));
  std::map<int, ScalarMatrix> h;
  for (int n = -1; n <= 3; ++n) {
    ScalarMatrix m = random_matrix(rng, alpha.rank(n - 1), beta.rank(n));
    h[n] = m;
  }
  PairObject p{alpha, beta, {}};
  for (int n = 0; n <= 2; ++n) {
    ScalarMatrix phi(alpha.rank(n), beta.rank(n));
    for (std::size_t i = 0; i < alpha.rank(n); ++i) phi(i, i) = c;
    phi = phi + alpha.differential(n - 1).to_scalars() * h[n] + h[n + 1] * beta.differential(n).to_scalars();
    p.phi[n] = PolyMatrix::from_scalars(base, phi);
  }
  return p;
}

// Rank of the map induced on H^n by phi.
inline std::size_t induced_rank(const PairObject& p, int n) {
  const auto& a = p.alpha;
  const auto& b = p.beta;
  if (a.rank(n) == 0 || b.rank(n) == 0) return 0;
  std::vector<std::vector<Scalar>> cycles;
  if (b.rank(n + 1) == 0) {
    for (std::size_t i = 0; i < b.rank(n); ++i) {
      std::vector<Scalar> e(b.rank(n));
      e[i] = Scalar(1);
      cycles.push_back(e);
    }
  } else {
    cycles = kernel_basis(b.differential(n).to_scalars());
  }
  ScalarMatrix phi = p.phi_map().at(n).to_scalars();
  const std::size_t nb = a.rank(n - 1) > 0 ? a.rank(n - 1) : 0;
  ScalarMatrix span(a.rank(n), cycles.size() + nb);
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    auto v = phi.apply(cycles[c]);
    for (std::size_t r = 0; r < v.size(); ++r) span(r, c) = v[r];
  }
  std::size_t boundaries = 0;
  if (nb > 0) {
    ScalarMatrix d = a.differential(n - 1).to_scalars();
    for (std::size_t c = 0; c < nb; ++c)
      for (std::size_t r = 0; r < d.rows(); ++r) span(r, cycles.size() + c) = d(r, c);
    boundaries = rank(d);
  }
  return rank(span) - boundaries;
}

inline std::size_t get(const std::map<int, std::size_t>& m, int n) {
  auto it = m.find(n);
  return it == m.end() ? 0 : it->second;
}


}  // namespace mfc::testing
