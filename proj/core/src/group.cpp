#include "mfc/group.hpp"

#include <map>

#include "mfc/error.hpp"

namespace mfc {

namespace {

// Number of roots of unity in Q(zeta_N): N for even N, 2N for odd N.
unsigned roots_of_unity_count(const FieldPtr& field) {
  unsigned n = field ? field->order() : 1;
  return n % 2 == 0 ? n : 2 * n;
}

}  // namespace

GroupElement::GroupElement(ScalarMatrix matrix, const FieldPtr& field, unsigned order_bound)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw PreconditionError("group element must be a square matrix");
  if (!mfc::inverse(matrix_)) throw PreconditionError("group element is not invertible");
  const auto id = ScalarMatrix::identity(matrix_.rows());
  ScalarMatrix power = matrix_;
  unsigned k = 1;
  while (!(power == id)) {
    if (++k > order_bound)
      throw PreconditionError("group element has no finite order within bound " + std::to_string(order_bound));
    power = power * matrix_;
  }
  order_ = k;
  const unsigned roots = roots_of_unity_count(field);
  if (roots % order_ != 0)
    throw PreconditionError("group element of order " + std::to_string(order_) +
                            " does not fit the cyclotomic field (roots of unity: " + std::to_string(roots) + ")");
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  ScalarMatrix m = matrix_ * other.matrix_;
  const auto id = ScalarMatrix::identity(m.rows());
  ScalarMatrix power = m;
  unsigned k = 1;
  while (!(power == id)) {
    if (++k > 1024) throw PreconditionError("product of group elements has no finite order within bound 1024");
    power = power * m;
  }
  return GroupElement(std::move(m), k);
}

GroupElement GroupElement::inverse() const { return GroupElement(*mfc::inverse(matrix_), order_); }

bool GroupElement::commutes_with(const GroupElement& other) const {
  return matrix_ * other.matrix_ == other.matrix_ * matrix_;
}

bool GroupElement::commutes_with_r_charge(const std::vector<int>& weights) const {
  if (weights.size() != dimension()) return false;
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t j = 0; j < dimension(); ++j)
      if (weights[i] != weights[j] && !matrix_(i, j).is_zero()) return false;
  return true;
}

Poly act_matrix(const ScalarMatrix& g, const Poly& p) {
  const RingPtr& ring = p.ring();
  if (g.rows() != ring->size() || g.cols() != ring->size())
    throw PreconditionError("act: matrix size " + std::to_string(g.rows()) + " does not match " +
                            std::to_string(ring->size()) + " variables");
  std::vector<Poly> images;
  images.reserve(ring->size());
  for (std::size_t i = 0; i < ring->size(); ++i) {
    Poly img(ring);
    for (std::size_t j = 0; j < ring->size(); ++j)
      if (!g(j, i).is_zero()) img += g(j, i) * Poly::variable(ring, j);
    images.push_back(std::move(img));
  }
  return p.substitute(images, ring);
}

Poly act(const GroupElement& g, const Poly& p) { return act_matrix(g.matrix(), p); }

WeightReport weight_of(const Poly& p) {
  WeightReport report;
  if (p.is_zero()) return report;
  std::map<int, int> counts;
  for (const auto& [e, c] : p.terms()) ++counts[p.weight_of(e)];
  if (counts.size() == 1) {
    report.kind = WeightReport::Kind::homogeneous;
    report.degree = counts.begin()->first;
    return report;
  }
  // The majority weight is taken as intended; other terms are offending.
  int best = counts.begin()->first;
  for (const auto& [w, n] : counts)
    if (n > counts[best]) best = w;
  report.kind = WeightReport::Kind::inhomogeneous;
  for (const auto& [e, c] : p.terms()) {
    if (p.weight_of(e) == best) continue;
    report.offending_terms.push_back(Poly::monomial(p.ring(), e, c).to_string());
  }
  return report;
}

namespace {

std::vector<std::vector<Scalar>> witness_candidates(const RingPtr& ring) {
  std::vector<Scalar> values = {Scalar(0), Scalar(1), Scalar(-1)};
  if (ring->field && ring->field->order() > 2) {
    for (unsigned k = 1; k < ring->field->order() && values.size() < 8; ++k) {
      Scalar z = Scalar::zeta_power(ring->field, static_cast<long>(k));
      if (z != Scalar(-1)) values.push_back(z);
    }
  }
  const std::size_t n = ring->size();
  std::size_t total = 1;
  std::size_t per = values.size();
  for (std::size_t i = 0; i < n && total <= 20000; ++i) total *= per;
  if (total > 20000) {
    values.resize(3);
    per = 3;
    total = 1;
    for (std::size_t i = 0; i < n && total <= 20000; ++i) total *= per;
  }
  std::vector<std::vector<Scalar>> points;
  if (total > 20000) return points;
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<Scalar> pt(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      pt[i] = values[idx[i]];
      nonzero = nonzero || idx[i] != 0;
    }
    if (nonzero) points.push_back(std::move(pt));
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < per) break;
      idx[i] = 0;
    }
  }
  return points;
}

}  // namespace

NondegeneracyVerdict nondegeneracy_check(const Poly& w, unsigned degree_bound) {
  auto d = w.homogeneous_weight();
  if (!d) throw PreconditionError("nondegeneracy_check: W must be quasihomogeneous and nonzero");
  const RingPtr& ring = w.ring();
  const std::size_t n = ring->size();
  std::vector<Poly> partials;
  for (std::size_t i = 0; i < n; ++i) partials.push_back(w.derivative(i));

  NondegeneracyVerdict verdict;
  // A critical point away from the origin disproves nondegeneracy for every bound.
  for (const auto& pt : witness_candidates(ring)) {
    bool critical = true;
    for (const auto& p : partials)
      if (!p.evaluate(pt).is_zero()) {
        critical = false;
        break;
      }
    if (critical) {
      verdict.kind = NondegeneracyVerdict::Kind::degenerate;
      verdict.witness = pt;
      std::string desc;
      for (std::size_t i = 0; i < n; ++i) desc += (i ? ", " : "") + pt[i].to_string();
      verdict.explanation = "all partial derivatives vanish at (" + desc + ")";
      return verdict;
    }
  }

  // Membership of monomials in the weight-graded pieces of the Jacobian ideal.
  struct Piece {
    std::vector<Exponents> rows;
    std::map<Exponents, std::size_t, DegLexLess> row_index;
    ScalarMatrix span;
  };
  std::map<int, Piece> pieces;
  auto piece_for = [&](int weight) -> Piece& {
    auto it = pieces.find(weight);
    if (it != pieces.end()) return it->second;
    Piece pc;
    pc.rows = monomials_of_weight(ring->weights, weight);
    for (std::size_t r = 0; r < pc.rows.size(); ++r) pc.row_index[pc.rows[r]] = r;
    std::vector<Poly> gens;
    for (std::size_t i = 0; i < n; ++i) {
      if (partials[i].is_zero()) continue;
      const int cofactor_weight = weight - (*d - ring->weights[i]);
      for (const auto& mono : monomials_of_weight(ring->weights, cofactor_weight))
        gens.push_back(Poly::monomial(ring, mono) * partials[i]);
    }
    pc.span = ScalarMatrix(pc.rows.size(), gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c)
      for (const auto& [e, coef] : gens[c].terms()) pc.span(pc.row_index.at(e), c) = coef;
    return pieces.emplace(weight, std::move(pc)).first->second;
  };

  for (unsigned k = 1; k <= degree_bound; ++k) {
    bool all_inside = true;
    for (const auto& mono : monomials_of_degree(n, k)) {
      int wt = 0;
      for (std::size_t i = 0; i < n; ++i) wt += static_cast<int>(mono[i]) * ring->weights[i];
      Piece& pc = piece_for(wt);
      std::vector<Scalar> target(pc.rows.size());
      target[pc.row_index.at(mono)] = Scalar(1);
      if (pc.span.cols() == 0 || !solve(pc.span, target)) {
        all_inside = false;
        break;
      }
    }
    if (all_inside) {
      verdict.kind = NondegeneracyVerdict::Kind::nondegenerate;
      verdict.power = k;
      verdict.explanation = "every monomial of degree " + std::to_string(k) + " lies in the Jacobian ideal";
      return verdict;
    }
  }
  verdict.kind = NondegeneracyVerdict::Kind::inconclusive;
  verdict.explanation = "no power of the maximal ideal up to degree " + std::to_string(degree_bound) +
                        " lies in the Jacobian ideal and no critical point was found";
  return verdict;
}

}  // namespace mfc
