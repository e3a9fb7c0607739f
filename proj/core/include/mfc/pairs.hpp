#pragma once

// Sheaves on a pair (X, Y) with Y closed in X, modelled by complexes and a
// comparison map F_beta -> i_* F_alpha. At this scale i_* is the identity on
// complexes over a common base ring.

#include <optional>
#include <string>
#include <vector>

#include "mfc/complex.hpp"
#include "mfc/p1.hpp"

namespace mfc {

struct PairObject {
  FreeComplex alpha;
  FreeComplex beta;
  std::map<int, PolyMatrix> phi;  // degree n: beta^n -> alpha^n

  ChainMap phi_map() const { return {beta, alpha, phi}; }
  std::optional<std::string> defect() const;
  /// Throws CertificateError on a defect.
  void validate() const;
};

/// (O_X, O_Y, restriction) over the given ring.
PairObject unit_pair(const RingPtr& ring);
PairObject pair_tensor(const PairObject& p, const PairObject& q);
/// j_!(G) = (0, G, 0).
PairObject j_lower_shriek(const FreeComplex& g);
/// Rj_!(P) = Cone(phi)[-1]; degree n is alpha^{n-1} (+) beta^n.
FreeComplex rj_shriek(const PairObject& p);
/// (F_alpha, F_beta (+) F_alpha) with comparison map [phi, id], which is
/// surjective; P embeds into it with quotient (0, F_alpha).
PairObject acyclic_extension(const PairObject& p);

/// [L, Sigma] on P^1: the line bundle O(E) with the comparison
/// s -> (scale_i * fiber_value(s, E, p_i)) into O_Sigma.
struct LineBundlePair {
  FieldPtr field;
  p1::Divisor e;
  std::vector<p1::Point> markings;
  std::vector<Scalar> scale;
};

/// [omega^log, Sigma] with residues as comparison maps. omega^log is O(E) for
/// E = sum of finite markings - (2 - [inf in Sigma]) inf, sections read as f dt.
LineBundlePair omega_log_pair(const std::vector<p1::Point>& markings, const FieldPtr& field = nullptr);

/// Two-term model [H^0(L(D)) -> L(D)|_D] of R pi_* L for an effective D
/// disjoint from the markings with H^1(L(D)) = 0.
struct DivisorModel {
  p1::Divisor e;
  p1::Divisor d;
  std::vector<p1::RationalFunction> sections;  // basis of H^0(L(D))
  FreeComplex complex;                         // degrees 0 and 1 over a point
};

/// Smallest divisor n*[q] (q the first integer point not in `avoid`) making
/// H^1(O(E + D)) vanish.
p1::Divisor default_divisor(const p1::Divisor& e, const std::vector<p1::Point>& avoid);
DivisorModel divisor_model(const p1::Divisor& e, const p1::Divisor& d, const FieldPtr& field);

/// Morphism shapes supported by the pushforward.
struct PairMorphism {
  enum class Kind { identity, finite, p1_projection };
  Kind kind = Kind::identity;
  // finite: a linear change of coordinates R' -> R given by the images of
  // the target variables in the source ring and the inverse images.
  RingPtr target_ring;
  std::vector<Poly> forward;
  std::vector<Poly> inverse;
  // p1_projection: divisor used for the two-term model (empty: default).
  p1::Divisor d;

  static PairMorphism identity() { return {}; }
  static PairMorphism finite(RingPtr target, std::vector<Poly> forward, std::vector<Poly> inverse);
  static PairMorphism p1_projection(p1::Divisor d = {});
};

struct PushforwardResult {
  PairObject object;
  /// Degree-0 comparison Rf_*F (x) Rf_*G -> Rf_*(F (x) G) is the identity for
  /// identity and finite shapes; see p1_product_comparison for P^1.
  std::optional<DivisorModel> model;
};

/// Pushforward of a pair of complexes along an identity or finite morphism.
PushforwardResult pair_pushforward(const PairMorphism& f, const PairObject& p);
/// Pushforward of [L, Sigma] along P^1 -> pt.
PushforwardResult pair_pushforward(const PairMorphism& f, const LineBundlePair& p);

/// Multiplication of sections H^0(L1(D1)) (x) H^0(L2(D2)) -> H^0(L1 L2(D1 + D2)),
/// as a matrix in the section bases (column index i * n2 + j).
ScalarMatrix p1_product_comparison(const DivisorModel& m1, const DivisorModel& m2, const DivisorModel& product);

struct CommutationCertificate {
  bool passed = false;
  std::map<int, std::size_t> lhs_ranks;  // Rj_! Rf_*
  std::map<int, std::size_t> rhs_ranks;  // Rf_* Rj_!
  std::optional<ChainMap> quasi_isomorphism;  // rhs -> lhs
  std::string detail;
};

CommutationCertificate check_commutation(const PairMorphism& f, const PairObject& p);
CommutationCertificate check_commutation(const PairMorphism& f, const LineBundlePair& p);

}  // namespace mfc
