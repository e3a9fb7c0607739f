#pragma once

// Genus-zero spin-curve data over a point base: the two-term model of
// R pi_* V, the pulled-back potential, the homotopy f_{-1} and the
// fundamental matrix factorization.

#include <optional>
#include <string>
#include <vector>

#include "mfc/dgmf.hpp"
#include "mfc/group.hpp"
#include "mfc/pairs.hpp"

namespace mfc::spin {

struct Component {
  std::string name;
  /// E_j with L_j = O(E_j), one per coordinate x_j of V.
  std::vector<p1::Divisor> bundle;
  /// Effective twisting divisor, disjoint from markings and nodes.
  p1::Divisor d;
  /// Reference log form eta(t) dt.
  p1::RationalFunction eta;
};

struct Marking {
  std::string name;
  std::size_t component = 0;
  p1::Point point;
  GroupElement gamma;
  /// Fiber trivialization acting on coordinate vectors of V.
  ScalarMatrix rigidification;
};

/// Two markings (indices) identified into a node.
struct Node {
  std::size_t first = 0;
  std::size_t second = 0;
};

struct SpinCurveSpec {
  FieldPtr field;
  RingPtr ring;  // coordinates x_j of V with R-weights
  Poly w;
  int d = 0;
  std::vector<GroupElement> group;
  std::optional<GroupElement> j;
  std::optional<GroupElement> j_sqrt;
  std::vector<Component> components;
  std::vector<Marking> markings;
  std::vector<Node> nodes;

  /// Markings that are not part of a node, in order.
  std::vector<std::size_t> open_markings() const;
  /// Shape, weight and invariance checks; throws PreconditionError. The spin
  /// conditions are the pole structure of eta and W(s) eta being a log form.
  void validate(bool spin_conditions = true) const;
};

/// V^gamma with a weight-homogeneous basis (columns) and its projector.
struct FixedSpace {
  ScalarMatrix basis;       // n x m
  ScalarMatrix coordinates; // m x n, left inverse of basis on V^gamma
  ScalarMatrix projector;   // n x n, average of the powers of gamma
  std::vector<int> weights;
};

FixedSpace fixed_space(const GroupElement& gamma, const std::vector<int>& weights);
/// Coordinate names of V^{gamma_i}: x<i+1> or x<i+1>_<k+1>.
std::vector<std::string> marking_coordinates(std::size_t marking, std::size_t dim);

struct SectionRef {
  std::size_t component = 0;
  std::size_t coordinate = 0;
  p1::RationalFunction f;
};

struct TwoTermModel {
  std::vector<SectionRef> raw;  // sections of the components before gluing
  ScalarMatrix inclusion;       // raw x rank A; columns give the basis of A
  std::vector<Generator> a;     // coordinates u_k on tot(A)
  std::vector<Generator> b;     // odd generators, one per jet
  ScalarMatrix f_raw;           // B x raw
  ScalarMatrix f;               // B x A
  std::vector<std::size_t> open;      // open markings
  std::vector<FixedSpace> fixed;      // per open marking
  std::vector<std::size_t> y_offset;  // first y coordinate of each open marking
  ScalarMatrix z_raw;                 // y x raw
  ScalarMatrix z;                     // y x A
  RingPtr a_ring;
  RingPtr y_ring;
  FreeComplex complex;  // [A -> B] in degrees 0, 1 over a point
  std::map<int, std::size_t> homology;
  std::map<int, std::size_t> oracle;
};

/// Builds [A -> B] with A = H^0(V(D)) and B the jets along D, glued at the
/// nodes through J^{1/2}. Checks homology against the Cech oracle and that Z
/// is surjective.
TwoTermModel two_term_realization(const SpinCurveSpec& spec);

/// Sum of W restricted to each V^{gamma_i}, over the y coordinates.
Poly restricted_potential(const SpinCurveSpec& spec, const TwoTermModel& model);

struct ResidueReport {
  std::vector<LineBundlePair> pairs;           // [omega^log, Sigma] per component
  std::vector<CommutationCertificate> kernel;  // ker(Res) computes omega
  std::vector<std::map<int, std::size_t>> rj_ranks;
  bool residue_theorem = false;  // random sections of omega^log(D)
  bool triangle = false;         // tr o connecting map = summation
  bool compatibility = false;    // Res_p(W(s) eta) = W_i(Z_i s)
  std::string detail;
  bool passed() const { return residue_theorem && triangle && compatibility; }
};

/// Checks the pole structure of eta and the residue diagram on each component.
/// The connecting map of 0 -> omega -> omega^log -> O_Sigma -> 0 is read
/// through the trace tr = -(sum of residues along D), so that tr o d = t.
ResidueReport residue_structure(const SpinCurveSpec& spec, const TwoTermModel& model, unsigned samples = 30,
                                unsigned seed = 1);

struct Obstruction {
  DgSchemePresentation scheme;  // O_X for X = [A -> B]
  DgFunction c;                 // Z^*(sum W_i), degree 0
  SymPowerComplex sym;          // weight-d piece of S(A -> B)
  FreeComplex target;           // (+)_i S(V^{gamma_i})_d in degree 0
  ChainMap restriction;         // S(Z)_d
  FreeComplex k;                // Cone(S(Z)_d)[-1]
  FreeComplex e;                // kernel of S(Z)_d as a subcomplex
};

Obstruction build_obstruction(const SpinCurveSpec& spec, const TwoTermModel& model);

/// Degree -1 solution of d(f) = -c, verified exactly.
DgFunction solve_f_minus_one(const DgSchemePresentation& x, const DgFunction& c, int d,
                             PivotOrder order = PivotOrder::forward);

struct FundamentalResult {
  TwoTermModel model;
  Obstruction obstruction;
  DgFunction f_minus_one;
  /// Fold of (O_X, d - f_{-1}) over tot(A); potential Z^*(sum W_i).
  MatrixFactorization over_a;
  /// Over prod V^{gamma_i} when the slice reduction applies, else over_a.
  MatrixFactorization mf;
  bool over_product = false;
  std::vector<std::size_t> slice;  // jets whose linear forms become coordinates
  ScalarMatrix splitting;          // u = splitting (y, l_slice)
  Poly restricted;                 // sum W_i over the y coordinates
};

FundamentalResult fundamental_mf(const SpinCurveSpec& spec, PivotOrder order = PivotOrder::forward);

/// Nonzero points of prod V^{gamma_i} with small integer coordinates.
std::vector<std::vector<Scalar>> sample_points(const RingPtr& ring, std::size_t count, unsigned seed);

struct GlueCertificate {
  bool cartesian = false;
  bool potential_match = false;
  std::optional<std::vector<Scalar>> counterexample;
  MatrixFactorization pulled_back;
  FundamentalResult glued;
  /// Over tot(A_glued): "identified" when the pulled-back f_{-1} equals the
  /// glued one, "gauge-identified" when they differ by d(h) (intertwiner in
  /// `gauge`). Otherwise over the marking coordinates: "identified" when
  /// bit-equal, "consistent" when support verdicts agree on the samples,
  /// else "unresolved".
  std::string identification;
  std::optional<GaugeIntertwiner> gauge;
  std::string detail;
  bool passed() const { return cartesian && potential_match; }
};

GlueCertificate twisted_diagonal_glue(const SpinCurveSpec& disconnected, const SpinCurveSpec& glued,
                                      unsigned points = 5, unsigned seed = 1);

struct EquivarianceEntry {
  std::string name;
  bool central = false;
  bool passed = false;
  std::string detail;
  std::optional<ScalarMatrix> commutator;  // witness g h - h g
};

struct EquivarianceReport {
  std::vector<EquivarianceEntry> entries;
  bool passed() const;
};

/// Action of g on prod V^{gamma_i}; requires g to commute with every gamma_i.
ScalarMatrix action_on_markings(const FundamentalResult& r, const SpinCurveSpec& spec, const GroupElement& g);

/// Constant invertible (E0, E1) with (g^* delta) E = E delta, if any.
std::optional<std::pair<ScalarMatrix, ScalarMatrix>> intertwiner(const MatrixFactorization& m, const ScalarMatrix& action);

/// Checks every group generator and J; elements in `claimed_central` must
/// commute with all generators or a commutator witness is reported.
EquivarianceReport check_equivariance(const SpinCurveSpec& spec, const FundamentalResult& r,
                                      const std::vector<GroupElement>& claimed_central = {});

/// Replace the rigidification at `marking` by epsilon * R.
SpinCurveSpec change_rigidification(const SpinCurveSpec& spec, std::size_t marking, const GroupElement& epsilon);

/// Reruns the pipeline after the change and compares with the transported
/// original, bit-exactly.
bool rigidification_transport(const SpinCurveSpec& spec, std::size_t marking, const GroupElement& epsilon,
                              std::string* detail = nullptr);

}  // namespace mfc::spin
