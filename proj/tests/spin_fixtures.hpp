#pragma once

// Spin-curve configurations used by the unit and acceptance suites.

#include "mfc/p1.hpp"
#include "mfc/parse.hpp"
#include "mfc/spin.hpp"

namespace mfc::testing {

inline ScalarMatrix scalar_1x1(const Scalar& s) { return ScalarMatrix(std::vector<std::vector<Scalar>>{{s}}); }

inline p1::Divisor point_divisor(const p1::Point& p, int m) {
  p1::Divisor d;
  d.add(p, m);
  return d;
}

/// W = x^2 over Q(zeta_4), one P^1 with markings 0 and infinity (gamma = 1),
/// L = O, eta = dt/t, rigidification 1 at 0 and zeta_4 at infinity, D = [1].
inline spin::SpinCurveSpec r2_two_point(int extra_d_points = 0) {
  auto field = CyclotomicField::make(4);
  auto ring = make_ring(field, {"x"}, {1});
  spin::SpinCurveSpec s;
  s.field = field;
  s.ring = ring;
  s.w = parse_poly("x^2", ring);
  s.d = 2;
  const Scalar z = Scalar::zeta(field);
  GroupElement j(scalar_1x1(Scalar(-1)), field);
  s.group = {j};
  s.j = j;
  s.j_sqrt = GroupElement(scalar_1x1(z), field);
  spin::Component c;
  c.name = "C";
  c.bundle = {p1::Divisor{}};
  c.d = point_divisor(p1::Point::finite(Scalar(1)), 1);
  for (int k = 0; k < extra_d_points; ++k) c.d.add(p1::Point::finite(Scalar(2 + k)), 1);
  c.eta = p1::parse_rational("1/t", field);
  s.components = {c};
  GroupElement one(scalar_1x1(Scalar(1)), field);
  s.markings.push_back({"p1", 0, p1::Point::finite(Scalar(0)), one, scalar_1x1(Scalar(1))});
  s.markings.push_back({"p2", 0, p1::Point::infinity(), one, scalar_1x1(z)});
  return s;
}

/// W = x^3 over Q(zeta_3), markings 0, 1, -1 with gamma = J, J, J^2,
/// L = O(-inf), eta = dt / (t (t^2 - 1)), D empty.
inline spin::SpinCurveSpec narrow_three_point() {
  auto field = CyclotomicField::make(3);
  auto ring = make_ring(field, {"x"}, {1});
  spin::SpinCurveSpec s;
  s.field = field;
  s.ring = ring;
  s.w = parse_poly("x^3", ring);
  s.d = 3;
  const Scalar z = Scalar::zeta(field);
  GroupElement j(scalar_1x1(z), field);
  GroupElement j2(scalar_1x1(z * z), field);
  s.group = {j};
  s.j = j;
  spin::Component c;
  c.name = "C";
  c.bundle = {point_divisor(p1::Point::infinity(), -1)};
  c.eta = p1::parse_rational("1/(t^3 - t)", field);
  s.components = {c};
  const ScalarMatrix id = scalar_1x1(Scalar(1));
  s.markings.push_back({"p1", 0, p1::Point::finite(Scalar(0)), j, id});
  s.markings.push_back({"p2", 0, p1::Point::finite(Scalar(1)), j, id});
  s.markings.push_back({"p3", 0, p1::Point::finite(Scalar(-1)), j2, id});
  return s;
}

/// Two copies of the two-point r = 2 component; glued = second marking of the
/// first copy joined to the first marking of the second.
inline spin::SpinCurveSpec r2_cylinder_pair(bool glued) {
  auto s = r2_two_point();
  auto c2 = s.components[0];
  c2.name = "C2";
  s.components[0].name = "C1";
  s.components.push_back(c2);
  auto m3 = s.markings[0];
  auto m4 = s.markings[1];
  m3.name = "p3";
  m4.name = "p4";
  m3.component = m4.component = 1;
  s.markings.push_back(m3);
  s.markings.push_back(m4);
  if (glued) s.nodes.push_back({1, 2});
  return s;
}

/// Bare two-term data: one component with V = O(a) and the given D, no markings.
inline spin::SpinCurveSpec bare_line_bundle(int a, int d_points) {
  auto ring = make_ring(nullptr, {"x"}, {1});
  spin::SpinCurveSpec s;
  s.ring = ring;
  s.w = parse_poly("x^2", ring);
  s.d = 2;
  spin::Component c;
  c.name = "C";
  c.bundle = {point_divisor(p1::Point::infinity(), a)};
  for (int k = 0; k < d_points; ++k) c.d.add(p1::Point::finite(Scalar(k + 1)), 1);
  c.eta = p1::parse_rational("1", nullptr);
  s.components = {c};
  return s;
}

}  // namespace mfc::testing
