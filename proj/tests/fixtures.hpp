#pragma once

// Divisors and maps shared by the test suites.

#include <string>
#include <vector>

#include "logforms/algebra/text.hpp"
#include "logforms/deformation/ae.hpp"
#include "logforms/deformation/milnor.hpp"

namespace fx {

using namespace logforms;

inline std::vector<std::string> names(const char* prefix, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

inline Divisor divisor(const std::string& h, const std::vector<std::string>& vars,
                       std::optional<Weights> w = std::nullopt) {
  return make_divisor(vars, parse_poly(h, vars), std::move(w));
}

struct Certified {
  Divisor d;
  LogBasis basis;
};

inline Certified certify(Divisor d) {
  auto v = is_free(d);
  if (v.kind != FreenessVerdict::Kind::Free) throw InvariantError("fixture divisor is not free");
  return {std::move(d), std::move(*v.basis)};
}

/// The four coordinate hyperplanes y1 y2 y3 y4 = 0 in C^4.
inline Certified normal_crossing4() { return certify(divisor("y1*y2*y3*y4", names("y", 4))); }

inline InducingMap map_of(const std::vector<std::string>& src, const std::vector<std::string>& tgt,
                          const std::vector<std::string>& comps) {
  InducingMap m{src, tgt, {}};
  for (const auto& c : comps) m.components.push_back(parse_poly(c, src));
  return m;
}

/// Four generic planes through the origin of C^3, as an almost free divisor.
inline InducingMap four_planes() {
  return map_of({"x1", "x2", "x3"}, names("y", 4), {"x1", "x2", "x3", "x1+x2+x3"});
}

/// A one-parameter deformation of four_planes() that frees it.
inline InducingMap four_planes_family() {
  return map_of({"x1", "x2", "x3", "s"}, names("y", 4), {"x1", "x2", "x3", "x1+x2+x3-s"});
}

/// Normal crossings y1 y2 y3 = 0 in C^3.
inline Certified normal_crossing3() { return certify(divisor("y1*y2*y3", names("y", 3))); }

inline DeformationSetup setup(const Certified& e, const InducingMap& m, std::size_t ds, std::size_t dt,
                              std::optional<Weights> w) {
  return make_setup(e.d, e.basis, m, ds, dt, std::move(w));
}

/// four_planes_family() as a one-parameter deformation.
inline DeformationSetup four_planes_setup() {
  return setup(normal_crossing4(), four_planes_family(), 1, 0, Weights{1, 1, 1, 1});
}

/// Four lines through 0 in C^2 pulled back from normal crossings in C^4,
/// i(x,y,s,t) = (x, y, x+y+s, x-y+2s+t), with ds deformation parameters and
/// the remaining one as free extension.
inline DeformationSetup four_lines_setup(std::size_t ds) {
  auto m = map_of({"x", "y", "s", "t"}, names("y", 4), {"x", "y", "x+y+s", "x-y+2*s+t"});
  return setup(normal_crossing4(), m, ds, 2 - ds, Weights{1, 1, 1, 1});
}

/// Three lines x y (x+y) in C^2 freed by (x, y, x+y-s).
inline DeformationSetup three_lines_setup() {
  auto m = map_of({"x", "y", "s"}, names("y", 3), {"x", "y", "x+y-s"});
  return setup(normal_crossing3(), m, 1, 0, Weights{1, 1, 1});
}

/// A product family: the free divisor xy = 0 times a parameter line.
inline DeformationSetup product_setup() {
  auto e = certify(divisor("y1*y2", names("y", 2)));
  return setup(e, map_of({"x", "y", "s"}, names("y", 2), {"x", "y"}), 1, 0, Weights{1, 1, 1});
}

inline Certified calderon() { return certify(divisor("x*y*(x-y)*(x+l*y)", {"x", "y", "l"})); }

/// Calderón's divisor fibred over l.
inline DeformationSetup calderon_setup() {
  auto e = calderon();
  return setup(e, map_of({"x", "y", "l"}, {"x", "y", "l"}, {"x", "y", "l"}), 1, 0, Weights{1, 1, 0});
}

/// Lips f0(x,y) = (x, y^3 + x^2 y), pulled back from the stable unfolding
/// F(x,u,y) = (x, u, y^3 + x^2 y + u y) along i0(X,W) = (X, 0, W).
inline DamonInput lips() {
  std::vector<std::string> t{"X", "U", "W"};
  auto disc = certify(divisor("4*(U+X^2)^3+27*W^2", t, Weights{1, 2, 3}));
  return {disc.d, disc.basis, map_of({"X", "W"}, t, {"X", "0", "W"}),
          map_of({"x", "u", "y"}, t, {"x", "u", "y^3+x^2*y+u*y"}), Weights{1, 3}};
}

inline InducingMap lips_germ() { return map_of({"x", "y"}, {"X", "W"}, {"x", "y^3+x^2*y"}); }

/// The fold (x, y^2), its own stable unfolding, with discriminant W = 0.
inline DamonInput fold() {
  std::vector<std::string> t{"X", "W"};
  auto disc = certify(divisor("W", t, Weights{1, 2}));
  return {disc.d, disc.basis, map_of(t, t, {"X", "W"}), map_of({"x", "y"}, t, {"x", "y^2"}), Weights{1, 2}};
}

}  // namespace fx
