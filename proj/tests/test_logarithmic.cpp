#include <gtest/gtest.h>

#include "logforms/algebra/text.hpp"
#include "logforms/logarithmic/log_forms.hpp"
#include "oracles.hpp"

using namespace logforms;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kXYL{"x", "y", "l"};

Divisor D(const std::string& h, const std::vector<std::string>& vars,
          std::optional<Weights> w = std::nullopt) {
  return make_divisor(vars, parse_poly(h, vars), std::move(w));
}

std::vector<std::string> zvars(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("z" + std::to_string(i));
  return v;
}

// z_1 ... z_p in C^n.
Divisor normal_crossing(std::size_t p, std::size_t n) {
  Poly h = Poly::constant(n, 1);
  for (std::size_t i = 0; i < p; ++i) h *= Poly::variable(n, i);
  return make_divisor(zvars(n), h);
}

GroebnerBasis span_of(const std::vector<FreeElement>& gens, std::size_t rank, std::size_t n) {
  return groebner_basis(gens, MonomialOrder::degrevlex(n), rank, n);
}

bool same_module(const std::vector<FreeElement>& a, const std::vector<FreeElement>& b,
                 std::size_t rank, std::size_t n) {
  return same_submodule(a, b, rank, n, MonomialOrder::degrevlex(n));
}

std::vector<Divisor> free_corpus() {
  return {D("x*y*z", kXYZ), D("x*y", kXY), D("x", kXY), D("x*y*(x-y)*(x+l*y)", kXYL),
          D("4*x^3+27*y^2", kXY, Weights{2, 3}), normal_crossing(2, 4)};
}

}  // namespace

TEST(Divisor, RejectsRepeatedFactor) {
  EXPECT_THROW(D("x^2*y", kXY), PreconditionError);
  EXPECT_THROW(D("(x+y)^2*(x-y)", kXY), PreconditionError);
  EXPECT_NO_THROW(D("x*y*(x+y)", kXY));
  EXPECT_THROW(D("1", kXY), PreconditionError);
}

TEST(Divisor, RejectsInconsistentWeights) {
  EXPECT_THROW(D("x*y", kXY, Weights{1, 0}), PreconditionError);
  EXPECT_THROW(D("x+y^2", kXY, Weights{1, 1}), PreconditionError);
}

TEST(Derlog, ContainsCoordinateEulerFields) {
  auto d = D("x*y*z", kXYZ);
  auto gb = span_of(fields_of(derlog(d)), 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_TRUE(gb.contains(Poly::variable(3, i) * FreeElement::unit(3, 3, i)));
}

TEST(Derlog, WitnessesAreExact) {
  for (const auto& d : free_corpus())
    for (const auto& f : derlog(d)) EXPECT_EQ(apply_field(f.field, d.h), f.witness * d.h);
}

TEST(Derlog, ContainsTrivialAndHamiltonianFields) {
  auto corpus = free_corpus();
  corpus.push_back(D("x*y*z*(x+y+z)", kXYZ));
  for (const auto& d : corpus) {
    std::size_t n = d.nvars();
    auto gb = span_of(fields_of(derlog(d)), n, n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_TRUE(gb.contains(d.h * FreeElement::unit(n, n, i)));
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        FreeElement ham(n, n);
        ham[i] = d.h.derivative(j);
        ham[j] = -d.h.derivative(i);
        EXPECT_TRUE(gb.contains(ham));
      }
    }
  }
}

TEST(Derlog, GeneratesDenseLogarithmicPieces) {
  // Every field found by the dense solver lies in the module of derlog.
  Weights w{1, 1, 1};
  for (const char* h : {"x*y*z", "x*y*z*(x+y+z)"}) {
    auto d = D(h, kXYZ);
    auto gb = span_of(fields_of(derlog(d)), 3, 3);
    for (long e = -1; e <= 3; ++e)
      for (const auto& chi : oracle::derlog_piece(d.h, w, e)) EXPECT_TRUE(gb.contains(chi)) << h;
  }
}

TEST(DerlogH, Examples) {
  auto smooth = D("x", kXY);
  EXPECT_TRUE(span_of(derlog_h(smooth), 2, 2).contains(FreeElement::unit(2, 2, 1)));
  auto xy = D("x*y", kXY);
  auto gens = derlog_h(xy);
  std::vector<FreeElement> expect{FreeElement(std::vector<Poly>{parse_poly("x", kXY), parse_poly("-y", kXY)})};
  EXPECT_TRUE(same_module(gens, expect, 2, 2));
}

TEST(DerlogH, WeightedHomogeneousSplitting) {
  struct Case {
    Divisor d;
    Weights w;
  };
  std::vector<Case> cases{{D("x*y*z", kXYZ), {1, 1, 1}},
                          {D("4*x^3+27*y^2", kXY), {2, 3}},
                          {D("x*y*z*(x+y+z)", kXYZ), {1, 1, 1}}};
  for (auto& c : cases) {
    std::size_t n = c.d.nvars();
    auto rhs = derlog_h(c.d);
    rhs.push_back(euler_field(c.w));
    EXPECT_TRUE(same_module(fields_of(derlog(c.d)), rhs, n, n));
  }
}

TEST(EulerField, Examples) {
  auto e = euler_field({1, 1, 1});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(e[i], Poly::variable(3, i));
  auto d = D("4*x^3+27*y^2", kXY);
  EXPECT_EQ(apply_field(euler_field({2, 3}), d.h), Rational(6) * d.h);
  EXPECT_THROW(euler_field({1, 1, 0}), PreconditionError);
}

TEST(Saito, DiagonalBasisOfNormalCrossing) {
  auto d = D("x*y*z", kXYZ);
  std::vector<FreeElement> diag;
  for (std::size_t i = 0; i < 3; ++i) diag.push_back(Poly::variable(3, i) * FreeElement::unit(3, 3, i));
  auto r = saito_check(d, diag);
  ASSERT_TRUE(r.basis);
  EXPECT_EQ(r.basis->unit, Rational(1));
}

TEST(Saito, NoTripleCertifiesGenericArrangement) {
  auto d = D("x*y*z*(x+y+z)", kXYZ);
  auto gens = fields_of(derlog(d));
  ASSERT_GE(gens.size(), 3u);
  for (const auto& idx : subsets(gens.size(), 3)) {
    std::vector<FreeElement> cand{gens[idx[0]], gens[idx[1]], gens[idx[2]]};
    EXPECT_FALSE(saito_check(d, cand).basis);
  }
}

TEST(Saito, ReportsNonLogarithmicField) {
  auto d = D("x*y", kXY);
  std::vector<FreeElement> cand{FreeElement::unit(2, 2, 0), Poly::variable(2, 1) * FreeElement::unit(2, 2, 1)};
  auto r = saito_check(d, cand);
  EXPECT_FALSE(r.basis);
  EXPECT_NE(r.reason.find("not logarithmic"), std::string::npos);
}

TEST(Saito, CertificationIsIdempotent) {
  for (const auto& d : free_corpus()) {
    auto v = is_free(d);
    ASSERT_EQ(v.kind, FreenessVerdict::Kind::Free) << format_poly(d.h, d.vars);
    auto again = saito_check(d, v.basis->theta);
    ASSERT_TRUE(again.basis);
    EXPECT_EQ(again.basis->unit, v.basis->unit);
  }
}

TEST(IsFree, NormalCrossingIsFree) {
  auto v = is_free(D("x*y*z", kXYZ));
  ASSERT_EQ(v.kind, FreenessVerdict::Kind::Free);
  EXPECT_EQ(v.generator_count, 3u);
  EXPECT_EQ(determinant(v.basis->theta, 3), v.basis->unit * parse_poly("x*y*z", kXYZ));
}

TEST(IsFree, GenericFourPlanesAreNotFree) {
  auto d = D("x*y*z*(x+y+z)", kXYZ);
  auto v = is_free(d);
  EXPECT_EQ(v.kind, FreenessVerdict::Kind::NotFree);
  EXPECT_GT(v.generator_count, 3u);
  // Generators of h·∂_i sit in degree 3, so degree 4 bounds all minimal ones.
  EXPECT_EQ(v.generator_count, oracle::derlog_minimal_count(d.h, {1, 1, 1}, 4));
}

TEST(IsFree, MinimalCountMatchesDenseOracle) {
  for (const char* h : {"x*y*z", "x*y*(x+y)", "x*y*(x-y)*(x+2*y)"}) {
    auto vars = std::string(h).find('z') != std::string::npos ? kXYZ : kXY;
    auto d = D(h, vars);
    auto v = is_free(d);
    EXPECT_EQ(v.generator_count, oracle::derlog_minimal_count(d.h, Weights(vars.size(), 1), 5)) << h;
  }
}

TEST(IsFree, CalderonIsFree) {
  auto d = D("x*y*(x-y)*(x+l*y)", kXYL);
  auto v = is_free(d);
  ASSERT_EQ(v.kind, FreenessVerdict::Kind::Free) << v.reason;
  EXPECT_FALSE(v.graded);
  EXPECT_EQ(determinant(v.basis->theta, 3), v.basis->unit * d.h);
}

TEST(HLogForms, ExtremeDegrees) {
  for (const auto& d : free_corpus()) {
    auto b = *is_free(d).basis;
    std::size_t n = d.nvars();
    auto g0 = h_log_forms(b, 0);
    ASSERT_EQ(g0.size(), 1u);
    EXPECT_EQ(g0[0][0], d.h);
    auto gn = h_log_forms(b, n);
    ASSERT_EQ(gn.size(), 1u);
    EXPECT_TRUE(gn[0][0].is_constant() && !gn[0][0].is_zero());
    EXPECT_THROW(h_log_forms(b, n + 1), PreconditionError);
  }
}

TEST(HLogForms, NormalCrossingGenerators) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t p = 1; p <= n; ++p) {
      auto d = normal_crossing(p, n);
      auto b = *is_free(d).basis;
      ExteriorAlgebra ext(n);
      for (std::size_t k = 0; k <= n; ++k) {
        std::vector<FreeElement> expect;
        for (auto mask : ext.basis(k)) {
          Poly zj = Poly::constant(n, 1);
          for (std::size_t i = 0; i < p; ++i)
            if (!(mask >> i & 1u)) zj *= Poly::variable(n, i);
          expect.push_back(zj * ext.basis_form(mask));
        }
        EXPECT_TRUE(same_module(h_log_forms(b, k), expect, ext.rank(k), n))
            << "p=" << p << " n=" << n << " k=" << k;
      }
    }
}

TEST(HLogForms, PairingGate) {
  for (const auto& d : free_corpus()) {
    auto b = *is_free(d).basis;
    EXPECT_TRUE(pairing_gate(d, b)) << format_poly(d.h, d.vars);
  }
}

TEST(HLogForms, ClosedUnderLogarithmicDerivative) {
  for (const auto& d : free_corpus()) {
    auto b = *is_free(d).basis;
    std::size_t n = d.nvars();
    ExteriorAlgebra ext(n);
    auto dh = ext.differential(d.h);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<FreeElement> next;
      for (const auto& g : h_log_forms(b, k + 1)) next.push_back(d.h * g);
      auto gb = span_of(next, ext.rank(k + 1), n);
      for (const auto& g : h_log_forms(b, k))
        EXPECT_TRUE(gb.contains(d.h * ext.d(g, k) - ext.wedge(dh, 1, g, k)));
    }
  }
}

TEST(HLogForms, ContractionByLogarithmicFields) {
  for (const auto& d : free_corpus()) {
    auto b = *is_free(d).basis;
    std::size_t n = d.nvars();
    ExteriorAlgebra ext(n);
    auto fields = fields_of(derlog(d));
    for (std::size_t k = 1; k <= n; ++k) {
      auto gb = span_of(h_log_forms(b, k - 1), ext.rank(k - 1), n);
      for (const auto& g : h_log_forms(b, k))
        for (const auto& xi : fields) EXPECT_TRUE(gb.contains(ext.contract(xi, g, k)));
    }
  }
}

TEST(Exterior, WedgeAndContractionBasics) {
  ExteriorAlgebra ext(2);
  auto dxdy = ext.wedge(ext.dx(0), 1, ext.dx(1), 1);
  auto dydx = ext.wedge(ext.dx(1), 1, ext.dx(0), 1);
  EXPECT_EQ(dxdy[0], Poly::constant(2, 1));
  EXPECT_EQ(dydx[0], Poly::constant(2, -1));
  FreeElement xdx = Poly::variable(2, 0) * FreeElement::unit(2, 2, 0);
  auto r = ext.contract(xdx, dxdy, 2);
  EXPECT_EQ(r[0], Poly(2));
  EXPECT_EQ(r[1], Poly::variable(2, 0));
}

TEST(Exterior, DSquaredIsZero) {
  ExteriorAlgebra ext(3);
  Poly f = parse_poly("x^2*y*z + 3*y^3 - x*z", kXYZ);
  FreeElement w = ext.zero(1);
  w[0] = f;
  w[1] = parse_poly("x*y^2", kXYZ);
  w[2] = parse_poly("z^3*x", kXYZ);
  EXPECT_TRUE(ext.d(ext.d(w, 1), 2).is_zero());
  EXPECT_TRUE(ext.d(ext.differential(f), 1).is_zero());
}

TEST(Exterior, CartanFormula) {
  // L_χ ω = d ι_χ ω + ι_χ dω; for the Euler field on a monomial form of
  // weighted degree ℓ this is ℓ·ω.
  ExteriorAlgebra ext(3);
  Weights w{1, 2, 3};
  auto chi = euler_field(w);
  FreeElement om = parse_poly("x^2*y", kXYZ) * ext.wedge(ext.dx(0), 1, ext.dx(2), 1);
  long ell = 2 + 2 + 1 + 3;
  auto lie = ext.d(ext.contract(chi, om, 2), 1) + ext.contract(chi, ext.d(om, 2), 3);
  EXPECT_EQ(lie, Rational(ell) * om);
}

TEST(Exterior, PullbackCommutesWithD) {
  ExteriorAlgebra src(2), tgt(3);
  std::vector<Poly> phi{parse_poly("x", kXY), parse_poly("x*y", kXY), parse_poly("y^2+x", kXY)};
  FreeElement w = tgt.zero(1);
  w[0] = parse_poly("y*z", kXYZ);
  w[2] = parse_poly("x^2", kXYZ);
  auto lhs = src.d(tgt.pullback(w, 1, phi, src), 1);
  auto rhs = tgt.pullback(tgt.d(w, 1), 2, phi, src);
  EXPECT_EQ(lhs, rhs);
}
