#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "logforms/forms/derham.hpp"
#include "logforms/forms/wedge.hpp"
#include "oracles.hpp"

using namespace logforms;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kXYL{"x", "y", "l"};

std::vector<fx::Certified> free_corpus() {
  return {fx::certify(fx::divisor("x*y", kXY)), fx::certify(fx::divisor("x*y*z", kXYZ)),
          fx::certify(fx::divisor("x", kXY)), fx::certify(fx::divisor("4*x^3+27*y^2", kXY)),
          fx::certify(fx::divisor("x*y*(x-y)*(x+l*y)", kXYL))};
}

std::vector<fx::Certified> singular_free_corpus() {
  auto all = free_corpus();
  all.erase(all.begin() + 2);  // the smooth one
  return all;
}

CheckedFormsModule four_planes(std::size_t k) {
  auto e = fx::normal_crossing4();
  return omega_pullback(e.d, e.basis, fx::four_planes(), 3, k, Weights{1, 1, 1});
}

std::vector<std::vector<FreeElement>> free_complex(const fx::Certified& c) {
  return complex_relations(c.d.nvars(), [&](std::size_t k) { return omega_free(c.d, c.basis, k); });
}

std::vector<std::vector<FreeElement>> four_planes_complex() {
  return complex_relations(3, four_planes);
}

}  // namespace

TEST(OmegaCheck, DegreeZeroIsFunctionsOnD) {
  for (const auto& c : free_corpus()) {
    auto m = omega_free(c.d, c.basis, 0);
    ASSERT_EQ(m.presentation.rank, 1u);
    ASSERT_EQ(m.presentation.relations.size(), 1u);
    EXPECT_EQ(m.presentation.relations[0][0], c.d.h);
  }
}

TEST(OmegaCheck, TopDegreeVanishesOnFreeDivisors) {
  for (const auto& c : free_corpus()) {
    auto m = omega_free(c.d, c.basis, c.d.nvars());
    EXPECT_EQ(quotient_dimension(m.basis()), Dimension::finite(0));
  }
}

TEST(OmegaCheck, SmoothDivisorDegreeOne) {
  auto c = fx::certify(fx::divisor("x", kXY));
  auto m = omega_free(c.d, c.basis, 1);
  std::vector<FreeElement> expect{FreeElement(std::vector<Poly>{Poly::constant(2, 1), Poly(2)}),
                                  FreeElement(std::vector<Poly>{Poly(2), Poly::variable(2, 0)})};
  EXPECT_TRUE(same_submodule(m.presentation.relations, expect, 2, 2, MonomialOrder::degrevlex(2)));
}

TEST(OmegaCheck, RelationsAreHomogeneous) {
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_NO_THROW(four_planes(k).presentation.validate());
  auto c = fx::certify(fx::divisor("4*x^3+27*y^2", kXY));
  for (std::size_t k = 0; k <= 2; ++k) EXPECT_TRUE(omega_free(c.d, c.basis, k).presentation.grading);
}

TEST(OmegaCheck, SliceDimensionsMatchDenseOracle) {
  auto c = fx::certify(fx::divisor("x*y*z", kXYZ));
  for (std::size_t k = 0; k <= 3; ++k) {
    auto m = omega_free(c.d, c.basis, k);
    auto table = graded_table(m, 0, 6);
    for (long d = 0; d <= 6; ++d)
      EXPECT_EQ(table[d], oracle::quotient_dim_in_degree(m.presentation.relations, m.presentation.rank, 3,
                                                         *m.presentation.grading, d));
  }
  for (std::size_t k = 0; k <= 3; ++k) {
    auto m = four_planes(k);
    auto table = graded_table(m, 0, 6);
    for (long d = 0; d <= 6; ++d)
      EXPECT_EQ(table[d], oracle::quotient_dim_in_degree(m.presentation.relations, m.presentation.rank, 3,
                                                         *m.presentation.grading, d));
  }
}

TEST(OmegaCheck, MissingCertificateIsRejected) {
  auto d = fx::divisor("x*y", kXY);
  EXPECT_THROW(omega_free(d, LogBasis{}, 1), PreconditionError);
}

TEST(PdCheck, RelationModulesAreFree) {
  for (const auto& c : free_corpus())
    for (std::size_t k = 0; k <= c.d.nvars(); ++k)
      EXPECT_TRUE(pd_check(omega_free(c.d, c.basis, k))) << format_poly(c.d.h, c.d.vars) << " k=" << k;
}

TEST(PdCheck, KahlerRelationsHaveSyzygies) {
  // Sanity check that the test can fail: h·dx and dh∧... are dependent.
  auto c = fx::certify(fx::divisor("x*y", kXY));
  EXPECT_FALSE(syzygy_module(kahler_relations(c.d.h, 1)).empty());
}

TEST(Contract, CoordinateExample) {
  auto c = fx::certify(fx::divisor("x*y", kXY));
  auto m = omega_free(c.d, c.basis, 2);
  FreeElement chi = Poly::variable(2, 0) * FreeElement::unit(2, 2, 0);
  ExteriorAlgebra ext(2);
  auto r = contract(m, chi, ext.volume());
  EXPECT_EQ(r, Poly::variable(2, 0) * ext.dx(1));
}

TEST(Contract, RejectsNonLogarithmicField) {
  auto c = fx::certify(fx::divisor("x*y", kXY));
  auto m = omega_free(c.d, c.basis, 1);
  EXPECT_THROW(contract(m, FreeElement::unit(2, 2, 0), ExteriorAlgebra(2).dx(0)), PreconditionError);
}

TEST(Contract, RelationsContractIntoRelations) {
  for (const auto& c : free_corpus()) {
    auto fields = fields_of(derlog(c.d));
    for (std::size_t k = 1; k <= c.d.nvars(); ++k) {
      auto m = omega_free(c.d, c.basis, k);
      auto lower = omega_free(c.d, c.basis, k - 1).basis();
      for (const auto& r : m.presentation.relations)
        for (const auto& chi : fields) EXPECT_TRUE(lower.contains(contract(m, chi, r)));
    }
  }
  // Almost free case: fields of Der(log D0) for the four planes.
  auto d0 = fx::divisor("x1*x2*x3*(x1+x2+x3)", {"x1", "x2", "x3"});
  auto fields = fields_of(derlog(d0));
  for (std::size_t k = 1; k <= 3; ++k) {
    auto m = four_planes(k);
    auto lower = four_planes(k - 1).basis();
    for (const auto& r : m.presentation.relations)
      for (const auto& chi : fields) EXPECT_TRUE(lower.contains(contract(m, chi, r)));
  }
}

TEST(Kahler, StrictlySmallerThanLogarithmicRelations) {
  for (const auto& c : singular_free_corpus())
    for (std::size_t k = 1; k <= c.d.nvars(); ++k) {
      auto kahler = groebner_basis(kahler_relations(c.d.h, k), MonomialOrder::degrevlex(c.d.nvars()),
                                   ExteriorAlgebra(c.d.nvars()).rank(k), c.d.nvars());
      auto log = h_log_forms(c.basis, k);
      EXPECT_TRUE(kahler.contains_all(kahler_relations(c.d.h, k)));
      bool some_outside = false;
      for (const auto& g : log) some_outside = some_outside || !kahler.contains(g);
      EXPECT_TRUE(some_outside) << format_poly(c.d.h, c.d.vars) << " k=" << k;
      // And the inclusion itself.
      auto lg = groebner_basis(log, MonomialOrder::degrevlex(c.d.nvars()), ExteriorAlgebra(c.d.nvars()).rank(k),
                               c.d.nvars());
      EXPECT_TRUE(lg.contains_all(kahler_relations(c.d.h, k)));
    }
}

TEST(Kahler, SmoothDivisorHasNoGap) {
  auto c = fx::certify(fx::divisor("x", kXY));
  for (std::size_t k = 0; k <= 2; ++k)
    EXPECT_TRUE(same_submodule(kahler_relations(c.d.h, k), h_log_forms(c.basis, k), ExteriorAlgebra(2).rank(k), 2,
                               MonomialOrder::degrevlex(2)));
}

TEST(Pairing, FormsEmbedIntoDualOfLogarithmicFields) {
  // ω ↦ (⟨ω, ξ_j⟩)_j identifies Ω̌^1_D with the image of Θ^T in O_D^n.
  for (const char* h : {"x*y", "x*y*z", "4*x^3+27*y^2", "x*y*(x+y)"}) {
    auto vars = std::string(h).find('z') != std::string::npos ? kXYZ : kXY;
    auto c = fx::certify(fx::divisor(h, vars));
    std::size_t n = vars.size();
    auto w = *effective_weights(c.d);
    auto omega1 = omega_free(c.d, c.basis, 1);
    Grading target{w, {}};
    for (std::size_t j = 0; j < n; ++j) target.shifts.push_back(-*field_grading(w).homogeneous_degree(c.basis.theta[j]));
    std::vector<FreeElement> coker, hn;
    for (std::size_t i = 0; i < n; ++i) {
      FreeElement row(n, n);
      for (std::size_t j = 0; j < n; ++j) row[j] = c.basis.at(i, j);
      coker.push_back(row);
    }
    for (std::size_t j = 0; j < n; ++j) hn.push_back(c.d.h * FreeElement::unit(n, n, j));
    auto with_h = coker;
    with_h.insert(with_h.end(), hn.begin(), hn.end());
    auto order = MonomialOrder::wdegrevlex(w);
    auto t_coker = hilbert_table(groebner_basis(with_h, order, n, n), target, 0, 8);
    auto t_od = hilbert_table(groebner_basis(hn, order, n, n), target, 0, 8);
    auto t_omega = graded_table(omega1, 0, 8);
    for (long d = 0; d <= 8; ++d) EXPECT_EQ(t_omega[d], t_od[d] - t_coker[d]) << h << " degree " << d;
  }
}

TEST(Torsion, FreeModulesHaveNone) {
  auto smooth = fx::certify(fx::divisor("x", kXY));
  for (std::size_t k = 0; k <= 2; ++k) EXPECT_EQ(torsion_length(omega_free(smooth.d, smooth.basis, k)).length, 0u);
  auto nc = fx::certify(fx::divisor("x*y*z", kXYZ));
  for (std::size_t k = 0; k <= 2; ++k) EXPECT_EQ(torsion_length(omega_free(nc.d, nc.basis, k)).length, 0u);
}

TEST(Torsion, FourPlanesTopDegree) {
  auto m = four_planes(2);
  auto t = torsion_length(m);
  EXPECT_EQ(t.length, 1u);
  // Lower degrees are torsion free.
  EXPECT_EQ(torsion_length(four_planes(1)).length, 0u);
}

TEST(Torsion, EulerContractionIsNonzeroTorsion) {
  auto m = four_planes(2);
  auto t = torsion_length(m);
  ExteriorAlgebra ext(3);
  auto cls = ext.contract(euler_field({1, 1, 1}), ext.volume(), 3);
  auto rep = classify(m, cls, t);
  EXPECT_TRUE(rep.nonzero);
  EXPECT_TRUE(rep.torsion);
  // Its exterior derivative is a nonzero multiple of the volume form.
  EXPECT_EQ(ext.d(cls, 2), Rational(3) * ext.volume());
}

TEST(Torsion, AgreesWithWedgeKernelRoute) {
  // Torsion of Ω̌^2 of the four planes as the kernel of ds∧ from the
  // restricted relative module into Ω̌^3 of the (free) total space mod s.
  auto e = fx::normal_crossing4();
  auto fam = fx::four_planes_family();
  Weights w{1, 1, 1, 1};
  std::vector<std::size_t> s{3};
  auto src = restrict_to_zero(omega_pullback(e.d, e.basis, fam, 3, 2, w), s);
  auto dst = restrict_to_zero(omega_pullback(e.d, e.basis, fam, 4, 3, w), s);
  ExteriorAlgebra full(4);
  auto table = wedge_kernel_table(src, dst, full.dx(3), 1, 0, 8);
  std::size_t total = 0;
  for (const auto& [d, v] : table) total += v;
  EXPECT_EQ(total, torsion_length(four_planes(2)).length);
  EXPECT_EQ(table[7], 0u);
  EXPECT_EQ(table[8], 0u);
}

TEST(Torsion, NonStabilizationIsAnError) {
  EXPECT_THROW(torsion_length(four_planes(2), 0), NonStabilizationError);
}

TEST(SameDiff, RestrictionCommutes) {
  auto e = fx::normal_crossing4();
  auto fam = fx::four_planes_family();
  std::vector<std::size_t> s{3};
  for (std::size_t k = 0; k <= 3; ++k) {
    auto relative = restrict_to_zero(omega_pullback(e.d, e.basis, fam, 3, k, Weights{1, 1, 1, 1}), s);
    auto direct = four_planes(k);
    EXPECT_EQ(graded_table(relative, 0, 8), graded_table(direct, 0, 8)) << "k=" << k;
  }
}

TEST(SameDiff, TransverseFamilyUsesTotalSpaceForms) {
  auto e = fx::normal_crossing4();
  auto fam = fx::four_planes_family();
  auto total = fx::certify(fx::divisor("x1*x2*x3*(x1+x2+x3-s)", fam.source_vars));
  ExteriorAlgebra full(4), kept(3, 4);
  for (std::size_t k = 0; k <= 3; ++k) {
    auto relative = omega_pullback(e.d, e.basis, fam, 3, k, Weights{1, 1, 1, 1});
    std::vector<FreeElement> projected;
    for (const auto& g : h_log_forms(total.basis, k)) projected.push_back(detail::project_forms(g, k, full, kept));
    EXPECT_TRUE(same_submodule(relative.presentation.relations, projected, kept.rank(k), 4,
                               MonomialOrder::degrevlex(4)))
        << "k=" << k;
  }
}

TEST(WedgeInjectivity, BelowCriticalCodimension) {
  // ds∧ : Ω̌^k_{D/S} → Ω̌^{k+1}_D is injective for k ≤ dim D0 = 2.
  auto e = fx::normal_crossing4();
  auto fam = fx::four_planes_family();
  Weights w{1, 1, 1, 1};
  ExteriorAlgebra full(4);
  for (std::size_t k = 0; k <= 2; ++k) {
    auto src = omega_pullback(e.d, e.basis, fam, 3, k, w);
    auto dst = omega_pullback(e.d, e.basis, fam, 4, k + 1, w);
    for (const auto& [d, v] : wedge_kernel_table(src, dst, full.dx(3), 1, 0, 8)) EXPECT_EQ(v, 0u) << k << " " << d;
  }
}

TEST(DeRham, NormalCrossingPlane) {
  auto c = fx::certify(fx::divisor("x*y", kXY));
  SliceComplex cx(free_complex(c), {1, 1}, 8);
  auto rep = de_rham_check(cx, 8);
  EXPECT_TRUE(rep.exact);
  for (const auto& s : rep.slices)
    EXPECT_EQ(s.cohomology, oracle::dense_cohomology(free_complex(c), {1, 1}, s.degree)) << s.degree;
}

TEST(DeRham, SmoothDivisor) {
  auto c = fx::certify(fx::divisor("x", kXY));
  EXPECT_TRUE(de_rham_check(SliceComplex(free_complex(c), {1, 1}, 5), 5).exact);
}

TEST(DeRham, CuspAndNormalCrossingSpace) {
  auto cusp = fx::certify(fx::divisor("4*x^3+27*y^2", kXY));
  EXPECT_TRUE(de_rham_check(SliceComplex(free_complex(cusp), {2, 3}, 10), 10).exact);
  auto nc = fx::certify(fx::divisor("x*y*z", kXYZ));
  auto rep = de_rham_check(SliceComplex(free_complex(nc), {1, 1, 1}, 6), 6);
  EXPECT_TRUE(rep.exact);
  for (const auto& s : rep.slices)
    EXPECT_EQ(s.cohomology, oracle::dense_cohomology(free_complex(nc), {1, 1, 1}, s.degree));
}

TEST(DeRham, FourPlanesAlmostFree) {
  auto rep = de_rham_check(SliceComplex(four_planes_complex(), {1, 1, 1}, 8), 8);
  EXPECT_TRUE(rep.exact);
  for (const auto& s : rep.slices)
    EXPECT_EQ(s.cohomology, oracle::dense_cohomology(four_planes_complex(), {1, 1, 1}, s.degree));
}

TEST(DeRham, CalderonWithSecondaryFiltration) {
  auto c = fx::certify(fx::divisor("x*y*(x-y)*(x+l*y)", kXYL));
  SliceComplex cx(free_complex(c), {1, 1, 0}, 6);
  EXPECT_TRUE(cx.filtered());
  auto rep = de_rham_check(cx, 6);
  EXPECT_TRUE(rep.exact);
  // Degree zero holds the polynomials in l: 1, l, …, l^6 and l^j dl.
  EXPECT_EQ(rep.slices[0].dims[0], 7u);
  EXPECT_EQ(rep.slices[0].dims[1], 6u);
}

TEST(DeRham, DetectsNonExactness) {
  // Forms modulo the ideal generated by dx: functions of x alone are closed.
  ExteriorAlgebra ext(2);
  std::vector<std::vector<FreeElement>> rels{{}, {ext.dx(0)}, {ext.volume()}};
  auto rep = de_rham_check(SliceComplex(rels, {1, 1}, 4), 4);
  EXPECT_FALSE(rep.exact);
  EXPECT_EQ(rep.slices[3].cohomology, (std::vector<std::size_t>{1, 0, 0}));
}
