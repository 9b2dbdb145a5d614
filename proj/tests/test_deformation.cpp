#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace logforms;

namespace {

std::size_t value(const Dimension& d) {
  EXPECT_TRUE(d.is_finite());
  return d.value.value_or(0);
}

/// Graded length of a normal space by dense linear algebra, degrees [lo, hi].
std::size_t oracle_length(const NormalSpace& s, long lo, long hi) {
  const auto& p = s.presentation;
  return oracle::graded_length(p.relations, p.rank, p.nvars, *p.grading, lo, hi);
}

bool in_ideal(const std::vector<Poly>& gens, const Poly& f) {
  auto gb = ideal_basis(gens, MonomialOrder::degrevlex(f.nvars()), f.nvars());
  return gb.contains(FreeElement(std::vector<Poly>{f}));
}

/// Setups whose germ is an AFD with positive weights and one parameter.
std::vector<DeformationSetup> one_parameter_families() {
  return {fx::four_planes_setup(), fx::three_lines_setup(), fx::product_setup()};
}

}  // namespace

TEST(Setup, GermDropsParameters) {
  auto s = fx::four_planes_setup();
  auto g = germ(s);
  EXPECT_EQ(g.source_vars.size(), 3u);
  EXPECT_EQ(g.components[3], parse_poly("x1+x2+x3", g.source_vars));
  EXPECT_EQ(s.nbase(), 3u);
  EXPECT_EQ(s.s_index(0), 3u);
}

TEST(Setup, RejectsNonReducedTotalSpace) {
  auto e = fx::normal_crossing4();
  auto m = fx::map_of({"x", "y", "z"}, fx::names("y", 4), {"x", "x", "y", "z"});
  EXPECT_THROW(make_setup(e.d, e.basis, m, 0, 0), PreconditionError);
}

TEST(Setup, RejectsInhomogeneousMap) {
  auto e = fx::normal_crossing4();
  auto m = fx::map_of({"x", "y", "z"}, fx::names("y", 4), {"x", "y", "z", "x+y^2"});
  EXPECT_THROW(make_setup(e.d, e.basis, m, 0, 0, Weights{1, 1, 1}), PreconditionError);
}

TEST(KevNormalSpace, TransverseEverywhereIsZero) {
  auto e = fx::normal_crossing4();
  auto id = fx::map_of(fx::names("y", 4), fx::names("y", 4), fx::names("y", 4));
  EXPECT_EQ(value(kev_normal_space(e.d, e.basis, id, Weights{1, 1, 1, 1}).dim), 0u);
  // A submersion is transverse as well.
  auto sub = fx::map_of({"a", "b", "c", "d", "f"}, fx::names("y", 4), {"a+f", "b", "c", "d"});
  EXPECT_EQ(value(kev_normal_space(e.d, e.basis, sub).dim), 0u);
}

TEST(KevNormalSpace, FourPlanesHasCodimensionOne) {
  auto s = fx::four_planes_setup();
  auto n = kev_normal_space(s);
  EXPECT_TRUE(n.local);
  EXPECT_EQ(value(n.dim), 1u);
  EXPECT_EQ(oracle_length(n, -1, 6), 1u);
}

TEST(KevNormalSpace, LipsInclusionHasCodimensionOne) {
  auto l = fx::lips();
  auto n = kev_normal_space(l.discriminant, l.basis, l.inclusion, l.weights);
  EXPECT_EQ(value(n.dim), 1u);
  EXPECT_EQ(oracle_length(n, -3, 10), 1u);
}

TEST(KevNormalSpace, NonIsolatedFailureIsInfinite) {
  // xyz(x+y) fails transversality along the z-axis.
  auto e = fx::normal_crossing4();
  auto m = fx::map_of({"x", "y", "z"}, fx::names("y", 4), {"x", "y", "z", "x+y"});
  auto n = kev_normal_space(e.d, e.basis, m, Weights{1, 1, 1});
  EXPECT_FALSE(n.dim.is_finite());
  EXPECT_EQ(n.dim.to_string(), "INFINITE");
}

TEST(KevNormalSpace, SequenceIsExactForFourPlanes) {
  auto e = fx::normal_crossing4();
  auto c = sequence_check(e.d, e.basis, fx::four_planes(), Weights{1, 1, 1});
  EXPECT_TRUE(c.pullback_free);
  EXPECT_TRUE(c.kernel_is_derlog);
  EXPECT_TRUE(c.cokernel_is_normal_space);
}

TEST(Versality, FourPlanesFamilyIsMiniversal) {
  auto v = versality_check(fx::four_planes_setup());
  EXPECT_TRUE(v.versal);
  EXPECT_TRUE(v.miniversal);
  auto p = versality_check(fx::product_setup());
  EXPECT_TRUE(p.versal);
  EXPECT_FALSE(p.miniversal);
}

TEST(T1Log, ProductFamilyVanishes) {
  auto s = fx::product_setup();
  auto t = t1_log_relative(s, certify_total(s));
  EXPECT_EQ(value(t.relative.dim), 0u);
  EXPECT_EQ(value(t.fibre.dim), 0u);
}

TEST(T1Log, FourPlanesFamily) {
  auto s = fx::four_planes_setup();
  auto t = t1_log_relative(s, certify_total(s));
  EXPECT_EQ(value(t.relative.dim), 1u);
  EXPECT_EQ(oracle_length(t.relative, -1, 6), 1u);
  EXPECT_EQ(value(t.fibre.dim), 1u);
}

TEST(T1Log, MissingTotalCertificateIsRejected) {
  auto s = fx::four_planes_setup();
  EXPECT_THROW(t1_log_relative(s, LogBasis{}), PreconditionError);
  // Without the extension the four-lines total space is four planes: not free.
  auto e = fx::normal_crossing4();
  auto m = fx::map_of({"x", "y", "s"}, fx::names("y", 4), {"x", "y", "x+y+s", "x-y+2*s"});
  EXPECT_THROW(certify_total(make_setup(e.d, e.basis, m, 1, 0)), PreconditionError);
}

TEST(T1Log, FibreMatchesNormalSpaceOnAllSetups) {
  std::vector<DeformationSetup> all = one_parameter_families();
  all.push_back(fx::four_lines_setup(1));
  all.push_back(fx::four_lines_setup(2));
  for (const auto& s : all) {
    auto t = t1_log_relative(s, certify_total(s));
    EXPECT_EQ(value(t.fibre.dim), value(kev_normal_space(s).dim));
    EXPECT_EQ(oracle_length(t.fibre, -1, 5), value(t.fibre.dim));
  }
}

TEST(T1Log, TorsionOfTopFormsEqualsFibre) {
  // Torsion of Ω̌^p on the AFD equals dim T^{1,log}_{D₀}.
  for (const auto& s : {fx::four_planes_setup(), fx::three_lines_setup(), fx::four_lines_setup(2)}) {
    std::size_t m = s.nbase();
    auto mod = omega_pullback(s.e, s.basis, germ(s), m, m - 1, germ_weights(s));
    auto t = t1_log_relative(s, certify_total(s));
    EXPECT_EQ(torsion_length(mod).length, value(t.fibre.dim));
  }
}

TEST(CriticalIdeal, TransverseFamilyGivesUnitIdeal) {
  auto s = fx::product_setup();
  auto c = log_critical_ideal(s, certify_total(s));
  EXPECT_TRUE(in_ideal(c, Poly::constant(3, 1)));
}

TEST(CriticalIdeal, FourPlanesCriticalOnlyAtOrigin) {
  auto s = fx::four_planes_setup();
  auto c = log_critical_ideal(s, certify_total(s));
  EXPECT_FALSE(in_ideal(c, Poly::constant(4, 1)));
  for (std::size_t i = 0; i < 4; ++i) {
    bool found = false;
    for (unsigned k = 1; k <= 4 && !found; ++k) found = in_ideal(c, Poly::variable(4, i).pow(k));
    EXPECT_TRUE(found) << "variable " << i;
  }
}

TEST(CriticalIdeal, CalderonIsCriticalAlongTheParameterAxis) {
  auto s = fx::calderon_setup();
  auto c = log_critical_ideal(s, certify_total(s));
  ASSERT_FALSE(c.empty());
  std::vector<std::size_t> xy{0, 1};
  for (const auto& g : c) EXPECT_TRUE(g.set_zero(xy).is_zero());
  for (unsigned k = 1; k <= 6; ++k) EXPECT_FALSE(in_ideal(c, Poly::variable(3, 2).pow(k)));
}

TEST(MuE, FourPlanesAllRoutesGiveOne) {
  auto s = fx::four_planes_setup();
  auto total = certify_total(s);
  auto dr = mu_e_derham(s, 20);
  EXPECT_EQ(dr.value, 1u);
  EXPECT_EQ(mu_e_alternating(s, total).value, 1);
  auto ge = mu_e_good_equation(s);
  EXPECT_EQ(value(ge.space.dim), 1u);
  EXPECT_TRUE(ge.space.local);
}

TEST(MuE, DeRhamSlicesMatchDenseOracle) {
  auto s = fx::four_planes_setup();
  auto dr = mu_e_derham(s, 20);
  auto rels = omega_pullback(s.e, s.basis, germ(s), 3, 2, germ_weights(s)).presentation.relations;
  for (const auto& [ell, c] : dr.slices) EXPECT_EQ(c, oracle::dense_coker_d(rels, {1, 1, 1}, 2, ell)) << ell;
  EXPECT_EQ(dr.slices.at(3), 1u);
}

TEST(MuE, FreeGermHasZero) {
  auto s = fx::product_setup();
  EXPECT_EQ(mu_e_derham(s, 20).value, 0u);
  EXPECT_EQ(mu_e_alternating(s, certify_total(s)).value, 0);
  EXPECT_EQ(value(mu_e_good_equation(s).space.dim), 0u);
}

TEST(MuE, ThreeLines) {
  auto s = fx::three_lines_setup();
  EXPECT_EQ(mu_e_derham(s, 20).value, 1u);
  EXPECT_EQ(mu_e_alternating(s, certify_total(s)).value, 1);
  EXPECT_EQ(value(mu_e_good_equation(s).space.dim), 1u);
}

TEST(MuE, FourLinesAlternatingSum) {
  auto s = fx::four_lines_setup(2);
  auto alt = mu_e_alternating(s, certify_total(s));
  EXPECT_EQ(alt.terms, (std::vector<std::size_t>{4, 1}));
  EXPECT_EQ(alt.value, 3);
  EXPECT_EQ(mu_e_derham(s, 20).value, 3u);
  EXPECT_EQ(value(mu_e_good_equation(s).space.dim), 3u);
}

TEST(MuE, ExtensionParametersJoinTheAlternatingChain) {
  auto s = fx::four_lines_setup(1);
  auto alt = mu_e_alternating(s, certify_total(s));
  EXPECT_EQ(alt.terms, (std::vector<std::size_t>{4, 1}));
  EXPECT_EQ(alt.value, 3);
}

TEST(MuE, PipEqualsPopOnWeightedHomogeneousFamilies) {
  for (const auto& s : one_parameter_families()) {
    auto pip = t1_log_relative(s, certify_total(s)).relative.dim;
    auto pop = mu_e_good_equation(s).space.dim;
    EXPECT_EQ(value(pip), value(pop));
  }
}

TEST(MuE, CalderonRoutesAreOnlyGlobal) {
  auto s = fx::calderon_setup();
  auto ge = mu_e_good_equation(s);
  EXPECT_EQ(apply_field(ge.witness, total_divisor(s).h), total_divisor(s).h);
  EXPECT_FALSE(ge.space.local);
  auto pip = t1_log_relative(s, certify_total(s)).relative;
  EXPECT_FALSE(pip.local);
  EXPECT_FALSE(pip.dim.is_finite());
}

TEST(MuE, DegreeBoundBelowWindowIsAnError) {
  EXPECT_THROW(mu_e_derham(fx::four_planes_setup(), 2), NonStabilizationError);
}

TEST(Count, FourPlanesFamily) {
  auto s = fx::four_planes_setup();
  auto c = count_check(s, certify_total(s), 20);
  EXPECT_EQ(c.mu_fibre, 1u);
  EXPECT_EQ(c.mu_total, 0u);
  EXPECT_TRUE(c.holds);
}

TEST(Count, FourLinesIntoFourPlanes) {
  // Total space over S is the four-planes AFD; the t direction frees it.
  auto s = fx::four_lines_setup(1);
  auto c = count_check(s, certify_total(s), 20);
  EXPECT_EQ(c.mu_fibre, 3u);
  EXPECT_EQ(c.mu_total, 1u);
  EXPECT_EQ(value(c.t1), 4u);
  EXPECT_TRUE(c.holds);
}

TEST(Fitting, FourPlanesDiscriminantIsReduced) {
  auto s = fx::four_planes_setup();
  auto r = ke_discriminant_reducedness(s, certify_total(s));
  EXPECT_TRUE(r.reduced);
  ASSERT_EQ(r.fitting.generators.size(), 1u);
  // det(s - A) with A the zero 1x1 matrix.
  EXPECT_EQ(r.fitting.generators[0], Poly::variable(1, 0));
}

TEST(Fitting, ThreeLinesDiscriminantIsReduced) {
  auto s = fx::three_lines_setup();
  EXPECT_TRUE(ke_discriminant_reducedness(s, certify_total(s)).reduced);
}

TEST(Fitting, HypothesesAreChecked) {
  auto p = fx::product_setup();
  EXPECT_THROW(ke_discriminant_reducedness(p, certify_total(p)), PreconditionError);
  auto l = fx::four_lines_setup(2);
  EXPECT_THROW(ke_discriminant_reducedness(l, certify_total(l)), PreconditionError);
}

TEST(CmProxy, FreeingFamilies) {
  auto s = fx::four_planes_setup();
  auto c = cm_proxy(s, certify_total(s), 0);
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.krull, (std::vector<int>{0}));
  auto l = fx::four_lines_setup(2);
  auto c2 = cm_proxy(l, certify_total(l), 0);
  EXPECT_TRUE(c2.passed);
  EXPECT_EQ(c2.krull, (std::vector<int>{1, 0}));
  EXPECT_EQ(c2.forms.size(), 1u);
}

TEST(AeDirect, FoldIsStable) {
  auto f = fx::map_of({"x", "y"}, {"X", "W"}, {"x", "y^2"});
  EXPECT_EQ(value(ae_normal_space_direct(f).value), 0u);
}

TEST(AeDirect, LipsHasCodimensionOne) {
  auto r = ae_normal_space_direct(fx::lips_germ());
  EXPECT_EQ(value(r.value), 1u);
}

TEST(AeDirect, NonFiniteGermDoesNotStabilize) {
  auto f = fx::map_of({"x", "y"}, {"X", "W"}, {"x", "y^3"});
  auto r = ae_normal_space_direct(f, 8);
  EXPECT_FALSE(r.value.is_finite());
  // The cokernel grows by one y·x^b per order.
  for (std::size_t i = 1; i < r.jets.size(); ++i) EXPECT_EQ(r.jets[i], r.jets[i - 1] + 1);
}

TEST(AeDirect, StableUnfoldingOfLips) {
  EXPECT_EQ(value(ae_normal_space_direct(*fx::lips().unfolding).value), 0u);
}

TEST(Damon, LipsAllRoutesAgree) {
  auto l = fx::lips();
  auto d = ae_codim_damon(l);
  EXPECT_TRUE(d.unfolding_stable);
  EXPECT_TRUE(d.discriminant_checked);
  EXPECT_EQ(value(d.space.dim), 1u);
  EXPECT_EQ(value(ae_normal_space_direct(fx::lips_germ()).value), 1u);
  EXPECT_EQ(ae_torsion_route(l).length, 1u);
}

TEST(Damon, FoldAllRoutesZero) {
  auto f = fx::fold();
  EXPECT_EQ(value(ae_codim_damon(f).space.dim), 0u);
  EXPECT_EQ(value(ae_normal_space_direct(*f.unfolding).value), 0u);
  EXPECT_EQ(ae_torsion_route(f).length, 0u);
}

TEST(Damon, RejectsUnstableUnfolding) {
  auto f = fx::fold();
  f.unfolding = fx::map_of({"x", "y"}, {"X", "W"}, {"x", "y^3"});
  EXPECT_THROW(ae_codim_damon(f), PreconditionError);
}

TEST(Damon, RejectsWrongDiscriminant) {
  auto f = fx::fold();
  auto wrong = fx::certify(fx::divisor("X", {"X", "W"}, Weights{1, 2}));
  f.discriminant = wrong.d;
  f.basis = wrong.basis;
  EXPECT_THROW(ae_codim_damon(f), PreconditionError);
}
