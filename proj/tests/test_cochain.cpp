#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsd/gelement.hpp"
#include "gsd/suite.hpp"

#include <random>

using namespace gsd;

namespace {

struct Charts {
    AlgebraPtr U, V, W;
    MorphismPtr phi, psi; // k = 3 gluing
    Charts() {
        U = std::make_shared<AlgebraSpec>(
            "U", std::vector<std::pair<std::string, Cone>>{
                     {"z", Cone::NonNeg}, {"u", Cone::NonNeg}, {"t1", Cone::NonNeg}},
            std::vector<std::string>{"z", "u"});
        V = std::make_shared<AlgebraSpec>(
            "V", std::vector<std::pair<std::string, Cone>>{
                     {"zeta", Cone::NonNeg}, {"v", Cone::NonNeg}, {"t1", Cone::NonNeg}},
            std::vector<std::string>{"zeta", "v"});
        W = std::make_shared<AlgebraSpec>(
            "W", std::vector<std::pair<std::string, Cone>>{
                     {"z", Cone::AnyInt}, {"u", Cone::NonNeg}, {"t1", Cone::NonNeg}},
            std::vector<std::string>{"z", "u"});
        phi = std::make_shared<MorphismSpec>(
            "phi", U, W, std::map<std::string, std::string>{{"z", "z"}, {"u", "u"}, {"t1", "t1"}});
        psi = std::make_shared<MorphismSpec>(
            "psi", V, W,
            std::map<std::string, std::string>{{"zeta", "z^-1"}, {"v", "z^3*u"}, {"t1", "t1"}});
    }
};

const Charts& charts() {
    static Charts c;
    return c;
}

LaurentPoly P(const std::string& s) { return parse_poly(s); }

// mu_1 = zu (d_z x d_u - d_u x d_z), the first-order multiplication term.
Cochain mu1_cochain(const AlgebraPtr& chart) {
    VarId z = VarTable::intern("z"), u = VarTable::intern("u");
    Signature sig{{chart, chart}, chart};
    DiffTerm plus{P("z*u"), std::vector<SlotFactor>(2)};
    plus.slots[0].derivs[z] = 1;
    plus.slots[1].derivs[u] = 1;
    DiffTerm minus{P("-z*u"), std::vector<SlotFactor>(2)};
    minus.slots[0].derivs[u] = 1;
    minus.slots[1].derivs[z] = 1;
    return Cochain::from_terms(sig, {plus, minus});
}

} // namespace

TEST_CASE("evaluation of the basic cochains") {
    const auto& c = charts();
    Cochain mu0 = Cochain::multiply_images(c.U);
    CHECK(mu0({P("z"), P("u")}) == P("z*u"));

    // mu_1 on (z^2 u, z u^3): (ad - bc) z^{a+c} u^{b+d} with (2,1,1,3)
    Cochain mu1 = mu1_cochain(c.U);
    CHECK(mu1({P("z^2*u"), P("z*u^3")}) == P("5*z^3*u^4"));

    // psi_1-style unary cochain: t1 z^{i-k} d_u after pullback (i=1, k=3)
    Signature sig{{c.V}, c.W};
    DiffTerm t{P("t1*z^-2"), {SlotFactor{c.psi, {{VarTable::intern("u"), 1}}}}};
    Cochain psi1 = Cochain::from_terms(sig, {t});
    CHECK(psi1({P("v")}) == P("t1*z"));

    CHECK_THROWS_AS(mu0({P("z")}), std::invalid_argument);          // arity
    CHECK_THROWS_AS(mu0({P("z^-1"), P("u")}), std::domain_error);   // membership
}

TEST_CASE("insertions satisfy the composition identities") {
    const auto& c = charts();
    Cochain mu0 = Cochain::multiply_images(c.U);
    Cochain id = Cochain::identity(c.U);
    std::mt19937_64 rng(31);

    // f o_0 id = f
    Cochain f = suite::random_cochain(rng, c.U, 2);
    CHECK_FALSE(equal_on_grid(f.circle_i(id, 0), f, MonomialGrid::over(f.signature(), 3)));

    // (mu o_0 mu)(a,b,c) = (ab)c
    Cochain left = mu0.circle_i(mu0, 0);
    CHECK(left({P("z"), P("u"), P("z+u")}) == P("z*u") * P("z+u"));

    // xi o_1 psi at (zu, v) -> zu * z^3 u = z^4 u^2
    Cochain xi0 = Cochain::multiply_images(c.W);
    Cochain psic = Cochain::from_morphism(c.psi);
    Cochain comp = xi0.circle_i(psic, 1);
    CHECK(comp({P("z*u"), P("v")}) == P("z^4*u^2"));

    // splice failures are loud
    CHECK_THROWS_AS(mu0.circle_i(psic, 0), SpliceError);
    CHECK_THROWS_AS(mu0.circle_i(mu0, 2), SpliceError);

    // pre-Lie slot bookkeeping on random cochains:
    //   nesting: (f o_i g) o_{i+j} h == f o_i (g o_j h)
    //   disjoint slots commute: (f o_i g) o_{j+|g|-1} h == (f o_j h) o_i g, i < j
    for (int rep = 0; rep < 20; ++rep) {
        std::uniform_int_distribution<std::size_t> ar(1, 2);
        Cochain ff = suite::random_cochain(rng, c.U, 2);
        Cochain gg = suite::random_cochain(rng, c.U, ar(rng));
        Cochain hh = suite::random_cochain(rng, c.U, ar(rng));
        std::uniform_int_distribution<std::size_t> slot_i(0, 1);
        std::size_t i = slot_i(rng);
        std::uniform_int_distribution<std::size_t> slot_j(0, gg.arity() - 1);
        std::size_t j = slot_j(rng);
        Cochain nested_l = ff.circle_i(gg, i).circle_i(hh, i + j);
        Cochain nested_r = ff.circle_i(gg.circle_i(hh, j), i);
        CHECK_FALSE(suite::sampled_equal(rng, nested_l, nested_r, 2, 200));

        Cochain disj_l = ff.circle_i(gg, 0).circle_i(hh, gg.arity());
        Cochain disj_r = ff.circle_i(hh, 1).circle_i(gg, 0);
        CHECK_FALSE(suite::sampled_equal(rng, disj_l, disj_r, 2, 200));
    }
}

TEST_CASE("gerstenhaber bracket on the direct sum") {
    const auto& c = charts();
    std::mt19937_64 rng(57);
    Cochain mu0 = Cochain::multiply_images(c.U);

    // [mu, mu] = 0 for the commutative product
    GElement br = g_bracket(GElement::from(mu0), GElement::from(mu0));
    CHECK_FALSE(g_zero_on_grid(br, 3));

    // commuting derivations D = z d_z, E = u d_u bracket to zero
    VarId z = VarTable::intern("z"), u = VarTable::intern("u");
    Signature s1{{c.U}, c.U};
    DiffTerm td{P("z"), {SlotFactor{nullptr, {{z, 1}}}}};
    DiffTerm te{P("u"), {SlotFactor{nullptr, {{u, 1}}}}};
    Cochain D = Cochain::from_terms(s1, {td});
    Cochain E = Cochain::from_terms(s1, {te});
    CHECK_FALSE(g_zero_on_grid(g_bracket(GElement::from(D), GElement::from(E)), 3));

    // mu_1 is a Hochschild cocycle: [mu_0, mu_1] = 0
    Cochain mu1 = mu1_cochain(c.U);
    CHECK_FALSE(g_zero_on_grid(g_bracket(GElement::from(mu0), GElement::from(mu1)), 3));

    // incompatible splices drop silently inside the sum: bracketing the two
    // diagonal multiplications gives nothing
    Cochain nu0 = Cochain::multiply_images(c.V);
    GElement mixed = g_bracket(GElement::from(mu0), GElement::from(nu0));
    CHECK(mixed.empty());
}

TEST_CASE("hochschild differential") {
    const auto& c = charts();
    Cochain id = Cochain::identity(c.U);
    BimoduleStructure bm = diagonal_bimodule(c.U);

    // d_H(id)(a,b) = a.id(b) - id(ab) + id(a).b = ab
    Cochain did = hochschild_d(id, bm);
    CHECK(did({P("z"), P("u")}) == P("z*u"));
    CHECK(did({P("z+u"), P("z")}) == P("z^2+z*u"));

    // d_H(mu_1) = 0 on pairs/triples up to bound 4
    Cochain mu1 = mu1_cochain(c.U);
    Cochain dmu1 = hochschild_d(mu1, bm);
    CHECK_FALSE(zero_on_grid(dmu1, MonomialGrid::over(dmu1.signature(), 4)));

    // d_H^2 = 0 for x = z^2 d_u
    Signature s1{{c.U}, c.U};
    DiffTerm t{P("z^2"), {SlotFactor{nullptr, {{VarTable::intern("u"), 1}}}}};
    Cochain x = Cochain::from_terms(s1, {t});
    Cochain ddx = hochschild_d(hochschild_d(x, bm), bm);
    CHECK_FALSE(zero_on_grid(ddx, MonomialGrid::over(ddx.signature(), 3)));
}

TEST_CASE("associativity defect") {
    const auto& c = charts();
    Cochain mu0 = Cochain::multiply_images(c.U);
    Cochain defect = assoc_defect(mu0);
    CHECK_FALSE(zero_on_grid(defect, MonomialGrid::over(defect.signature(), 3)));

    // first-order term of mu_0 + eps mu_1: the defect is d_H mu_1 up to
    // sign, and vanishes
    Cochain mu1 = mu1_cochain(c.U);
    GElement order1 = g_bracket(GElement::from(mu0), GElement::from(mu1));
    CHECK_FALSE(g_zero_on_grid(order1, 3));

    // the non-associative map (a, b) -> a d_z(b)
    Signature s2{{c.U, c.U}, c.U};
    DiffTerm t{P("1"), std::vector<SlotFactor>(2)};
    t.slots[1].derivs[VarTable::intern("z")] = 1;
    Cochain m = Cochain::from_terms(s2, {t});
    Cochain md = assoc_defect(m);
    // brute evaluation: m(m(a,b),c) - m(a,m(b,c)) = -a b d_z^2(c)
    CHECK(md({P("z"), P("z"), P("z")}) == P("0"));
    CHECK(md({P("z"), P("z"), P("z^2")}) == P("-2*z^2"));
    CHECK(zero_on_grid(md, MonomialGrid::over(md.signature(), 3)).has_value());
}

TEST_CASE("grid equality") {
    const auto& c = charts();
    Cochain mu1 = mu1_cochain(c.U);
    MonomialGrid grid = MonomialGrid::over(mu1.signature(), 4);
    CHECK_FALSE(equal_on_grid(mu1, mu1, grid));

    // mu_1 against its closed-form monomial action
    VarId z = VarTable::intern("z"), u = VarTable::intern("u");
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int cc = 0; cc <= 4; ++cc)
                for (int d = 0; d <= 4; ++d) {
                    LaurentPoly fa = LaurentPoly::term(Monomial::var(z, a) * Monomial::var(u, b), 1);
                    LaurentPoly fb =
                        LaurentPoly::term(Monomial::var(z, cc) * Monomial::var(u, d), 1);
                    LaurentPoly expect = LaurentPoly::term(
                        Monomial::var(z, a + cc) * Monomial::var(u, b + d), a * d - b * cc);
                    CHECK(mu1({fa, fb}) == expect);
                }

    // signature mismatch is an error
    Cochain nu0 = Cochain::multiply_images(c.V);
    CHECK_THROWS_AS((void)equal_on_grid(mu1, nu0, grid), std::invalid_argument);

    // counterexamples come in enumeration order
    Cochain mu0 = Cochain::multiply_images(c.U);
    auto bad = equal_on_grid(mu0, mu0 + mu1, MonomialGrid::over(mu0.signature(), 2));
    REQUIRE(bad.has_value());
    // first differing tuple has the lexicographically-first monomials
    CHECK(bad->inputs[0] == P("u"));
    CHECK(bad->inputs[1] == P("z"));
}

TEST_CASE("threaded grid scans report the same counterexample") {
    const auto& c = charts();
    Cochain mu0 = Cochain::multiply_images(c.U);
    Cochain mu1 = mu1_cochain(c.U);
    MonomialGrid grid = MonomialGrid::over(mu0.signature(), 4);

    auto sequential = equal_on_grid(mu0, mu0 + mu1, grid);
    setenv("GSD_THREADS", "4", 1);
    auto parallel = equal_on_grid(mu0, mu0 + mu1, grid);
    auto clean = equal_on_grid(mu0, mu0, grid);
    unsetenv("GSD_THREADS");

    REQUIRE(sequential.has_value());
    REQUIRE(parallel.has_value());
    CHECK(sequential->inputs[0] == parallel->inputs[0]);
    CHECK(sequential->inputs[1] == parallel->inputs[1]);
    CHECK(sequential->lhs == parallel->lhs);
    CHECK_FALSE(clean);
}

TEST_CASE("laurent cone grids") {
    const auto& c = charts();
    auto mons = MonomialGrid::chart_monomials(c.W, 2);
    CHECK(mons.size() == 15); // z in [-2,2], u in [0,2]
    auto umons = MonomialGrid::chart_monomials(c.U, 2);
    CHECK(umons.size() == 9);
    // t1 is a parameter, never enumerated
    for (const auto& m : mons) CHECK(m.variables().count(VarTable::intern("t1")) == 0);
}
