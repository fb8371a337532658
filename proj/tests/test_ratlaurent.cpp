#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsd/algebra.hpp"
#include "gsd/laurent.hpp"
#include "gsd/series.hpp"

#include <random>

using namespace gsd;

namespace {

LaurentPoly P(const std::string& s) { return parse_poly(s); }

LaurentPoly random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, bool laurent) {
    std::uniform_int_distribution<int> nterms(0, 4), expo(laurent ? -3 : 0, 3), coef(-4, 4),
        den(1, 3);
    LaurentPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        for (VarId v : vars) m = m * Monomial::var(v, expo(rng));
        int c = coef(rng);
        if (c == 0) continue;
        p += LaurentPoly::term(m, Rational(c, den(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("parser reads the documented forms") {
    VarId z = VarTable::intern("z"), u = VarTable::intern("u");
    LaurentPoly p = P("2*z^2*u - 1/3");
    CHECK(p.coefficient(Monomial::var(z, 2) * Monomial::var(u)) == Rational(2));
    CHECK(p.coefficient(Monomial()) == Rational(-1, 3));
    CHECK(p.term_count() == 2);

    CHECK(P("z^-1") == LaurentPoly::variable(z, -1));

    VarId zeta = VarTable::intern("zeta"), v = VarTable::intern("v");
    LaurentPoly q = P("-zeta*v");
    CHECK(q.coefficient(Monomial::var(zeta) * Monomial::var(v)) == Rational(-1));
    CHECK(q.term_count() == 1);

    CHECK(P(" 1/2 * z ^ 2 + 3 ") == P("1/2*z^2+3"));
}

TEST_CASE("parser rejects bad input with an offset") {
    CHECK_THROWS_AS(P("z +"), ParseError);
    CHECK_THROWS_AS(P("2z"), ParseError); // implicit product is not in the grammar
    CHECK_THROWS_AS(P("^2"), ParseError);
    CHECK_THROWS_AS(P("1/0"), ParseError);
    try {
        P("z + @");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }

    std::set<std::string> universe{"z", "u"};
    CHECK_THROWS_AS(parse_poly("z*w", &universe), ParseError);
    CHECK_NOTHROW(parse_poly("z*u", &universe));
}

TEST_CASE("poly arithmetic matches the worked examples") {
    VarId z = VarTable::intern("z"), u = VarTable::intern("u");
    CHECK(P("z+u") * P("z-u") == P("z^2-u^2"));
    // the k = 3 transition monomial product
    CHECK(P("z^-1") * P("z^3*u") == P("z^2*u"));
    CHECK((P("z+u") * LaurentPoly::zero()).is_zero());
    CHECK(P("z^2*u").derivative(z) == P("2*z*u"));
    CHECK(P("z^-2").derivative(z) == P("-2*z^-3"));
    CHECK(P("z^2*u^3").derivative(u, 2) == P("6*z^2*u"));
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
    std::mt19937_64 rng(12345);
    std::vector<VarId> vars{VarTable::intern("z"), VarTable::intern("u")};
    for (int iter = 0; iter < 200; ++iter) {
        LaurentPoly a = random_poly(rng, vars, true);
        LaurentPoly b = random_poly(rng, vars, true);
        LaurentPoly c = random_poly(rng, vars, true);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + (b + c) == (a + b) + c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("print/parse round trip") {
    std::mt19937_64 rng(777);
    std::vector<VarId> vars{VarTable::intern("z"), VarTable::intern("u"), VarTable::intern("t1")};
    for (int iter = 0; iter < 200; ++iter) {
        LaurentPoly p = random_poly(rng, vars, true);
        CHECK(parse_poly(p.str()) == p);
    }
    CHECK(LaurentPoly::zero().str() == "0");
}

TEST_CASE("algebra membership against cones") {
    auto U = std::make_shared<AlgebraSpec>(
        "U", std::vector<std::pair<std::string, Cone>>{{"z", Cone::NonNeg}, {"u", Cone::NonNeg}});
    auto W = std::make_shared<AlgebraSpec>(
        "W", std::vector<std::pair<std::string, Cone>>{{"z", Cone::AnyInt}, {"u", Cone::NonNeg}});

    CHECK(U->member(P("z^2*u")));
    auto bad = U->violation(P("z^-1"));
    REQUIRE(bad.has_value());
    CHECK(bad->str() == "z^-1");
    CHECK(W->member(P("z^-3*u^2")));
    CHECK_FALSE(W->member(P("z^-3*u^-2")));
    // undeclared variable is a violation as well
    CHECK_FALSE(U->member(P("v")));
}

TEST_CASE("morphisms act as ring maps") {
    auto U = std::make_shared<AlgebraSpec>(
        "U", std::vector<std::pair<std::string, Cone>>{{"z", Cone::NonNeg}, {"u", Cone::NonNeg}});
    auto V = std::make_shared<AlgebraSpec>(
        "V", std::vector<std::pair<std::string, Cone>>{{"zeta", Cone::NonNeg}, {"v", Cone::NonNeg}});
    auto W = std::make_shared<AlgebraSpec>(
        "W", std::vector<std::pair<std::string, Cone>>{{"z", Cone::AnyInt}, {"u", Cone::NonNeg}});

    const int k = 3;
    MorphismSpec psi0("psi0", V, W,
                      {{"zeta", "z^-1"}, {"v", "z^" + std::to_string(k) + "*u"}});
    // psi0: zeta^m v^n -> z^{nk-m} u^n
    CHECK(psi0.apply(P("zeta^2*v")) == P("z*u"));
    CHECK(psi0.apply(P("zeta^3*v^2")) == P("z^3*u^2"));
    CHECK(psi0.apply(LaurentPoly::one()) == LaurentPoly::one());

    MorphismSpec phi0("phi0", U, W, {{"z", "z"}, {"u", "u"}});
    CHECK(phi0.apply(P("z^2*u")) == P("z^2*u"));

    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        LaurentPoly p = random_poly(rng, V->vars, false);
        LaurentPoly q = random_poly(rng, V->vars, false);
        CHECK(psi0.apply(p * q) == psi0.apply(p) * psi0.apply(q));
        CHECK(psi0.apply(p + q) == psi0.apply(p) + psi0.apply(q));
    }

    // image cone check: zeta -> z^-1 leaves the U cone
    MorphismSpec to_u("bad", V, U, {{"zeta", "z"}, {"v", "u"}});
    auto ok = to_u.apply_checked(P("zeta*v"));
    CHECK_FALSE(ok.cone_violation.has_value());
    MorphismSpec inv("inv", V, W, {{"zeta", "z^-1"}, {"v", "u"}});
    auto rep = inv.apply_checked(P("zeta"));
    CHECK(rep.value == P("z^-1"));
    CHECK_FALSE(rep.cone_violation.has_value()); // legal in W
}

TEST_CASE("eps families truncate strictly above the order") {
    VarId z = VarTable::intern("z");
    SUBCASE("documented examples") {
        EpsPoly a(2, {P("1"), P("z"), P("0")});
        EpsPoly b(2, {P("1"), P("-z"), P("0")});
        EpsPoly ab = eps_mul(a, b);
        CHECK(ab.at(0) == P("1"));
        CHECK(ab.at(1).is_zero());
        CHECK(ab.at(2) == P("-z^2"));

        EpsPoly f(1, {P("u"), P("t1*z")});
        EpsPoly unit(1, {P("1"), P("0")});
        EpsPoly fu = eps_mul(f, unit);
        CHECK(fu.at(0) == P("u"));
        CHECK(fu.at(1) == P("t1*z"));

        // v-image series squared, k and i symbolic via fixed exponents (k=3, i=2)
        EpsPoly vimg(2, {P("z^3*u"), P("t1*z^2"), P("0")});
        EpsPoly sq = eps_mul(vimg, vimg);
        CHECK(sq.at(0) == P("z^6*u^2"));
        CHECK(sq.at(1) == P("2*t1*z^5*u"));
        CHECK(sq.at(2) == P("t1^2*z^4"));
    }
    SUBCASE("agrees with multiplication in an extra eps variable") {
        // oracle: multiply in the full ring with eps adjoined, then truncate
        std::mt19937_64 rng(4242);
        VarId eps = VarTable::intern("_eps_oracle");
        std::vector<VarId> vars{z, VarTable::intern("u")};
        const int N = 3;
        for (int iter = 0; iter < 60; ++iter) {
            EpsPoly a(N), b(N);
            LaurentPoly full_a, full_b;
            for (int n = 0; n <= N; ++n) {
                a.at(n) = random_poly(rng, vars, false);
                b.at(n) = random_poly(rng, vars, false);
                full_a += a.at(n) * LaurentPoly::variable(eps, n);
                full_b += b.at(n) * LaurentPoly::variable(eps, n);
            }
            LaurentPoly prod = full_a * full_b;
            EpsPoly ab = eps_mul(a, b);
            for (int n = 0; n <= N; ++n) {
                LaurentPoly coeff_n;
                for (const auto& [m, c] : prod.terms()) {
                    if (m.exponent(eps) != n) continue;
                    coeff_n += LaurentPoly::term(m * Monomial::var(eps, -n), c);
                }
                CHECK(ab.at(n) == coeff_n);
            }
        }
        CHECK_THROWS(eps_mul(EpsPoly(1), EpsPoly(2)));
    }
}
