#include "gsd/zk.hpp"

namespace gsd {

namespace {

Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// psi_n = (1/n!) theta^n d_u^n o psi_0, the eps^n coefficient of the
// deformed gluing applied to monomials.
std::vector<Cochain> psi_series_from(const ZkGeometry& g, const LaurentPoly& theta, int order) {
    Signature sig{{g.span.V}, g.span.W};
    std::vector<Cochain> psi;
    for (int n = 0; n <= order; ++n) {
        DiffTerm t{theta.pow(static_cast<unsigned>(n)).scaled(1 / factorial(n)),
                   {SlotFactor{g.span.psi, {}}}};
        if (n > 0) t.slots[0].derivs[VarTable::intern("u")] = n;
        psi.push_back(Cochain::from_terms(sig, {t}));
    }
    return psi;
}

} // namespace

LaurentPoly ZkGeometry::transition() const {
    return LaurentPoly::term(Monomial::var(VarTable::intern("z"), k - 2), -1);
}

Bivector ZkGeometry::eta_U() const {
    return Bivector::plane(span.U, z(), u(), parse_poly("z*u"));
}

Bivector ZkGeometry::eta_V() const {
    return Bivector::plane(span.V, zeta(), v(), parse_poly("-zeta*v"));
}

Bivector ZkGeometry::eta_W() const {
    return Bivector::plane(span.W, z(), u(), parse_poly("z*u"));
}

ZkGeometry build_zk(int k) {
    if (k < 1) throw std::invalid_argument("build_zk: k must be positive");
    ZkGeometry g;
    g.k = k;

    std::vector<std::pair<std::string, Cone>> uvars{{"z", Cone::NonNeg}, {"u", Cone::NonNeg}};
    std::vector<std::pair<std::string, Cone>> vvars{{"zeta", Cone::NonNeg}, {"v", Cone::NonNeg}};
    std::vector<std::pair<std::string, Cone>> wvars{{"z", Cone::AnyInt}, {"u", Cone::NonNeg}};
    for (int i = 1; i <= k - 1; ++i) {
        std::string t = "t" + std::to_string(i);
        g.tvars.push_back(VarTable::intern(t));
        uvars.emplace_back(t, Cone::NonNeg);
        vvars.emplace_back(t, Cone::NonNeg);
        wvars.emplace_back(t, Cone::NonNeg);
    }
    auto U = std::make_shared<AlgebraSpec>("U", uvars, std::vector<std::string>{"z", "u"});
    auto V = std::make_shared<AlgebraSpec>("V", vvars, std::vector<std::string>{"zeta", "v"});
    auto W = std::make_shared<AlgebraSpec>("W", wvars, std::vector<std::string>{"z", "u"});

    std::map<std::string, std::string> phisub{{"z", "z"}, {"u", "u"}};
    std::map<std::string, std::string> psisub{{"zeta", "z^-1"},
                                              {"v", "z^" + std::to_string(k) + "*u"}};
    for (int i = 1; i <= k - 1; ++i) {
        std::string t = "t" + std::to_string(i);
        phisub[t] = t;
        psisub[t] = t;
    }
    auto phi = std::make_shared<MorphismSpec>("phi0", U, W, phisub);
    auto psi = std::make_shared<MorphismSpec>("psi0", V, W, psisub);
    g.span = SpanDiagram::make(U, V, W, phi, psi);
    return g;
}

std::vector<std::pair<LaurentPoly, LaurentPoly>> poisson_generators(const ZkGeometry& g) {
    switch (g.k) {
    case 1:
        return {{parse_poly("1"), parse_poly("-zeta")}, {parse_poly("z"), parse_poly("-1")}};
    case 2:
        return {{parse_poly("1"), parse_poly("-1")}};
    default:
        return {{parse_poly("u"), parse_poly("-zeta^2*v")},
                {parse_poly("z*u"), parse_poly("-zeta*v")},
                {parse_poly("z^2*u"), parse_poly("-v")}};
    }
}

bool gluing_holds(const ZkGeometry& g, const LaurentPoly& f_U, const LaurentPoly& f_V) {
    return g.span.psi->apply(f_V) == g.transition() * g.span.phi->apply(f_U);
}

ClassicalDeformation ClassicalDeformation::single(const ZkGeometry& g, int i, int order,
                                                  const LaurentPoly& coefficient,
                                                  int exponent_shift) {
    ClassicalDeformation cd;
    cd.k = g.k;
    cd.order = order;
    cd.theta_coeff =
        coefficient * LaurentPoly::variable(VarTable::intern("z"), i - g.k + exponent_shift);
    cd.psi = psi_series_from(g, cd.theta_coeff, order);
    return cd;
}

ClassicalDeformation classical_single(const ZkGeometry& g, int i, int order) {
    if (i < 1 || i > g.k - 1)
        throw std::invalid_argument("classical_single: index must satisfy 1 <= i <= k-1");
    LaurentPoly ti = LaurentPoly::variable(VarTable::intern("t" + std::to_string(i)));
    return ClassicalDeformation::single(g, i, order, ti);
}

ClassicalDeformation classical_full(const ZkGeometry& g, const std::vector<int>& indices,
                                    int order) {
    ClassicalDeformation cd;
    cd.k = g.k;
    cd.order = order;
    for (int i : indices) {
        if (i < 1 || i > g.k - 1)
            throw std::invalid_argument("classical_full: index must satisfy 1 <= i <= k-1");
        cd.theta_coeff += LaurentPoly::variable(VarTable::intern("t" + std::to_string(i))) *
                          LaurentPoly::variable(VarTable::intern("z"), i - g.k);
    }
    cd.psi = psi_series_from(g, cd.theta_coeff, order);
    return cd;
}

LaurentPoly psi_n(const ClassicalDeformation& cd, int n, int m, int q) {
    if (n > cd.order) throw std::invalid_argument("psi_n: order exceeds truncation");
    LaurentPoly in = LaurentPoly::term(
        Monomial::var(VarTable::intern("zeta"), m) * Monomial::var(VarTable::intern("v"), q), 1);
    return cd.psi[static_cast<std::size_t>(n)].evaluate(std::vector<LaurentPoly>{in});
}

Deformation classical_as_deformation(const ZkGeometry& g, const ClassicalDeformation& cd) {
    Deformation def = Deformation::undeformed(g.span, cd.order);
    for (int n = 1; n <= cd.order; ++n)
        def.Phi.at(n) = APair{Cochain::zero({{g.span.U}, g.span.W}), cd.psi[static_cast<std::size_t>(n)]};
    return def;
}

namespace {

// Rational coefficient of the single expected output monomial; zero allowed.
Rational transport_coefficient(const ZkGeometry& g, const Cochain& xi_op, int a, int b, int c,
                               int d) {
    LaurentPoly in0 = g.span.psi->apply(
        LaurentPoly::term(Monomial::var(g.zeta(), a) * Monomial::var(g.v(), b), 1));
    LaurentPoly in1 = g.span.psi->apply(
        LaurentPoly::term(Monomial::var(g.zeta(), c) * Monomial::var(g.v(), d), 1));
    LaurentPoly out = xi_op({in0, in1});
    if (out.is_zero()) return 0;
    Monomial expect =
        Monomial::var(g.z(), (b + d) * g.k - (a + c)) * Monomial::var(g.u(), b + d);
    if (!out.is_monomial() || !(out.terms()[0].first == expect))
        throw std::domain_error("psi_transport_bilinear: image is not in the image of psi_0");
    return out.terms()[0].second;
}

} // namespace

Cochain psi_transport_bilinear(const ZkGeometry& g, const Cochain& xi_op, int slot_degree) {
    const int D = slot_degree;
    const int N = D + 2; // evaluation window; differences above D must vanish
    // table[a][b][c][d] = coefficient of the transported action on monomials
    std::vector<Rational> table(static_cast<std::size_t>(N * N * N * N));
    auto at = [&](int a, int b, int c, int d) -> Rational& {
        return table[static_cast<std::size_t>(((a * N + b) * N + c) * N + d)];
    };
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) at(a, b, c, d) = transport_coefficient(g, xi_op, a, b, c, d);

    // Newton coefficients against the falling-factorial basis realized by
    // derivative slots: gamma = Delta^{m,n,p,q} table(0,0,0,0) / (m!n!p!q!).
    auto choose = [](int nn, int kk) {
        Rational r = 1;
        for (int x = 1; x <= kk; ++x) r = r * (nn - x + 1) / x;
        return r;
    };
    auto newton = [&](int m, int n, int p, int q) {
        Rational sum = 0;
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= n; ++j)
                for (int s = 0; s <= p; ++s)
                    for (int t = 0; t <= q; ++t) {
                        long long sign =
                            ((m - i) + (n - j) + (p - s) + (q - t)) % 2 == 0 ? 1 : -1;
                        sum += choose(m, i) * choose(n, j) * choose(p, s) * choose(q, t) *
                               Rational(sign) * at(i, j, s, t);
                    }
        return sum;
    };

    std::vector<DiffTerm> terms;
    for (int m = 0; m <= D + 1; ++m)
        for (int n = 0; n <= D + 1; ++n)
            for (int p = 0; p <= D + 1; ++p)
                for (int q = 0; q <= D + 1; ++q) {
                    if (m + n > D + 1 || p + q > D + 1) continue;
                    Rational gamma = newton(m, n, p, q);
                    if (m + n > D || p + q > D) {
                        if (gamma != 0)
                            throw std::domain_error(
                                "psi_transport_bilinear: action is not polydifferential of the "
                                "declared slot degree");
                        continue;
                    }
                    gamma /= factorial(m) * factorial(n) * factorial(p) * factorial(q);
                    if (gamma == 0) continue;
                    DiffTerm t{LaurentPoly::term(Monomial::var(g.zeta(), m + p) *
                                                     Monomial::var(g.v(), n + q),
                                                 gamma),
                               std::vector<SlotFactor>(2)};
                    if (m) t.slots[0].derivs[g.zeta()] = m;
                    if (n) t.slots[0].derivs[g.v()] = n;
                    if (p) t.slots[1].derivs[g.zeta()] = p;
                    if (q) t.slots[1].derivs[g.v()] = q;
                    terms.push_back(std::move(t));
                }
    // The transported operator must land in the V chart, not in W.
    Signature vsig{{g.span.V, g.span.V}, g.span.V};
    return Cochain::from_terms(vsig, std::move(terms));
}

Deformation quantization_as_deformation(const ZkGeometry& g, int order, const StarWeights& w) {
    if (order > 2)
        throw std::invalid_argument("quantization_as_deformation: star product stops at order 2");
    StarProduct su = kontsevich_star2(g.eta_U(), w);
    StarProduct sw = kontsevich_star2(g.eta_W(), w);
    Deformation def = Deformation::undeformed(g.span, order);
    for (int n = 1; n <= order; ++n) {
        // The V-chart term is the transport of the overlap term along psi_0;
        // for n = 1 it coincides with the eta_V Poisson bracket.
        Cochain nu_n = psi_transport_bilinear(g, sw.B(n));
        def.M.at(n) = DiagonalTriple{su.B(n), nu_n, sw.B(n)};
    }
    return def;
}

Deformation simultaneous_deformation(const ZkGeometry& g, const ClassicalDeformation& cd,
                                     const StarWeights& w) {
    Deformation def = quantization_as_deformation(g, cd.order > 2 ? 2 : cd.order, w);
    if (cd.order != def.order())
        throw std::invalid_argument("simultaneous_deformation: order mismatch");
    for (int n = 1; n <= cd.order; ++n)
        def.Phi.at(n) = APair{Cochain::zero({{g.span.U}, g.span.W}), cd.psi[static_cast<std::size_t>(n)]};
    return def;
}

Cochain obstruction_second_order(const ZkGeometry& g, const ClassicalDeformation& cd) {
    Cochain xi1 = poisson_cochain(g.eta_W());
    Cochain nu1 = poisson_cochain(g.eta_V());
    Cochain psi0 = Cochain::from_morphism(g.span.psi);
    const Cochain& psi1 = cd.psi.at(1);
    return xi1.compose_tensor({psi0, psi1}) + xi1.compose_tensor({psi1, psi0}) -
           psi1.circle_i(nu1, 0);
}

LaurentPoly obstruction_closed_form(const ZkGeometry& g, const ClassicalDeformation& cd, int a,
                                    int b, int c, int d) {
    int det = a * d - b * c;
    Monomial m = Monomial::var(g.z(), (b + d) * g.k - (a + c)) * Monomial::var(g.u(), b + d - 1);
    return cd.theta_coeff * LaurentPoly::term(m, det);
}

HkrResult hkr_bivector(const ZkGeometry& g, const Cochain& O, int bound) {
    HkrResult r;
    // Leibniz rule over psi_0 in each slot, checked on monomial triples.
    auto psi0 = [&](const LaurentPoly& p) { return g.span.psi->apply(p); };
    std::vector<LaurentPoly> mons = MonomialGrid::chart_monomials(g.span.V, bound);
    for (const LaurentPoly& f : mons) {
        for (const LaurentPoly& h : mons) {
            for (const LaurentPoly& gg : mons) {
                LaurentPoly left0 = O({f * gg, h});
                LaurentPoly right0 = psi0(f) * O({gg, h}) + O({f, h}) * psi0(gg);
                if (left0 != right0) {
                    r.biderivation_ok = false;
                    r.failure = GridCounterexample{{f, gg, h}, left0, right0};
                    return r;
                }
                LaurentPoly left1 = O({h, f * gg});
                LaurentPoly right1 = psi0(f) * O({h, gg}) + O({h, f}) * psi0(gg);
                if (left1 != right1) {
                    r.biderivation_ok = false;
                    r.failure = GridCounterexample{{h, f, gg}, left1, right1};
                    return r;
                }
            }
        }
    }
    LaurentPoly zeta1 = LaurentPoly::variable(g.zeta());
    LaurentPoly v1 = LaurentPoly::variable(g.v());
    r.coeff_chart_frame = (O({zeta1, v1}) - O({v1, zeta1})).scaled(Rational(1, 2));
    // d_zeta ^ d_v = -z^{2-k} d_z ^ d_u under the canonical gluing.
    r.coeff_frame_U = r.coeff_chart_frame * LaurentPoly::term(Monomial::var(g.z(), 2 - g.k), -1);
    return r;
}

CechClass cech_h1_decide(const ZkGeometry& g, const LaurentPoly& c) {
    CechClass cls;
    cls.input = c;
    const int k = g.k;
    VarId z = g.z(), u = g.u();
    for (const auto& [m, coeff] : c.terms()) {
        int e = m.exponent(z);
        int n = m.exponent(u);
        if (n < 0)
            throw std::domain_error("cech_h1_decide: negative u-degree is outside the overlap chart");
        Monomial rest = m * Monomial::var(z, -e) * Monomial::var(u, -n); // parameter part
        if (n == 0 && e >= 3 - k && e <= -1) {
            cls.basis[e] += LaurentPoly::term(rest, coeff);
            cls.trivial = false;
        } else if (e >= 0) {
            cls.p_U += LaurentPoly::term(m, coeff);
        } else {
            // V side: -z^{2-k} psi_0(zeta^mm v^n) = -z^{2-k-mm+nk} u^n
            int mm = n * k - k + 2 - e;
            if (mm < 0) throw std::logic_error("cech_h1_decide: uncovered exponent");
            Monomial vm = Monomial::var(g.zeta(), mm) * Monomial::var(g.v(), n) * rest;
            cls.p_V += LaurentPoly::term(vm, -coeff);
        }
    }
    return cls;
}

bool cech_reconstructs(const ZkGeometry& g, const CechClass& cls) {
    // frame factor for restricting a V-chart bivector: d_zeta ^ d_v = -z^{2-k} d_z ^ d_u
    LaurentPoly frame = LaurentPoly::term(Monomial::var(g.z(), 2 - g.k), -1);
    LaurentPoly rebuilt = g.span.phi->apply(cls.p_U) + frame * g.span.psi->apply(cls.p_V);
    for (const auto& [e, coeff] : cls.basis)
        rebuilt += coeff * LaurentPoly::variable(g.z(), e);
    return rebuilt == cls.input;
}

int cech_h1_dimension(const ZkGeometry& g) {
    int dim = 0;
    for (int m = -(g.k + 2); m <= g.k + 2; ++m) {
        CechClass cls = cech_h1_decide(g, LaurentPoly::variable(g.z(), m));
        if (!cls.trivial) ++dim;
    }
    return dim;
}

VerdictReport simultaneous_verdict(const ZkGeometry& g, int i) {
    VerdictReport rep;
    rep.k = g.k;
    rep.i = i;
    ClassicalDeformation cd = classical_single(g, i, 2);
    rep.residual = obstruction_second_order(g, cd);
    rep.hkr = hkr_bivector(g, rep.residual);
    if (!rep.hkr.biderivation_ok)
        throw std::logic_error("simultaneous_verdict: residual is not a biderivation");
    rep.cech = cech_h1_decide(g, rep.hkr.coeff_frame_U);
    rep.obstructed = !rep.cech.trivial;
    return rep;
}

} // namespace gsd
