#include "gsd/gs.hpp"

#include "gsd/linf.hpp"

#include <sstream>

namespace gsd {

SpanDiagram SpanDiagram::make(AlgebraPtr U, AlgebraPtr V, AlgebraPtr W, MorphismPtr phi,
                              MorphismPtr psi) {
    SpanDiagram d;
    d.U = std::move(U);
    d.V = std::move(V);
    d.W = std::move(W);
    d.phi = std::move(phi);
    d.psi = std::move(psi);
    d.mu = Cochain::multiply_images(d.U);
    d.nu = Cochain::multiply_images(d.V);
    d.xi = Cochain::multiply_images(d.W);
    d.phic = Cochain::from_morphism(d.phi);
    d.psic = Cochain::from_morphism(d.psi);
    return d;
}

const AlgebraPtr& SpanDiagram::chart(const std::string& id) const {
    if (id == U->id) return U;
    if (id == V->id) return V;
    if (id == W->id) return W;
    throw std::invalid_argument("unknown chart " + id);
}

Cochain SpanDiagram::mult(const std::string& id) const {
    if (id == U->id) return mu;
    if (id == V->id) return nu;
    if (id == W->id) return xi;
    throw std::invalid_argument("unknown chart " + id);
}

DiagonalTriple zero_triple(const SpanDiagram& d, std::size_t arity) {
    return {Cochain::zero({std::vector<AlgebraPtr>(arity, d.U), d.U}),
            Cochain::zero({std::vector<AlgebraPtr>(arity, d.V), d.V}),
            Cochain::zero({std::vector<AlgebraPtr>(arity, d.W), d.W})};
}

APair zero_apair(const SpanDiagram& d, std::size_t arity) {
    return {Cochain::zero({std::vector<AlgebraPtr>(arity, d.U), d.W}),
            Cochain::zero({std::vector<AlgebraPtr>(arity, d.V), d.W})};
}

GElement to_gelement(const DiagonalTriple& t) {
    GElement g;
    g.add(t.u);
    g.add(t.v);
    g.add(t.w);
    return g;
}

GElement to_gelement(const APair& a) {
    GElement g;
    g.add(a.u);
    g.add(a.v);
    return g;
}

namespace {

Cochain component_or_zero(const GElement& g, const Signature& sig) {
    const Cochain* c = g.component(sig);
    return c ? *c : Cochain::zero(sig);
}

} // namespace

DiagonalTriple triple_from(const SpanDiagram& d, const GElement& g, std::size_t arity) {
    return {component_or_zero(g, {std::vector<AlgebraPtr>(arity, d.U), d.U}),
            component_or_zero(g, {std::vector<AlgebraPtr>(arity, d.V), d.V}),
            component_or_zero(g, {std::vector<AlgebraPtr>(arity, d.W), d.W})};
}

APair apair_from(const SpanDiagram& d, const GElement& g, std::size_t arity) {
    return {component_or_zero(g, {std::vector<AlgebraPtr>(arity, d.U), d.W}),
            component_or_zero(g, {std::vector<AlgebraPtr>(arity, d.V), d.W})};
}

GSCochain GSCochain::make(const SpanDiagram& d, int degree) {
    if (degree < 0) throw std::invalid_argument("GSCochain: negative degree");
    GSCochain x;
    x.degree = degree;
    x.c02 = zero_triple(d, static_cast<std::size_t>(degree) + 1);
    x.c11 = zero_apair(d, std::max(1, degree)); // placeholder arity at degree 0
    if (degree == 0) x.c11 = APair{Cochain(), Cochain()};
    return x;
}

GSCochain GSCochain::make(const SpanDiagram& d, DiagonalTriple diag, APair morph) {
    GSCochain x;
    x.degree = static_cast<int>(diag.arity()) - 1;
    if (morph.u.valid() && morph.u.arity() != static_cast<std::size_t>(x.degree))
        throw std::invalid_argument("GSCochain: morphism part arity must equal total degree");
    x.c02 = std::move(diag);
    x.c11 = std::move(morph);
    (void)d;
    return x;
}

Cochain hochschild_diagonal(const SpanDiagram& d, const std::string& chart, const Cochain& x) {
    BimoduleStructure bm{d.mult(chart), d.mult(chart), nullptr};
    return hochschild_d(x, bm);
}

DiagonalTriple hochschild_d(const SpanDiagram& d, const DiagonalTriple& x) {
    return {hochschild_diagonal(d, d.U->id, x.u), hochschild_diagonal(d, d.V->id, x.v),
            hochschild_diagonal(d, d.W->id, x.w)};
}

APair hochschild_d(const SpanDiagram& d, const APair& a) {
    BimoduleStructure bu{d.xi, d.mu, d.phi};
    BimoduleStructure bv{d.xi, d.nu, d.psi};
    return {hochschild_d(a.u, bu), hochschild_d(a.v, bv)};
}

APair simplicial_d(const SpanDiagram& d, const DiagonalTriple& x) {
    const std::size_t q = x.arity();
    std::vector<Cochain> phis(q, d.phic), psis(q, d.psic);
    return {d.phic.circle_i(x.u, 0) - x.w.compose_tensor(phis),
            d.psic.circle_i(x.v, 0) - x.w.compose_tensor(psis)};
}

APair phi_transport(const SpanDiagram& d, const DiagonalTriple& x) {
    return simplicial_d(d, x).scaled(-1);
}

GSCochain gs_d(const SpanDiagram& d, const GSCochain& x) {
    const int n = x.degree;
    GSCochain out;
    out.degree = n + 1;
    Rational sx = (n + 1) % 2 == 0 ? 1 : -1; // (-1)^{|x|+1}
    out.c02 = hochschild_d(d, x.c02).scaled(sx);
    out.c11 = phi_transport(d, x.c02);
    if (x.c11.u.valid()) {
        Rational sa = (n - 1) % 2 == 0 ? 1 : -1; // (-1)^{|a|}
        out.c11 = out.c11 + hochschild_d(d, x.c11).scaled(sa);
    }
    return out;
}

std::string DiagramReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "  ok   " : "  FAIL ") << c.name;
        if (!c.pass && !c.detail.empty()) os << ": " << c.detail;
        os << '\n';
    }
    return os.str();
}

DiagramReport verify_diagram(const SpanDiagram& d, int bound) {
    DiagramReport rep;
    auto record = [&rep](const std::string& name, std::optional<GridCounterexample> bad) {
        rep.checks.push_back({name, !bad, bad ? bad->str() : ""});
        if (bad) rep.pass = false;
    };

    auto assoc = [&](const std::string& chart, const Cochain& m) {
        Cochain defect = assoc_defect(m);
        record("associativity on " + chart,
               zero_on_grid(defect, MonomialGrid::over(defect.signature(), bound)));
    };
    assoc(d.U->id, d.mu);
    assoc(d.V->id, d.nu);
    assoc(d.W->id, d.xi);

    auto morph = [&](const std::string& name, const Cochain& f, const Cochain& m) {
        // f(m(a,b)) = xi(f(a), f(b))
        Cochain lhs = f.circle_i(m, 0);
        Cochain rhs = d.xi.compose_tensor({f, f});
        record(name + " is multiplicative", equal_on_grid(lhs, rhs, MonomialGrid::over(lhs.signature(), bound)));
    };
    morph("phi", d.phic, d.mu);
    morph("psi", d.psic, d.nu);

    // Independent route: the twisted projection of M must vanish.
    VoronovData vd = make_voronov(d);
    GElement pm = p_phi(vd, vd.M);
    auto bad = g_zero_on_grid(pm, bound);
    rep.checks.push_back({"P_Phi(M) vanishes", !bad, bad ? bad->str() : ""});
    if (bad) rep.pass = false;

    // The morphism images must land in the target cone on grid monomials.
    auto cone_check = [&](const std::string& name, const MorphismPtr& m) {
        for (const LaurentPoly& p : MonomialGrid::chart_monomials(m->source, bound)) {
            auto applied = m->apply_checked(p);
            if (applied.cone_violation) {
                rep.checks.push_back({name + " image stays in " + m->target->id, false,
                                      "image of " + p.str() + " has monomial " +
                                          applied.cone_violation->str() + " outside the cone"});
                rep.pass = false;
                return;
            }
        }
        rep.checks.push_back({name + " image stays in " + m->target->id, true, ""});
    };
    cone_check("phi", d.phi);
    cone_check("psi", d.psi);
    return rep;
}

GuardVerdict reduced_truncated_guard(const GSCochain& x) {
    if (x.degree < 0) return {false, "negative total degree"};
    if (x.c02.arity() != static_cast<std::size_t>(x.degree) + 1)
        return {false, "diagonal part arity does not match degree"};
    if (x.degree == 0 && x.c11.u.valid())
        return {false, "C^{1,0} component present; the truncated complex has q >= 1"};
    if (x.degree > 0 && x.c11.u.valid() && x.c11.arity() != static_cast<std::size_t>(x.degree))
        return {false, "morphism part arity does not match degree"};
    return {true, "components are C^{0," + std::to_string(x.degree + 1) + "} and C^{1," +
                      std::to_string(x.degree) + "} only"};
}

GuardVerdict reduced_truncated_guard(const GsShape& shape) {
    if (shape.identity_simplex_component)
        return {false, "carries a component over an identity arrow; "
                       "the reduced complex vanishes on degenerate simplices"};
    for (const auto& [p, q] : shape.bidegrees) {
        if (p < 0 || p > 1)
            return {false, "C^{" + std::to_string(p) + "," + std::to_string(q) +
                           "}: the span nerve has no nondegenerate simplices beyond length 1"};
        if (q < 1)
            return {false, "C^{" + std::to_string(p) + ",0} is dropped in the truncated complex"};
        if (p + q != shape.total_degree + 1)
            return {false, "bidegree (" + std::to_string(p) + "," + std::to_string(q) +
                           ") does not match total degree " + std::to_string(shape.total_degree)};
    }
    return {true, "shape is admissible"};
}

} // namespace gsd
