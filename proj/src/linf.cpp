#include "gsd/linf.hpp"

#include <algorithm>

namespace gsd {

VoronovData make_voronov(const SpanDiagram& d, bool twisted) {
    VoronovData vd;
    vd.diagram = d;
    vd.M.add(d.mu);
    vd.M.add(d.nu);
    vd.M.add(d.xi);
    if (twisted) {
        vd.twist.add(d.phic);
        vd.twist.add(d.psic);
    }
    vd.curved = !project_a(vd, vd.M).empty();
    return vd;
}

bool in_abelian_part(const VoronovData& vd, const Signature& sig) {
    if (sig.target->id != vd.diagram.W->id || sig.sources.empty()) return false;
    const std::string& first = sig.sources[0]->id;
    if (first == vd.diagram.W->id) return false;
    for (const auto& s : sig.sources)
        if (s->id != first) return false;
    return true;
}

GElement project_a(const VoronovData& vd, const GElement& g) {
    GElement r;
    for (const auto& [k, c] : g.components())
        if (in_abelian_part(vd, c.signature())) r.add(c);
    return r;
}

GElement project_kerp(const VoronovData& vd, const GElement& g) {
    GElement r;
    for (const auto& [k, c] : g.components())
        if (!in_abelian_part(vd, c.signature())) r.add(c);
    return r;
}

GElement p_phi(const VoronovData& vd, const GElement& g) {
    GElement total = project_a(vd, g);
    if (vd.twist.empty() || g.empty()) return total;
    GElement cur = g;
    Rational fact = 1;
    const int bound = *g.degree() + 2; // arity + 1
    for (int j = 1; j <= bound; ++j) {
        cur = g_bracket(cur, vd.twist);
        if (cur.empty()) break;
        fact /= j;
        total = total + project_a(vd, cur).scaled(fact);
    }
    return total;
}

GElement derived_bracket(const VoronovData& vd, const std::vector<GElement>& args) {
    GElement chain = vd.M;
    for (const GElement& a : args) chain = g_bracket(chain, a);
    return p_phi(vd, chain);
}

LInfElement LInfElement::from(const DiagonalTriple& t) {
    LInfElement e;
    e.g = to_gelement(t);
    return e;
}

LInfElement LInfElement::from(const APair& p) {
    LInfElement e;
    e.a = to_gelement(p);
    return e;
}

LInfElement LInfElement::from(const DiagonalTriple& t, const APair& p) {
    LInfElement e;
    e.g = to_gelement(t);
    e.a = to_gelement(p);
    if (auto d = e.sdeg(); !d && !e.empty())
        throw std::invalid_argument("LInfElement: parts are not of homogeneous shifted degree");
    return e;
}

std::optional<int> LInfElement::sdeg() const {
    std::optional<int> dg, da;
    if (!g.empty()) dg = *g.degree() - 1; // |x[1]| = |x| - 1
    if (!a.empty()) da = *a.degree();
    if (dg && da && *dg != *da) return std::nullopt;
    if (dg) return dg;
    return da;
}

std::optional<GridCounterexample> zero_on_grid(const LInfElement& e, int bound) {
    if (auto bad = g_zero_on_grid(e.g, bound)) return bad;
    return g_zero_on_grid(e.a, bound);
}

int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && degrees[perm[i]] % 2 != 0 && degrees[perm[j]] % 2 != 0)
                sign = -sign;
    return sign;
}

std::vector<std::vector<std::size_t>> unshuffles(std::size_t i, std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    // lexicographic enumeration of i-subsets; complement keeps its order
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(i), true);
    // std::prev_permutation over bool mask yields subsets in lexicographic order
    do {
        std::vector<std::size_t> perm;
        for (std::size_t k = 0; k < n; ++k)
            if (mask[k]) perm.push_back(k);
        for (std::size_t k = 0; k < n; ++k)
            if (!mask[k]) perm.push_back(k);
        out.push_back(std::move(perm));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

namespace {

// Nested commutator chain P_Phi[...[[head, b_1], b_2], ..., b_m].
GElement chain_bracket(const VoronovData& vd, GElement head, const std::vector<GElement>& tail) {
    for (const GElement& b : tail) {
        if (head.empty()) break;
        head = g_bracket(head, b);
    }
    return p_phi(vd, head);
}

} // namespace

LInfElement linf_bracket(const VoronovData& vd, const std::vector<LInfElement>& elements) {
    const std::size_t n = elements.size();
    LInfElement out;
    if (n == 0) {
        out.a = p_phi(vd, vd.M);
        return out;
    }
    if (n == 1) {
        // The unary bracket is the total differential, stored as gs_d.
        const LInfElement& e = elements[0];
        if (e.empty()) return out;
        std::size_t ga = e.g.empty() ? *e.a.degree() + 2 : *e.g.degree() + 1;
        GSCochain x = GSCochain::make(vd.diagram, triple_from(vd.diagram, e.g, ga),
                                      ga >= 2 ? apair_from(vd.diagram, e.a, ga - 1)
                                              : APair{Cochain(), Cochain()});
        GSCochain dx = gs_d(vd.diagram, x);
        out.g = to_gelement(dx.c02);
        out.a = to_gelement(dx.c11);
        return out;
    }

    // Expand multilinearly over the (g-part | a-part) choice per slot.
    std::vector<int> degs(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto d = elements[i].sdeg();
        if (!d && !elements[i].empty())
            throw std::invalid_argument("linf_bracket: inhomogeneous element");
        degs[i] = d.value_or(0);
    }

    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> gpos, apos;
        for (std::size_t i = 0; i < n; ++i)
            ((mask >> i) & 1u ? gpos : apos).push_back(i);

        if (gpos.size() >= 2) {
            if (n != 2) continue; // vanishes up to permutation
            const GElement& x = elements[0].g;
            const GElement& y = elements[1].g;
            if (x.empty() || y.empty()) continue;
            // <x[1], y[1]> = (-1)^{|x[1]|+1} [x, y][1]
            Rational s = (degs[0] + 1) % 2 == 0 ? 1 : -1;
            out.g = out.g + g_bracket(x, y).scaled(s);
            continue;
        }

        if (gpos.size() == 1) {
            std::size_t xi = gpos[0];
            if (elements[xi].g.empty()) continue;
            // Koszul sign for moving the diagonal entry to the front.
            int sign = 1;
            for (std::size_t j = 0; j < xi; ++j)
                if (degs[xi] % 2 != 0 && degs[j] % 2 != 0) sign = -sign;
            std::vector<GElement> tail;
            bool skip = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == xi) continue;
                if (elements[j].a.empty()) skip = true;
                tail.push_back(elements[j].a);
            }
            if (skip) continue;
            out.a = out.a + chain_bracket(vd, elements[xi].g, tail).scaled(sign);
            continue;
        }

        // all entries from the Abelian part
        std::vector<GElement> args;
        bool skip = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (elements[i].a.empty()) skip = true;
            args.push_back(elements[i].a);
        }
        if (skip) continue;
        out.a = out.a + derived_bracket(vd, args);
    }
    return out;
}

LInfElement linf_unary_mechanical(const VoronovData& vd, const LInfElement& e) {
    LInfElement out;
    if (!e.g.empty()) {
        out.g = g_bracket(vd.M, e.g).scaled(-1);
        out.a = p_phi(vd, e.g);
    }
    if (!e.a.empty()) out.a = out.a + p_phi(vd, g_bracket(vd.M, e.a));
    return out;
}

LInfElement jacobi_defect(const VoronovData& vd, std::size_t n,
                          const std::vector<LInfElement>& elements) {
    if (n < 1 || n > 3) throw std::invalid_argument("jacobi_defect: arity must be 1, 2 or 3");
    if (elements.size() != n) throw std::invalid_argument("jacobi_defect: wrong element count");
    std::vector<int> degs(n, 0);
    for (std::size_t i = 0; i < n; ++i) degs[i] = elements[i].sdeg().value_or(0);

    LInfElement defect;
    for (std::size_t i = 1; i <= n; ++i) {
        for (const auto& perm : unshuffles(i, n)) {
            int eps = koszul_sign(perm, degs);
            std::vector<LInfElement> inner;
            for (std::size_t k = 0; k < i; ++k) inner.push_back(elements[perm[k]]);
            LInfElement mi = linf_bracket(vd, inner);
            std::vector<LInfElement> outer{mi};
            for (std::size_t k = i; k < n; ++k) outer.push_back(elements[perm[k]]);
            LInfElement term = linf_bracket(vd, outer);
            defect = defect + term.scaled(eps);
        }
    }
    return defect;
}

Deformation Deformation::undeformed(const SpanDiagram& d, int order) {
    Deformation def;
    def.M = EpsFamily<DiagonalTriple>(order);
    def.Phi = EpsFamily<APair>(order);
    def.M.at(0) = DiagonalTriple{d.mu, d.nu, d.xi};
    def.Phi.at(0) = APair{d.phic, d.psic};
    for (int n = 1; n <= order; ++n) {
        def.M.at(n) = zero_triple(d, 2);
        def.Phi.at(n) = zero_apair(d, 1);
    }
    return def;
}

McResidual mc_residual(const SpanDiagram& d, const Deformation& def, int n) {
    if (n > def.order()) throw std::invalid_argument("mc_residual: order exceeds truncation");
    // Maurer-Cartan candidates have total degree 0: binary multiplication
    // terms, unary morphism terms. Other degrees are rejected, not computed.
    for (int j = 0; j <= def.order(); ++j) {
        if (def.M.at(j).arity() != 2)
            throw std::invalid_argument("mc_residual: multiplication coefficients must be binary");
        if (def.Phi.at(j).arity() != 1)
            throw std::invalid_argument("mc_residual: morphism coefficients must be unary");
    }
    McResidual r;

    // diagonal row: eps^n coefficient of (1/2)[M^eps, M^eps]
    GElement g;
    for (int i = 0; i <= n; ++i) {
        GElement bi = to_gelement(def.M.at(i));
        GElement bj = to_gelement(def.M.at(n - i));
        g = g + g_bracket(bi, bj).scaled(Rational(1, 2));
    }
    r.g = triple_from(d, g, 3);

    // morphism row: sum M_i(Phi_j (x) Phi_k) - sum Phi_i o M_j
    Cochain au = Cochain::zero({{d.U, d.U}, d.W});
    Cochain av = Cochain::zero({{d.V, d.V}, d.W});
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            int k = n - i - j;
            const Cochain& xi_i = def.M.at(i).w;
            au = au + xi_i.compose_tensor({def.Phi.at(j).u, def.Phi.at(k).u});
            av = av + xi_i.compose_tensor({def.Phi.at(j).v, def.Phi.at(k).v});
        }
    for (int i = 0; i <= n; ++i) {
        au = au - def.Phi.at(i).u.circle_i(def.M.at(n - i).u, 0);
        av = av - def.Phi.at(i).v.circle_i(def.M.at(n - i).v, 0);
    }
    r.a = APair{au, av};
    return r;
}

McResidual mc_residual_brackets(const SpanDiagram& d, const Deformation& def, int n) {
    if (n > def.order()) throw std::invalid_argument("mc_residual_brackets: order exceeds truncation");
    VoronovData vd = make_voronov(d);
    McResidual r;
    r.a = zero_apair(d, 2);

    // d_H Phi_n  +  d_Delta M_n (unary-bracket orientation)
    if (n >= 1) {
        r.a = r.a + hochschild_d(d, def.Phi.at(n));
        r.a = r.a + phi_transport(d, def.M.at(n));
    }
    // <M_i[1], Phi_j>, i,j >= 1
    GElement acc;
    for (int i = 1; i < n; ++i) {
        int j = n - i;
        LInfElement b = linf_bracket(
            vd, {LInfElement::from(def.M.at(i)), LInfElement::from(def.Phi.at(j))});
        acc = acc + b.a;
    }
    // (1/2) <Phi_i, Phi_j>, i,j >= 1
    for (int i = 1; i < n; ++i) {
        int j = n - i;
        LInfElement b = linf_bracket(
            vd, {LInfElement::from(def.Phi.at(i)), LInfElement::from(def.Phi.at(j))});
        acc = acc + b.a.scaled(Rational(1, 2));
    }
    // (1/2) <M_i[1], Phi_j, Phi_k>, all >= 1
    for (int i = 1; i <= n - 2; ++i)
        for (int j = 1; i + j < n; ++j) {
            int k = n - i - j;
            LInfElement b = linf_bracket(vd, {LInfElement::from(def.M.at(i)),
                                              LInfElement::from(def.Phi.at(j)),
                                              LInfElement::from(def.Phi.at(k))});
            acc = acc + b.a.scaled(Rational(1, 2));
        }
    r.a = r.a + apair_from(d, acc, 2);

    // diagonal row via brackets: <M_n[1]> + (1/2) sum <M_i[1], M_j[1]>
    GElement gacc;
    if (n >= 1) {
        LInfElement u = linf_unary_mechanical(vd, LInfElement::from(def.M.at(n)));
        gacc = gacc + u.g;
    }
    for (int i = 1; i < n; ++i) {
        int j = n - i;
        LInfElement b = linf_bracket(
            vd, {LInfElement::from(def.M.at(i)), LInfElement::from(def.M.at(j))});
        gacc = gacc + b.g.scaled(Rational(1, 2));
    }
    r.g = triple_from(d, gacc, 3);
    return r;
}

} // namespace gsd
