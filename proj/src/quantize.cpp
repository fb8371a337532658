#include "gsd/quantize.hpp"

namespace gsd {

LaurentPoly Bivector::coeff(int i, int j) const {
    if (i == j) return {};
    if (i < j) {
        auto it = upper.find({i, j});
        return it == upper.end() ? LaurentPoly{} : it->second;
    }
    auto it = upper.find({j, i});
    return it == upper.end() ? LaurentPoly{} : -it->second;
}

Bivector Bivector::plane(const AlgebraPtr& chart, VarId x, VarId y, LaurentPoly c) {
    Bivector b;
    b.chart = chart;
    b.coords = {x, y};
    b.upper[{0, 1}] = std::move(c);
    return b;
}

LaurentPoly poisson_bracket(const Bivector& eta, const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly out;
    for (const auto& [ij, c] : eta.upper) {
        VarId xi = eta.coords[static_cast<std::size_t>(ij.first)];
        VarId xj = eta.coords[static_cast<std::size_t>(ij.second)];
        out += c * (f.derivative(xi) * g.derivative(xj) - f.derivative(xj) * g.derivative(xi));
    }
    return out;
}

Cochain poisson_cochain(const Bivector& eta) {
    Signature sig{{eta.chart, eta.chart}, eta.chart};
    std::vector<DiffTerm> terms;
    for (const auto& [ij, c] : eta.upper) {
        if (c.is_zero()) continue;
        VarId xi = eta.coords[static_cast<std::size_t>(ij.first)];
        VarId xj = eta.coords[static_cast<std::size_t>(ij.second)];
        DiffTerm plus{c, std::vector<SlotFactor>(2)};
        plus.slots[0].derivs[xi] = 1;
        plus.slots[1].derivs[xj] = 1;
        DiffTerm minus{-c, std::vector<SlotFactor>(2)};
        minus.slots[0].derivs[xj] = 1;
        minus.slots[1].derivs[xi] = 1;
        terms.push_back(std::move(plus));
        terms.push_back(std::move(minus));
    }
    return Cochain::from_terms(std::move(sig), std::move(terms));
}

bool Trivector::is_zero() const {
    for (const auto& [k, c] : comps)
        if (!c.is_zero()) return false;
    return true;
}

Trivector schouten_self(const Bivector& eta) {
    Trivector t;
    const int d = static_cast<int>(eta.dim());
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                LaurentPoly sum;
                for (int l = 0; l < d; ++l) {
                    VarId xl = eta.coords[static_cast<std::size_t>(l)];
                    sum += eta.coeff(l, i) * eta.coeff(j, k).derivative(xl);
                    sum += eta.coeff(l, j) * eta.coeff(k, i).derivative(xl);
                    sum += eta.coeff(l, k) * eta.coeff(i, j).derivative(xl);
                }
                t.comps[{i, j, k}] = sum.scaled(2);
            }
    return t;
}

LaurentPoly poisson_jacobiator(const Bivector& eta, const LaurentPoly& f, const LaurentPoly& g,
                               const LaurentPoly& h) {
    return poisson_bracket(eta, f, poisson_bracket(eta, g, h)) +
           poisson_bracket(eta, h, poisson_bracket(eta, f, g)) +
           poisson_bracket(eta, g, poisson_bracket(eta, h, f));
}

namespace {

void push_term(std::vector<DiffTerm>& out, LaurentPoly coeff, VarId f1, int o1, VarId f2, int o2,
               VarId g1, int go1, VarId g2, int go2) {
    if (coeff.is_zero()) return;
    DiffTerm t{std::move(coeff), std::vector<SlotFactor>(2)};
    if (o1) t.slots[0].derivs[f1] += o1;
    if (o2) t.slots[0].derivs[f2] += o2;
    if (go1) t.slots[1].derivs[g1] += go1;
    if (go2) t.slots[1].derivs[g2] += go2;
    out.push_back(std::move(t));
}

} // namespace

StarProduct kontsevich_star2(const Bivector& eta, const StarWeights& w) {
    const int d = static_cast<int>(eta.dim());
    auto var = [&](int i) { return eta.coords[static_cast<std::size_t>(i)]; };

    StarProduct s;
    s.chart_id = eta.chart->id;
    s.terms = EpsFamily<Cochain>(2);
    s.terms.at(0) = Cochain::multiply_images(eta.chart);

    // B_1 = w1 * eta^{ij} d_i f d_j g  (over all ordered pairs)
    std::vector<DiffTerm> b1;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            push_term(b1, eta.coeff(i, j).scaled(w.w1), var(i), 1, var(i), 0, var(j), 1, var(j), 0);
    Signature sig{{eta.chart, eta.chart}, eta.chart};
    s.terms.at(1) = Cochain::from_terms(sig, std::move(b1));

    // B_2: the four second-order graphs
    std::vector<DiffTerm> b2;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    LaurentPoly eij = eta.coeff(i, j);
                    LaurentPoly ekl = eta.coeff(k, l);
                    if (eij.is_zero() && ekl.is_zero()) continue;
                    // (1/2) eta^{ij} eta^{kl} d_i d_k f  d_j d_l g
                    push_term(b2, (eij * ekl).scaled(w.w2a), var(i), 1, var(k), 1, var(j), 1,
                              var(l), 1);
                    // (1/3) eta^{ij} d_i(eta^{kl}) d_j d_l f  d_k g
                    push_term(b2, (eij * ekl.derivative(var(i))).scaled(w.w2b), var(j), 1, var(l),
                              1, var(k), 1, var(k), 0);
                    // (1/3) eta^{kl} d_k(eta^{ij}) d_i f  d_j d_l g
                    push_term(b2, (ekl * eij.derivative(var(k))).scaled(w.w2c), var(i), 1, var(i),
                              0, var(j), 1, var(l), 1);
                    // (-1/6) d_l(eta^{ij}) d_j(eta^{kl}) d_i f  d_k g
                    push_term(b2, (eij.derivative(var(l)) * ekl.derivative(var(j))).scaled(w.w2d),
                              var(i), 1, var(i), 0, var(k), 1, var(k), 0);
                }
    s.terms.at(2) = Cochain::from_terms(sig, std::move(b2));
    return s;
}

StarAssocReport star_assoc_defect(const StarProduct& s, int bound, int order) {
    if (order > s.terms.order())
        throw std::invalid_argument("star_assoc_defect: order exceeds stored truncation");
    StarAssocReport rep;
    // eps^n coefficient of (f*g)*h - f*(g*h)
    for (int n = 0; n <= order && rep.pass; ++n) {
        Cochain defect;
        for (int i = 0; i <= n; ++i) {
            const Cochain& bi = s.B(i);
            const Cochain& bj = s.B(n - i);
            Cochain left = bi.circle_i(bj, 0);
            Cochain right = bi.circle_i(bj, 1);
            defect = defect.valid() ? defect + (left - right) : left - right;
        }
        auto bad = zero_on_grid(defect, MonomialGrid::over(defect.signature(), bound));
        if (bad) {
            rep.pass = false;
            rep.first_bad_order = n;
            rep.counterexample = bad;
        }
    }
    return rep;
}

} // namespace gsd
