#pragma once

#include "gsd/cochain.hpp"
#include "gsd/series.hpp"

#include <array>
#include <vector>

namespace gsd {

// Holomorphic bivector field on a coordinate chart, stored as the
// coefficients eta^{ij} for i < j; the antisymmetric completion is implied.
struct Bivector {
    AlgebraPtr chart;
    std::vector<VarId> coords;            // the d chart coordinates
    std::map<std::pair<int, int>, LaurentPoly> upper; // (i,j), i < j, 0-based

    std::size_t dim() const { return coords.size(); }
    // eta^{ij} with antisymmetry; zero on the diagonal.
    LaurentPoly coeff(int i, int j) const;

    static Bivector plane(const AlgebraPtr& chart, VarId x, VarId y, LaurentPoly c);
};

// {f, g} = sum_{i<j} eta^{ij} (d_i f d_j g - d_j f d_i g), exact.
LaurentPoly poisson_bracket(const Bivector& eta, const LaurentPoly& f, const LaurentPoly& g);

// The Poisson bracket as a bidifferential cochain on the chart.
Cochain poisson_cochain(const Bivector& eta);

// Components [eta,eta]^{ijk}, i < j < k, of the Schouten-Nijenhuis
// self-bracket; empty (hence zero) for d = 2.
struct Trivector {
    std::map<std::array<int, 3>, LaurentPoly> comps;
    bool is_zero() const;
};
Trivector schouten_self(const Bivector& eta);

// Jacobiator {f,{g,h}} + {h,{f,g}} + {g,{h,f}} on chart coordinates; the
// independent route for deciding whether eta is Poisson.
LaurentPoly poisson_jacobiator(const Bivector& eta, const LaurentPoly& f, const LaurentPoly& g,
                               const LaurentPoly& h);

// Graph weights of the second-order expansion; mutable only for the
// mutation-sensitivity suite.
struct StarWeights {
    Rational w1 = 1;               // hbar   eta^{ij} d_i f d_j g
    Rational w2a = Rational(1, 2); // hbar^2 eta^{ij} eta^{kl} d_i d_k f d_j d_l g
    Rational w2b = Rational(1, 3); // hbar^2 eta^{ij} d_i(eta^{kl}) d_j d_l f d_k g
    Rational w2c = Rational(1, 3); // hbar^2 eta^{kl} d_k(eta^{ij}) d_i f d_j d_l g
    Rational w2d = Rational(-1, 6);// hbar^2 d_l(eta^{ij}) d_j(eta^{kl}) d_i f d_k g
};

// Star product truncated at second order: B_0 the commutative product,
// B_1 the Poisson bracket, B_2 the four weighted bidifferential terms.
struct StarProduct {
    std::string chart_id;
    EpsFamily<Cochain> terms; // order 2

    const Cochain& B(int n) const { return terms.at(n); }
};

StarProduct kontsevich_star2(const Bivector& eta, const StarWeights& w = {});

struct StarAssocReport {
    bool pass = true;
    int first_bad_order = -1;
    std::optional<GridCounterexample> counterexample;
};

// Evaluates (f*g)*h - f*(g*h) mod eps^{N+1} on all monomial triples with
// exponents up to the bound.
StarAssocReport star_assoc_defect(const StarProduct& s, int bound, int order = 2);

} // namespace gsd
