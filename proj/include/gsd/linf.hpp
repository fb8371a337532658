#pragma once

#include "gsd/gs.hpp"
#include "gsd/series.hpp"

#include <vector>

namespace gsd {

// Voronov data for the span: g with the Gerstenhaber bracket, the Abelian
// subalgebra a of W-valued single-chart components, the projection P given
// by the direct-sum decomposition, and M = mu (+) nu (+) xi in ker P. The
// optional twist is the morphism pair Phi; when present, projections use
// P_Phi = P o exp[-, Phi], which is the structure controlling diagram
// deformations.
struct VoronovData {
    SpanDiagram diagram;
    GElement M;
    GElement twist; // empty = untwisted data
    bool curved = false;
};

VoronovData make_voronov(const SpanDiagram& d, bool twisted = true);

bool in_abelian_part(const VoronovData& vd, const Signature& sig);
GElement project_a(const VoronovData& vd, const GElement& g);
GElement project_kerp(const VoronovData& vd, const GElement& g);

// P_Phi(g) = sum_j (1/j!) P(ad_Phi^j g), bounded at arity + 1 terms (each
// ad_Phi consumes a W-input slot, so the series is finite). Untwisted data
// reduce to plain P.
GElement p_phi(const VoronovData& vd, const GElement& g);

// <a_1, ..., a_n> = P[...[[M, a_1], a_2], ..., a_n] (P_Phi for twisted
// data); n = 0 gives the curvature P(M).
GElement derived_bracket(const VoronovData& vd, const std::vector<GElement>& args);

// Homogeneous element of g~[1] (+) a. Shifted degree: arity - 2 for the
// diagonal part, arity - 1 for the morphism part; both parts of a mixed
// element must agree.
struct LInfElement {
    GElement g; // diagonal triple part (already shifted)
    GElement a; // morphism-pair part

    static LInfElement from(const DiagonalTriple& t);
    static LInfElement from(const APair& p);
    static LInfElement from(const DiagonalTriple& t, const APair& p);
    bool empty() const { return g.empty() && a.empty(); }
    std::optional<int> sdeg() const;
    LInfElement operator+(const LInfElement& o) const { return {g + o.g, a + o.a}; }
    LInfElement scaled(const Rational& c) const { return {g.scaled(c), a.scaled(c)}; }
};

std::optional<GridCounterexample> zero_on_grid(const LInfElement& e, int bound);

// n-ary multibracket of (g~[1] (+) a)^{P_Phi}_M. The unary bracket is the
// total differential gs_d; binary g-g is (-1)^{|x[1]|+1}[x,y][1]; brackets
// with one diagonal entry and n morphism entries are P_Phi of the nested
// commutator chain; two or more diagonal entries beyond the binary case
// vanish.
LInfElement linf_bracket(const VoronovData& vd, const std::vector<LInfElement>& elements);

// The unary bracket computed from first principles, -[M,x][1] (+)
// P_Phi(x + [M,a]); grid-equal to gs_d by construction of the structure
// (checked in the test suite, not assumed).
LInfElement linf_unary_mechanical(const VoronovData& vd, const LInfElement& e);

// Koszul sign of a permutation, extended multiplicatively from
// transpositions of homogeneous elements; perm[i] is the source position of
// the element landing at slot i.
int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees);

// All (i, n-i) unshuffles as permutations in one-line notation.
std::vector<std::vector<std::size_t>> unshuffles(std::size_t i, std::size_t n);

// Left-hand side of the generalized Jacobi identity at arity n (1 <= n <= 3)
// on homogeneous elements; grid-zero for genuine L-infinity data.
LInfElement jacobi_defect(const VoronovData& vd, std::size_t n,
                          const std::vector<LInfElement>& elements);

// A formal deformation of the diagram: full eps-series with order-0 the
// undeformed multiplications and morphism cochains.
struct Deformation {
    EpsFamily<DiagonalTriple> M;
    EpsFamily<APair> Phi;

    static Deformation undeformed(const SpanDiagram& d, int order);
    int order() const { return M.order(); }
};

struct McResidual {
    DiagonalTriple g; // eps^n coefficient of (1/2)[M~ + M, M~ + M]
    APair a;          // eps^n coefficient of M(Phi x Phi)-side minus Phi o M-side
};

// Per-order Maurer-Artan residuals in collected form. Both vanish at all
// orders <= N exactly when the deformed span is a diagram of associative
// algebras mod eps^{N+1}. The morphism-part orientation is fixed so the
// mixed second-order obstruction evaluates to +(ad-bc) t_i z^{...} u^{...}.
McResidual mc_residual(const SpanDiagram& d, const Deformation& def, int n);

// Same order-n residuals assembled from the L-infinity brackets
// (d_H Phi~ + d_Delta M~ + <M~[1],Phi~> + 1/2<Phi~,Phi~> + 1/2<M~[1],Phi~,Phi~>
// for the morphism row; the diagonal row is the negative of the collected
// form). Used to cross-check the two routes.
McResidual mc_residual_brackets(const SpanDiagram& d, const Deformation& def, int n);

} // namespace gsd
