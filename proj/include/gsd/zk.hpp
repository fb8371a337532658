#pragma once

#include "gsd/linf.hpp"
#include "gsd/quantize.hpp"

namespace gsd {

// The surface Z_k = Tot O_{P^1}(-k) in canonical coordinates: two charts
// C[z,u] and C[zeta,v] glued over C[z^±,u] by (zeta, v) = (z^{-1}, z^k u).
// Deformation parameters t_1..t_{k-1} are carried as extra nonnegative
// variables of every chart and excluded from grid enumeration.
struct ZkGeometry {
    int k = 1;
    SpanDiagram span;
    std::vector<VarId> tvars; // t_1 .. t_{k-1}

    VarId z() const { return VarTable::intern("z"); }
    VarId u() const { return VarTable::intern("u"); }
    VarId zeta() const { return VarTable::intern("zeta"); }
    VarId v() const { return VarTable::intern("v"); }

    // -z^{k-2}: the anticanonical transition factor on U (cap) V.
    LaurentPoly transition() const;

    // Canonical Poisson structure (eta_U, eta_V) = (zu, -zeta v), with
    // eta_W = zu on the overlap chart.
    Bivector eta_U() const;
    Bivector eta_V() const;
    Bivector eta_W() const;
};

ZkGeometry build_zk(int k);

// The generators of H^0(Z_k, Lambda^2 T) in canonical coordinates, as
// coefficient pairs (f_U, f_V).
std::vector<std::pair<LaurentPoly, LaurentPoly>> poisson_generators(const ZkGeometry& g);

// f_V(z^{-1}, z^k u) == -z^{k-2} f_U(z, u), exactly.
bool gluing_holds(const ZkGeometry& g, const LaurentPoly& f_U, const LaurentPoly& f_V);

// The classical deformation (zeta, v) = (z^{-1}, z^k u + eps theta(z)) with
// theta = sum_i c_i z^{i-k} du. psi_n is the eps^n coefficient of the induced
// morphism series, realized as (1/n!) theta(z)^n d_u^n o psi_0.
struct ClassicalDeformation {
    int k = 0;
    int order = 0;
    LaurentPoly theta_coeff;    // sum_i c_i z^{i-k}, a W-section
    std::vector<Cochain> psi;   // psi_0 .. psi_order, arity-1 V -> W

    // Exponent mutation hook for the sensitivity suite: shifts the z-power
    // of theta by the given offset.
    static ClassicalDeformation single(const ZkGeometry& g, int i, int order,
                                       const LaurentPoly& coefficient, int exponent_shift = 0);
};

// theta with symbolic coefficient t_i (default) and with the full index
// vector.
ClassicalDeformation classical_single(const ZkGeometry& g, int i, int order = 2);
ClassicalDeformation classical_full(const ZkGeometry& g, const std::vector<int>& indices,
                                    int order = 2);

// Evaluate psi_n on zeta^m v^q.
LaurentPoly psi_n(const ClassicalDeformation& cd, int n, int m, int q);

// Deformation series for the Maurer-Cartan machinery.
Deformation classical_as_deformation(const ZkGeometry& g, const ClassicalDeformation& cd);
Deformation quantization_as_deformation(const ZkGeometry& g, int order = 2,
                                        const StarWeights& w = {});
Deformation simultaneous_deformation(const ZkGeometry& g, const ClassicalDeformation& cd,
                                     const StarWeights& w = {});

// psi_0-transport of a bilinear operator on the overlap chart down to V:
// the unique bilinear map nu with psi_0(nu(f,g)) = xi(psi_0 f, psi_0 g),
// realized as a polydifferential cochain by interpolating its action on
// monomials in the falling-factorial (Euler operator) basis. Throws if some
// xi-image does not lie in the image of psi_0.
//
// The bracket term of the overlap star product transports to the V-chart
// Poisson bracket, but the second-order term does not transport to the
// V-chart second-order formula: applying the star expansion chartwise to
// eta_V is not equivariant under (zeta, v) = (z^{-1}, z^k u). The diagram
// deformation therefore uses the transported operator on V.
Cochain psi_transport_bilinear(const ZkGeometry& g, const Cochain& xi_op, int slot_degree = 3);

// O(f,g) = xi_1(psi_0 f, psi_1 g) + xi_1(psi_1 f, psi_0 g) - psi_1(nu_1(f,g)),
// the surviving mixed term of the second-order obstruction; on monomials it
// equals (ad-bc) t_i z^{(b+d-1)k-(a+c)+i} u^{b+d-1}.
Cochain obstruction_second_order(const ZkGeometry& g, const ClassicalDeformation& cd);

LaurentPoly obstruction_closed_form(const ZkGeometry& g, const ClassicalDeformation& cd, int a,
                                    int b, int c, int d);

struct HkrResult {
    bool biderivation_ok = true;
    std::optional<GridCounterexample> failure;
    LaurentPoly coeff_chart_frame; // d_zeta ^ d_v frame, as a W-section
    LaurentPoly coeff_frame_U;     // converted to the d_z ^ d_u frame
};

// Antisymmetrized coordinate evaluation of a bilinear V-cochain, after a
// grid check that it is a biderivation over psi_0 in each slot.
HkrResult hkr_bivector(const ZkGeometry& g, const Cochain& O, int bound = 3);

// Cech decision for a bivector coefficient c on U (cap) V (in the
// d_z ^ d_u frame): either c = p_U + (-z^{2-k}) psi_0(p_V), or residual
// coordinates on the basis {z^{-1}, ..., z^{3-k}}.
struct CechClass {
    bool trivial = true;
    LaurentPoly p_U;                     // U-chart part
    LaurentPoly p_V;                     // V-chart part (in zeta, v)
    std::map<int, LaurentPoly> basis;    // z-exponent -> coefficient (in the t's)
    LaurentPoly input;
};

CechClass cech_h1_decide(const ZkGeometry& g, const LaurentPoly& c);

// Exact check that p_U + (-z^{2-k}) psi_0(p_V) + basis part rebuilds the
// input.
bool cech_reconstructs(const ZkGeometry& g, const CechClass& cls);

// dim H^1(Z_k, Lambda^2 T) measured by probing the solver on the monomial
// span z^m, m in [-(k+2), k+2], u-degree 0.
int cech_h1_dimension(const ZkGeometry& g);

struct VerdictReport {
    int k = 0;
    int i = 0;
    bool obstructed = false;
    HkrResult hkr;
    CechClass cech;
    Cochain residual; // the order-2 mixed residual cochain
};

// Chains obstruction -> HKR -> Cech; obstructed iff the class is
// nontrivial, which happens exactly when k >= 4 and 1 < i < k-1.
VerdictReport simultaneous_verdict(const ZkGeometry& g, int i);

} // namespace gsd
