#pragma once

#include "gsd/cochain.hpp"

#include <map>

namespace gsd {

// An element of the graded Lie algebra g: a formal direct sum of cochains
// grouped by signature, all of the same arity. The Gerstenhaber circle
// product and bracket act componentwise; slot insertions whose signatures do
// not splice contribute zero (each Hom component only composes where the
// direct-sum decomposition permits).
class GElement {
public:
    GElement() = default;

    static GElement from(Cochain c);

    bool empty() const;
    // Shifted degree (arity - 1); empty elements are degree-polymorphic and
    // take the degree of whatever they combine with.
    std::optional<int> degree() const { return degree_; }
    const std::map<std::string, Cochain>& components() const { return comps_; }
    const Cochain* component(const Signature& sig) const;

    GElement& add(const Cochain& c);
    GElement operator+(const GElement& o) const;
    GElement operator-(const GElement& o) const;
    GElement scaled(const Rational& c) const;

private:
    std::map<std::string, Cochain> comps_;
    std::optional<int> degree_;
};

// f o g = sum_i (-1)^{|g| i} f o_i g over all splicing insertions.
GElement g_circle(const GElement& f, const GElement& g);

// [f, g] = f o g - (-1)^{|f||g|} g o f  (Gerstenhaber bracket).
GElement g_bracket(const GElement& f, const GElement& g);

// Grid check of every component of f against the matching component of g
// (missing components compare against zero). The grid bound applies
// per-slot via each chart's cone.
std::optional<GridCounterexample> g_equal_on_grid(const GElement& f, const GElement& g,
                                                  int bound);
std::optional<GridCounterexample> g_zero_on_grid(const GElement& f, int bound);

} // namespace gsd
