#include "gsd/gelement.hpp"

namespace gsd {

GElement GElement::from(Cochain c) {
    GElement e;
    if (c.valid()) e.add(c);
    return e;
}

bool GElement::empty() const {
    for (const auto& [k, c] : comps_)
        if (!c.structurally_zero()) return false;
    return true;
}

const Cochain* GElement::component(const Signature& sig) const {
    auto it = comps_.find(sig.key());
    return it == comps_.end() ? nullptr : &it->second;
}

GElement& GElement::add(const Cochain& c) {
    if (!c.valid()) return *this;
    if (degree_ && *degree_ != c.degree())
        throw std::invalid_argument("GElement: mixing arities " + std::to_string(*degree_ + 1) +
                                    " and " + std::to_string(c.degree() + 1));
    degree_ = c.degree();
    auto [it, inserted] = comps_.emplace(c.signature().key(), c);
    if (!inserted) it->second = it->second + c;
    return *this;
}

GElement GElement::operator+(const GElement& o) const {
    GElement r = *this;
    for (const auto& [k, c] : o.comps_) r.add(c);
    return r;
}

GElement GElement::operator-(const GElement& o) const { return *this + o.scaled(-1); }

GElement GElement::scaled(const Rational& c) const {
    GElement r;
    for (const auto& [k, comp] : comps_) r.add(comp.scaled(c));
    return r;
}

GElement g_circle(const GElement& f, const GElement& g) {
    GElement out;
    if (f.empty() || g.empty()) return out;
    const int ng = *g.degree();
    for (const auto& [fk, fc] : f.components()) {
        if (fc.structurally_zero()) continue;
        for (const auto& [gk, gc] : g.components()) {
            if (gc.structurally_zero()) continue;
            for (std::size_t i = 0; i < fc.arity(); ++i) {
                if (fc.signature().sources[i]->id != gc.signature().target->id) continue;
                Rational sign = (static_cast<int>(i) * ng) % 2 == 0 ? 1 : -1;
                out.add(fc.circle_i(gc, i).scaled(sign));
            }
        }
    }
    return out;
}

GElement g_bracket(const GElement& f, const GElement& g) {
    if (f.empty() || g.empty()) return {};
    const int m = *f.degree(), n = *g.degree();
    GElement r = g_circle(f, g);
    Rational sign = (m * n) % 2 == 0 ? -1 : 1;
    GElement s = g_circle(g, f).scaled(sign);
    return r + s;
}

std::optional<GridCounterexample> g_equal_on_grid(const GElement& f, const GElement& g,
                                                  int bound) {
    std::map<std::string, std::pair<const Cochain*, const Cochain*>> keys;
    for (const auto& [k, c] : f.components()) keys[k].first = &c;
    for (const auto& [k, c] : g.components()) keys[k].second = &c;
    for (const auto& [k, pair] : keys) {
        const Cochain* a = pair.first;
        const Cochain* b = pair.second;
        const Signature& sig = (a ? *a : *b).signature();
        Cochain za = a ? *a : Cochain::zero(sig);
        Cochain zb = b ? *b : Cochain::zero(sig);
        auto bad = equal_on_grid(za, zb, MonomialGrid::over(sig, bound));
        if (bad) return bad;
    }
    return std::nullopt;
}

std::optional<GridCounterexample> g_zero_on_grid(const GElement& f, int bound) {
    return g_equal_on_grid(f, GElement(), bound);
}

} // namespace gsd
