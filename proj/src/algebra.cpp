#include "gsd/algebra.hpp"

#include <algorithm>

namespace gsd {

AlgebraSpec::AlgebraSpec(std::string id_, std::vector<std::pair<std::string, Cone>> variables,
                         std::vector<std::string> grid)
    : id(std::move(id_)) {
    for (const auto& [name, c] : variables) {
        VarId v = VarTable::intern(name);
        vars.push_back(v);
        cone[v] = c;
    }
    if (grid.empty()) {
        grid_vars = vars;
    } else {
        for (const auto& name : grid) grid_vars.push_back(VarTable::intern(name));
    }
}

bool AlgebraSpec::declares(VarId v) const {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
}

std::optional<Monomial> AlgebraSpec::violation(const LaurentPoly& p) const {
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.factors()) {
            auto it = cone.find(v);
            if (it == cone.end()) return m;
            if (it->second == Cone::NonNeg && e < 0) return m;
        }
    }
    return std::nullopt;
}

MorphismSpec::MorphismSpec(std::string id_, AlgebraPtr src, AlgebraPtr tgt,
                           std::map<std::string, std::string> subs)
    : id(std::move(id_)), source(std::move(src)), target(std::move(tgt)) {
    std::set<std::string> universe;
    for (VarId v : target->vars) universe.insert(VarTable::name(v));
    for (const auto& [var, image] : subs)
        substitution[VarTable::intern(var)] = parse_poly(image, &universe);
}

LaurentPoly MorphismSpec::apply(const LaurentPoly& p) const {
    LaurentPoly out;
    for (const auto& [m, c] : p.terms()) {
        LaurentPoly image = LaurentPoly::constant(c);
        for (const auto& [v, e] : m.factors()) {
            auto it = substitution.find(v);
            if (it == substitution.end())
                throw std::domain_error("morphism " + id + ": no image for variable " +
                                        VarTable::name(v));
            const LaurentPoly& g = it->second;
            if (e >= 0) {
                image = image * g.pow(static_cast<unsigned>(e));
            } else {
                if (!g.is_monomial())
                    throw std::domain_error("morphism " + id + ": negative power of variable " +
                                            VarTable::name(v) + " whose image is not a unit");
                const auto& [gm, gc] = g.terms()[0];
                Rational inv = 1;
                for (int k = 0; k < -e; ++k) inv /= gc;
                image = image * LaurentPoly::term(gm.pow(e), inv);
            }
        }
        out += image;
    }
    return out;
}

MorphismSpec::Applied MorphismSpec::apply_checked(const LaurentPoly& p) const {
    Applied r;
    r.value = apply(p);
    r.cone_violation = target->violation(r.value);
    return r;
}

MorphismPtr identity_morphism(const AlgebraPtr& a, const AlgebraPtr& b) {
    auto m = std::make_shared<MorphismSpec>();
    m->id = "id";
    m->source = a;
    m->target = b;
    for (VarId v : a->vars) m->substitution[v] = LaurentPoly::variable(v);
    return m;
}

} // namespace gsd
