#pragma once

#include "gsd/laurent.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gsd {

// Per-variable exponent constraint. A Laurent chart like C[z^±, u] is the
// same polynomial ring with an AnyInt cone on z.
enum class Cone { NonNeg, AnyInt };

// A named section algebra: a Laurent polynomial ring cut out by an exponent
// cone. Membership is decided monomial by monomial.
struct AlgebraSpec {
    std::string id;
    std::vector<VarId> vars;
    std::map<VarId, Cone> cone;
    // Variables enumerated by monomial grids (defaults to all of vars);
    // deformation parameters like t_i are carried in coefficients and are
    // excluded from grid enumeration.
    std::vector<VarId> grid_vars;

    AlgebraSpec() = default;
    AlgebraSpec(std::string id_, std::vector<std::pair<std::string, Cone>> variables,
                std::vector<std::string> grid = {});

    bool declares(VarId v) const;
    // First monomial of p violating the cone (or using an undeclared
    // variable); nullopt means p is a member.
    std::optional<Monomial> violation(const LaurentPoly& p) const;
    bool member(const LaurentPoly& p) const { return !violation(p); }
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

// Unital ring morphism between section algebras, given by the images of the
// source generators. Negative exponents require the image of that generator
// to be a single term (a unit of the target Laurent ring).
struct MorphismSpec {
    std::string id;
    AlgebraPtr source;
    AlgebraPtr target;
    std::map<VarId, LaurentPoly> substitution;

    MorphismSpec() = default;
    MorphismSpec(std::string id_, AlgebraPtr src, AlgebraPtr tgt,
                 std::map<std::string, std::string> subs);

    LaurentPoly apply(const LaurentPoly& p) const;

    struct Applied {
        LaurentPoly value;
        // First monomial of the image outside the target cone. A legal
        // Laurent result; the caller decides severity.
        std::optional<Monomial> cone_violation;
    };
    Applied apply_checked(const LaurentPoly& p) const;
};

using MorphismPtr = std::shared_ptr<const MorphismSpec>;

MorphismPtr identity_morphism(const AlgebraPtr& a, const AlgebraPtr& b);

} // namespace gsd
