#pragma once

#include "gsd/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsd {

using VarId = std::uint32_t;

// Process-wide variable interner. Interning order is deterministic for a
// fixed program path; printed output is ordered by name, so reports do not
// depend on interning order.
class VarTable {
public:
    static VarId intern(std::string_view name);
    static const std::string& name(VarId id);
    static std::optional<VarId> lookup(std::string_view name);
};

// Exponent vector, sorted by VarId, zero entries never stored.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<VarId, int>> factors);
    static Monomial var(VarId v, int exp = 1);

    int exponent(VarId v) const;
    bool is_constant() const { return f_.empty(); }
    const std::vector<std::pair<VarId, int>>& factors() const { return f_; }

    Monomial operator*(const Monomial& o) const;
    // Monomials form a group under multiplication.
    Monomial inverse() const;
    Monomial pow(int e) const;

    bool operator==(const Monomial& o) const { return f_ == o.f_; }
    bool operator<(const Monomial& o) const { return f_ < o.f_; }

    std::string str() const; // factors ordered by variable name

private:
    std::vector<std::pair<VarId, int>> f_;
    void normalize();
};

// Sparse multivariate Laurent polynomial with exact rational coefficients.
// Canonical form: terms sorted, no zero coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly zero() { return {}; }
    static LaurentPoly constant(Rational c);
    static LaurentPoly one() { return constant(1); }
    static LaurentPoly variable(VarId v, int exp = 1);
    static LaurentPoly term(Monomial m, Rational c);

    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }
    const std::vector<std::pair<Monomial, Rational>>& terms() const { return t_; }
    // The coefficient of m (zero if absent).
    Rational coefficient(const Monomial& m) const;
    bool is_monomial() const { return t_.size() == 1; }
    bool is_constant() const;
    // Constant term as a rational (requires is_constant or zero).
    Rational constant_value() const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly scaled(const Rational& c) const;
    LaurentPoly pow(unsigned e) const;

    // Formal partial derivative; well-defined on negative exponents.
    LaurentPoly derivative(VarId v, int order = 1) const;

    std::set<VarId> variables() const;

    bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Canonical printing: terms ordered variable-name-lexicographically,
    // higher exponent first; parseable by parse().
    std::string str() const;

private:
    std::vector<std::pair<Monomial, Rational>> t_;
    static LaurentPoly from_map(std::map<Monomial, Rational>&& m);
};

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// Grammar (whitespace-insensitive):
//   poly   := ['-'] term (('+'|'-') term)* ;
//   term   := coeff ('*' factor)* | factor ('*' factor)* ;
//   factor := ident ('^' sint)? ;
//   coeff  := uint ('/' uint)? ;
// If a universe is given, identifiers outside it are rejected.
LaurentPoly parse_poly(std::string_view text,
                       const std::set<std::string>* universe = nullptr);

} // namespace gsd
