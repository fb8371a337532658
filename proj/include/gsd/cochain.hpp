#pragma once

#include "gsd/algebra.hpp"

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace gsd {

// Source/target algebras of a multilinear map.  Arity is the number of
// sources; the shifted (Gerstenhaber) degree is arity - 1.
struct Signature {
    std::vector<AlgebraPtr> sources;
    AlgebraPtr target;

    std::size_t arity() const { return sources.size(); }
    int degree() const { return static_cast<int>(sources.size()) - 1; }
    bool operator==(const Signature& o) const;
    std::string str() const;
    // Deterministic key ("U,V->W") used to group direct-sum components.
    std::string key() const { return str(); }
};

struct SpliceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// One slot of a polydifferential term: optionally pull the input back along
// a morphism, then differentiate in the target chart.
struct SlotFactor {
    MorphismPtr pullback; // null = identity
    std::map<VarId, int> derivs;
};

// coeff * prod_slots d^{derivs}(pullback(input_slot)), coeff over the target
// chart. Summing these covers every bidifferential operator in the paper;
// compositions are separate nodes.
struct DiffTerm {
    LaurentPoly coeff;
    std::vector<SlotFactor> slots;
};

// A multilinear cochain between tensor powers of section spaces, represented
// as an expression tree and evaluated on demand (normalization by
// evaluation). Slots occur exactly linearly along every path, so evaluation
// is multilinear by construction. Immutable; copies share structure.
class Cochain {
public:
    Cochain() = default;

    static Cochain zero(Signature sig);
    static Cochain from_terms(Signature sig, std::vector<DiffTerm> terms);
    // The commutative product (a_1, ..., a_q) -> a_1 ... a_q on one chart.
    static Cochain multiply_images(const AlgebraPtr& chart, std::size_t arity = 2);
    static Cochain identity(const AlgebraPtr& chart);
    // Arity-1 cochain applying a ring morphism.
    static Cochain from_morphism(const MorphismPtr& m);

    bool valid() const { return node_ != nullptr; }
    const Signature& signature() const { return sig_; }
    std::size_t arity() const { return sig_.arity(); }
    int degree() const { return sig_.degree(); }

    // Exact evaluation. Throws on arity mismatch or inputs outside their
    // source algebras.
    LaurentPoly evaluate(std::span<const LaurentPoly> inputs) const;
    LaurentPoly operator()(std::initializer_list<LaurentPoly> inputs) const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const { return scaled(-1); }
    Cochain scaled(const Rational& c) const;

    // Gerstenhaber insertion f o_i g; throws SpliceError when the
    // signatures do not splice.
    Cochain circle_i(const Cochain& g, std::size_t i) const;
    // f o (g_1 x ... x g_q): plug g_j into slot j of f.
    Cochain compose_tensor(const std::vector<Cochain>& inners) const;

    // Structurally zero (no terms and no compositions). Grid checks decide
    // semantic vanishing.
    bool structurally_zero() const;

private:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct TermsNode {
        std::vector<DiffTerm> terms;
    };
    struct SumNode {
        std::vector<NodePtr> parts; // same signature as the owner
    };
    struct ScaleNode {
        Rational factor;
        NodePtr inner;
    };
    struct InsertNode {
        NodePtr outer;
        Signature outer_sig;
        std::size_t at;
        NodePtr inner;
        Signature inner_sig;
    };
    struct Node {
        std::variant<TermsNode, SumNode, ScaleNode, InsertNode> v;
    };

    Signature sig_;
    NodePtr node_;

    Cochain(Signature sig, NodePtr n) : sig_(std::move(sig)), node_(std::move(n)) {}
    static LaurentPoly eval_node(const Node& n, std::span<const LaurentPoly> inputs);
};

// Hochschild bimodule data for Hom(S^q, M): the left/right actions multiply
// in M after transporting the outer argument along a morphism (identity for
// the diagonal charts), and interior slots are merged with the source
// multiplication.
struct BimoduleStructure {
    Cochain target_mult; // binary, on M's chart
    Cochain source_mult; // binary, on S's chart
    MorphismPtr transport; // S -> M; null = identity (then S = M chart)
};

// d_H(x)(s_0..s_q) = s_0.x(s_1..s_q) + sum (-1)^i x(.., s_{i-1} s_i, ..)
//                  + (-1)^{q+1} x(s_0..s_{q-1}).s_q
Cochain hochschild_d(const Cochain& x, const BimoduleStructure& bm);

// Convenience: diagonal chart with its commutative product.
BimoduleStructure diagonal_bimodule(const AlgebraPtr& chart);

// All monomial input tuples within per-slot exponent bounds; enumeration
// order is fixed, so "first counterexample" is well-defined.
struct MonomialGrid {
    std::vector<std::vector<LaurentPoly>> slots;

    // Cone-aware bounds over each slot's grid_vars: [0, bound] for NonNeg,
    // [-bound, bound] for AnyInt.
    static MonomialGrid over(const Signature& sig, int bound);
    static std::vector<LaurentPoly> chart_monomials(const AlgebraPtr& chart, int bound);
    std::size_t tuple_count() const;
};

struct GridCounterexample {
    std::vector<LaurentPoly> inputs;
    LaurentPoly lhs;
    LaurentPoly rhs;
    std::string str() const;
};

// Exact comparison on every grid tuple; reports the first difference in
// enumeration order. Honors GSD_THREADS for parallel scanning.
std::optional<GridCounterexample> equal_on_grid(const Cochain& f, const Cochain& g,
                                                const MonomialGrid& grid);
std::optional<GridCounterexample> zero_on_grid(const Cochain& f, const MonomialGrid& grid);

// (1/2)[mu, mu] for a binary endomorphism cochain; zero on a grid iff mu is
// associative there.
Cochain assoc_defect(const Cochain& mu);

} // namespace gsd
