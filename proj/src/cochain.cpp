#include "gsd/cochain.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace gsd {

bool Signature::operator==(const Signature& o) const {
    if (target->id != o.target->id || sources.size() != o.sources.size()) return false;
    for (std::size_t i = 0; i < sources.size(); ++i)
        if (sources[i]->id != o.sources[i]->id) return false;
    return true;
}

std::string Signature::str() const {
    std::string s;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (i) s += ',';
        s += sources[i]->id;
    }
    s += "->";
    s += target->id;
    return s;
}

Cochain Cochain::zero(Signature sig) {
    return Cochain(std::move(sig), std::make_shared<Node>(Node{TermsNode{}}));
}

Cochain Cochain::from_terms(Signature sig, std::vector<DiffTerm> terms) {
    for (const auto& t : terms)
        if (t.slots.size() != sig.arity())
            throw std::invalid_argument("DiffTerm slot count does not match signature arity");
    return Cochain(std::move(sig), std::make_shared<Node>(Node{TermsNode{std::move(terms)}}));
}

Cochain Cochain::multiply_images(const AlgebraPtr& chart, std::size_t arity) {
    Signature sig{std::vector<AlgebraPtr>(arity, chart), chart};
    DiffTerm t{LaurentPoly::one(), std::vector<SlotFactor>(arity)};
    return from_terms(std::move(sig), {std::move(t)});
}

Cochain Cochain::identity(const AlgebraPtr& chart) { return multiply_images(chart, 1); }

Cochain Cochain::from_morphism(const MorphismPtr& m) {
    Signature sig{{m->source}, m->target};
    DiffTerm t{LaurentPoly::one(), {SlotFactor{m, {}}}};
    return from_terms(std::move(sig), {std::move(t)});
}

bool Cochain::structurally_zero() const {
    if (!node_) return true;
    if (const auto* tn = std::get_if<TermsNode>(&node_->v)) return tn->terms.empty();
    if (const auto* sn = std::get_if<SumNode>(&node_->v)) return sn->parts.empty();
    return false;
}

LaurentPoly Cochain::evaluate(std::span<const LaurentPoly> inputs) const {
    if (!node_) throw std::logic_error("evaluate on empty cochain");
    if (inputs.size() != sig_.arity())
        throw std::invalid_argument("cochain arity mismatch: expected " +
                                    std::to_string(sig_.arity()) + " inputs, got " +
                                    std::to_string(inputs.size()));
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (auto bad = sig_.sources[i]->violation(inputs[i]))
            throw std::domain_error("input " + std::to_string(i) + " (" + inputs[i].str() +
                                    ") is not a member of algebra " + sig_.sources[i]->id +
                                    " (offending monomial " + bad->str() + ")");
    return eval_node(*node_, inputs);
}

LaurentPoly Cochain::operator()(std::initializer_list<LaurentPoly> inputs) const {
    std::vector<LaurentPoly> v(inputs);
    return evaluate(v);
}

LaurentPoly Cochain::eval_node(const Node& n, std::span<const LaurentPoly> inputs) {
    if (const auto* tn = std::get_if<TermsNode>(&n.v)) {
        LaurentPoly out;
        for (const DiffTerm& t : tn->terms) {
            LaurentPoly prod = t.coeff;
            for (std::size_t i = 0; i < t.slots.size() && !prod.is_zero(); ++i) {
                const SlotFactor& sf = t.slots[i];
                LaurentPoly img = sf.pullback ? sf.pullback->apply(inputs[i]) : inputs[i];
                for (const auto& [v, order] : sf.derivs) img = img.derivative(v, order);
                prod = prod * img;
            }
            out += prod;
        }
        return out;
    }
    if (const auto* sn = std::get_if<SumNode>(&n.v)) {
        LaurentPoly out;
        for (const auto& p : sn->parts) out += eval_node(*p, inputs);
        return out;
    }
    if (const auto* sc = std::get_if<ScaleNode>(&n.v))
        return eval_node(*sc->inner, inputs).scaled(sc->factor);
    const auto& in = std::get<InsertNode>(n.v);
    std::size_t gq = in.inner_sig.arity();
    LaurentPoly mid = eval_node(*in.inner, inputs.subspan(in.at, gq));
    std::vector<LaurentPoly> outer_inputs;
    outer_inputs.reserve(in.outer_sig.arity());
    for (std::size_t i = 0; i < in.at; ++i) outer_inputs.push_back(inputs[i]);
    outer_inputs.push_back(std::move(mid));
    for (std::size_t i = in.at + gq; i < inputs.size(); ++i) outer_inputs.push_back(inputs[i]);
    return eval_node(*in.outer, outer_inputs);
}

Cochain Cochain::operator+(const Cochain& o) const {
    if (!valid()) return o;
    if (!o.valid()) return *this;
    if (!(sig_ == o.sig_))
        throw std::invalid_argument("cochain sum: signature mismatch " + sig_.str() + " vs " +
                                    o.sig_.str());
    if (structurally_zero()) return o;
    if (o.structurally_zero()) return *this;
    SumNode sum;
    auto flatten = [&sum](const NodePtr& n) {
        if (const auto* sn = std::get_if<SumNode>(&n->v))
            sum.parts.insert(sum.parts.end(), sn->parts.begin(), sn->parts.end());
        else
            sum.parts.push_back(n);
    };
    flatten(node_);
    flatten(o.node_);
    return Cochain(sig_, std::make_shared<Node>(Node{std::move(sum)}));
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(-1); }

Cochain Cochain::scaled(const Rational& c) const {
    if (!valid()) return *this;
    if (c == 1) return *this;
    if (const auto* sc = std::get_if<ScaleNode>(&node_->v))
        return Cochain(sig_, std::make_shared<Node>(Node{ScaleNode{c * sc->factor, sc->inner}}));
    return Cochain(sig_, std::make_shared<Node>(Node{ScaleNode{c, node_}}));
}

Cochain Cochain::circle_i(const Cochain& g, std::size_t i) const {
    if (!valid() || !g.valid()) throw std::logic_error("circle_i on empty cochain");
    if (i >= arity())
        throw SpliceError("circle_i: slot " + std::to_string(i) + " out of range for arity " +
                          std::to_string(arity()));
    if (sig_.sources[i]->id != g.sig_.target->id)
        throw SpliceError("circle_i: slot " + std::to_string(i) + " of " + sig_.str() +
                          " does not accept target of " + g.sig_.str());
    Signature spliced;
    spliced.target = sig_.target;
    spliced.sources.reserve(arity() + g.arity() - 1);
    for (std::size_t k = 0; k < i; ++k) spliced.sources.push_back(sig_.sources[k]);
    for (const auto& s : g.sig_.sources) spliced.sources.push_back(s);
    for (std::size_t k = i + 1; k < arity(); ++k) spliced.sources.push_back(sig_.sources[k]);
    return Cochain(std::move(spliced),
                   std::make_shared<Node>(Node{InsertNode{node_, sig_, i, g.node_, g.sig_}}));
}

Cochain Cochain::compose_tensor(const std::vector<Cochain>& inners) const {
    if (inners.size() != arity())
        throw SpliceError("compose_tensor: expected " + std::to_string(arity()) + " inner maps");
    Cochain result = *this;
    // Insert right-to-left so earlier slot indices stay valid.
    for (std::size_t j = inners.size(); j-- > 0;) result = result.circle_i(inners[j], j);
    return result;
}

BimoduleStructure diagonal_bimodule(const AlgebraPtr& chart) {
    return BimoduleStructure{Cochain::multiply_images(chart), Cochain::multiply_images(chart),
                             nullptr};
}

Cochain hochschild_d(const Cochain& x, const BimoduleStructure& bm) {
    const std::size_t q = x.arity();
    const AlgebraPtr& S = bm.source_mult.signature().target;
    Cochain transport =
        bm.transport ? Cochain::from_morphism(bm.transport) : Cochain::identity(S);

    // s_0 . x(s_1, ..., s_q)
    Cochain lmul = bm.target_mult.circle_i(transport, 0);
    Cochain d = lmul.circle_i(x, 1);
    // interior face maps merge adjacent inputs with the source product
    for (std::size_t i = 1; i <= q; ++i) {
        Cochain merged = x.circle_i(bm.source_mult, i - 1);
        d = d + merged.scaled((i % 2 == 0) ? 1 : -1);
    }
    // (-1)^{q+1} x(s_0, ..., s_{q-1}) . s_q
    Cochain rmul = bm.target_mult.circle_i(transport, 1);
    d = d + rmul.circle_i(x, 0).scaled(((q + 1) % 2 == 0) ? 1 : -1);
    return d;
}

std::vector<LaurentPoly> MonomialGrid::chart_monomials(const AlgebraPtr& chart, int bound) {
    std::vector<std::pair<VarId, std::pair<int, int>>> ranges;
    for (VarId v : chart->grid_vars) {
        Cone c = chart->cone.at(v);
        ranges.emplace_back(v, std::pair<int, int>{c == Cone::AnyInt ? -bound : 0, bound});
    }
    std::vector<LaurentPoly> out;
    std::vector<int> exps(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) exps[i] = ranges[i].second.first;
    while (true) {
        Monomial m;
        for (std::size_t i = 0; i < ranges.size(); ++i)
            m = m * Monomial::var(ranges[i].first, exps[i]);
        out.push_back(LaurentPoly::term(m, 1));
        std::size_t k = ranges.size();
        while (k > 0) {
            --k;
            if (exps[k] < ranges[k].second.second) {
                ++exps[k];
                break;
            }
            exps[k] = ranges[k].second.first;
            if (k == 0) return out;
        }
        if (ranges.empty()) return out;
    }
}

MonomialGrid MonomialGrid::over(const Signature& sig, int bound) {
    MonomialGrid g;
    for (const auto& src : sig.sources) g.slots.push_back(chart_monomials(src, bound));
    return g;
}

std::size_t MonomialGrid::tuple_count() const {
    std::size_t n = 1;
    for (const auto& s : slots) n *= s.size();
    return n;
}

std::string GridCounterexample::str() const {
    std::ostringstream os;
    os << "inputs (";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (i) os << ", ";
        os << inputs[i].str();
    }
    os << "): lhs = " << lhs.str() << ", rhs = " << rhs.str();
    return os.str();
}

namespace {

int thread_budget() {
    if (const char* env = std::getenv("GSD_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::optional<GridCounterexample> scan_range(const Cochain& f, const Cochain* g,
                                             const MonomialGrid& grid, std::size_t begin,
                                             std::size_t end) {
    const std::size_t slots = grid.slots.size();
    std::vector<LaurentPoly> inputs(slots);
    for (std::size_t flat = begin; flat < end; ++flat) {
        std::size_t rest = flat;
        for (std::size_t s = slots; s-- > 0;) {
            const auto& options = grid.slots[s];
            inputs[s] = options[rest % options.size()];
            rest /= options.size();
        }
        LaurentPoly lhs = f.evaluate(inputs);
        LaurentPoly rhs = g ? g->evaluate(inputs) : LaurentPoly::zero();
        if (lhs != rhs) return GridCounterexample{inputs, lhs, rhs};
    }
    return std::nullopt;
}

} // namespace

std::optional<GridCounterexample> equal_on_grid(const Cochain& f, const Cochain& g,
                                                const MonomialGrid& grid) {
    if (!(f.signature() == g.signature()))
        throw std::invalid_argument("equal_on_grid: signature mismatch " + f.signature().str() +
                                    " vs " + g.signature().str());
    if (grid.slots.size() != f.arity())
        throw std::invalid_argument("equal_on_grid: grid slot count mismatch");
    const std::size_t total = grid.tuple_count();
    const int threads = std::min<int>(thread_budget(), 16);
    if (threads <= 1 || total < 256) return scan_range(f, &g, grid, 0, total);

    // Each worker scans a contiguous block; the earliest hit wins, so the
    // reported counterexample is the same as in a sequential scan.
    std::vector<std::optional<GridCounterexample>> hits(static_cast<std::size_t>(threads));
    std::vector<std::size_t> hit_at(static_cast<std::size_t>(threads), total);
    std::vector<std::thread> pool;
    std::size_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t b = static_cast<std::size_t>(t) * chunk;
        std::size_t e = std::min(total, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, t, b, e] {
            auto r = scan_range(f, &g, grid, b, e);
            if (r) {
                hits[static_cast<std::size_t>(t)] = std::move(r);
                hit_at[static_cast<std::size_t>(t)] = b;
            }
        });
    }
    for (auto& th : pool) th.join();
    std::optional<GridCounterexample> best;
    std::size_t best_at = total;
    for (std::size_t t = 0; t < hits.size(); ++t)
        if (hits[t] && hit_at[t] < best_at) {
            best = hits[t];
            best_at = hit_at[t];
        }
    return best;
}

std::optional<GridCounterexample> zero_on_grid(const Cochain& f, const MonomialGrid& grid) {
    return equal_on_grid(f, Cochain::zero(f.signature()), grid);
}

Cochain assoc_defect(const Cochain& mu) {
    if (mu.arity() != 2 || !(mu.signature().sources[0]->id == mu.signature().target->id) ||
        !(mu.signature().sources[1]->id == mu.signature().target->id))
        throw std::invalid_argument("assoc_defect: expects a binary endomorphism cochain");
    // (1/2)[mu, mu] = mu o_0 mu - mu o_1 mu
    return mu.circle_i(mu, 0) - mu.circle_i(mu, 1);
}

} // namespace gsd
