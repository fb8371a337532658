#include "gsd/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <unordered_map>

namespace gsd {

namespace {

struct VarStore {
    std::vector<std::string> names;
    std::unordered_map<std::string, VarId> ids;
    std::mutex mutex;
};

VarStore& store() {
    static VarStore s;
    return s;
}

} // namespace

VarId VarTable::intern(std::string_view name) {
    auto& s = store();
    std::lock_guard<std::mutex> lock(s.mutex);
    auto it = s.ids.find(std::string(name));
    if (it != s.ids.end()) return it->second;
    VarId id = static_cast<VarId>(s.names.size());
    s.names.emplace_back(name);
    s.ids.emplace(std::string(name), id);
    return id;
}

const std::string& VarTable::name(VarId id) {
    auto& s = store();
    std::lock_guard<std::mutex> lock(s.mutex);
    return s.names.at(id);
}

std::optional<VarId> VarTable::lookup(std::string_view name) {
    auto& s = store();
    std::lock_guard<std::mutex> lock(s.mutex);
    auto it = s.ids.find(std::string(name));
    if (it == s.ids.end()) return std::nullopt;
    return it->second;
}

Monomial::Monomial(std::vector<std::pair<VarId, int>> factors) : f_(std::move(factors)) {
    normalize();
}

void Monomial::normalize() {
    std::sort(f_.begin(), f_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<VarId, int>> merged;
    for (const auto& [v, e] : f_) {
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += e;
        else
            merged.emplace_back(v, e);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& p) { return p.second == 0; }),
                 merged.end());
    f_ = std::move(merged);
}

Monomial Monomial::var(VarId v, int exp) {
    Monomial m;
    if (exp != 0) m.f_.emplace_back(v, exp);
    return m;
}

int Monomial::exponent(VarId v) const {
    for (const auto& [var, e] : f_)
        if (var == v) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
        if (f_[i].first < o.f_[j].first)
            r.f_.push_back(f_[i++]);
        else if (o.f_[j].first < f_[i].first)
            r.f_.push_back(o.f_[j++]);
        else {
            int e = f_[i].second + o.f_[j].second;
            if (e != 0) r.f_.emplace_back(f_[i].first, e);
            ++i, ++j;
        }
    }
    for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
    for (; j < o.f_.size(); ++j) r.f_.push_back(o.f_[j]);
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r = *this;
    for (auto& [v, e] : r.f_) e = -e;
    return r;
}

Monomial Monomial::pow(int e) const {
    Monomial r = *this;
    if (e == 0) return Monomial();
    for (auto& [v, ex] : r.f_) ex *= e;
    return r;
}

std::string Monomial::str() const {
    if (f_.empty()) return "1";
    std::vector<std::pair<std::string, int>> named;
    named.reserve(f_.size());
    for (const auto& [v, e] : f_) named.emplace_back(VarTable::name(v), e);
    std::sort(named.begin(), named.end());
    std::string s;
    for (const auto& [n, e] : named) {
        if (!s.empty()) s += '*';
        s += n;
        if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
}

namespace {

// Term order for canonical printing: walk the union of variables in name
// order; the term with the larger exponent at the first difference prints
// first. Internal storage uses plain Monomial::operator< instead.
bool print_before(const Monomial& a, const Monomial& b) {
    std::map<std::string, std::pair<int, int>> exps;
    for (const auto& [v, e] : a.factors()) exps[VarTable::name(v)].first = e;
    for (const auto& [v, e] : b.factors()) exps[VarTable::name(v)].second = e;
    for (const auto& [n, p] : exps) {
        if (p.first != p.second) return p.first > p.second;
    }
    return false;
}

} // namespace

LaurentPoly LaurentPoly::from_map(std::map<Monomial, Rational>&& m) {
    LaurentPoly p;
    p.t_.reserve(m.size());
    for (auto& [mon, c] : m)
        if (c != 0) p.t_.emplace_back(mon, std::move(c));
    return p;
}

LaurentPoly LaurentPoly::constant(Rational c) {
    LaurentPoly p;
    if (c != 0) p.t_.emplace_back(Monomial(), std::move(c));
    return p;
}

LaurentPoly LaurentPoly::variable(VarId v, int exp) {
    return term(Monomial::var(v, exp), 1);
}

LaurentPoly LaurentPoly::term(Monomial m, Rational c) {
    LaurentPoly p;
    if (c != 0) p.t_.emplace_back(std::move(m), std::move(c));
    return p;
}

Rational LaurentPoly::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m,
                               [](const auto& a, const Monomial& b) { return a.first < b; });
    if (it != t_.end() && it->first == m) return it->second;
    return 0;
}

bool LaurentPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_[0].first.is_constant());
}

Rational LaurentPoly::constant_value() const {
    if (t_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
    return t_[0].second;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r;
    r.t_.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
        if (t_[i].first < o.t_[j].first)
            r.t_.push_back(t_[i++]);
        else if (o.t_[j].first < t_[i].first)
            r.t_.push_back(o.t_[j++]);
        else {
            Rational c = t_[i].second + o.t_[j].second;
            if (c != 0) r.t_.emplace_back(t_[i].first, std::move(c));
            ++i, ++j;
        }
    }
    for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
    for (; j < o.t_.size(); ++j) r.t_.push_back(o.t_[j]);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::map<Monomial, Rational> acc;
    for (const auto& [ma, ca] : t_)
        for (const auto& [mb, cb] : o.t_)
            acc[ma * mb] += ca * cb;
    return from_map(std::move(acc));
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
    if (c == 0) return {};
    LaurentPoly r = *this;
    for (auto& [m, coeff] : r.t_) coeff *= c;
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly r = one();
    LaurentPoly base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

LaurentPoly LaurentPoly::derivative(VarId v, int order) const {
    LaurentPoly cur = *this;
    for (int k = 0; k < order; ++k) {
        std::map<Monomial, Rational> acc;
        for (const auto& [m, c] : cur.t_) {
            int e = m.exponent(v);
            if (e == 0) continue;
            acc[m * Monomial::var(v, -1)] += c * e;
        }
        cur = from_map(std::move(acc));
    }
    return cur;
}

std::set<VarId> LaurentPoly::variables() const {
    std::set<VarId> vs;
    for (const auto& [m, c] : t_)
        for (const auto& [v, e] : m.factors()) vs.insert(v);
    return vs;
}

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::vector<const std::pair<Monomial, Rational>*> order;
    order.reserve(t_.size());
    for (const auto& t : t_) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](const auto* a, const auto* b) { return print_before(a->first, b->first); });
    std::string s;
    bool first = true;
    for (const auto* t : order) {
        const auto& [m, c] = *t;
        Rational abs = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) s += '-';
            first = false;
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (m.is_constant()) {
            s += ratio_string(abs);
        } else if (abs == 1) {
            s += m.str();
        } else {
            s += ratio_string(abs);
            s += '*';
            s += m.str();
        }
    }
    return s;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::set<std::string>* universe)
        : text_(text), universe_(universe) {}

    LaurentPoly parse() {
        skip_ws();
        bool neg = accept('-');
        LaurentPoly p = parse_term();
        if (neg) p = -p;
        skip_ws();
        while (pos_ < text_.size()) {
            char op = text_[pos_];
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            ++pos_;
            LaurentPoly t = parse_term();
            p = op == '+' ? p + t : p - t;
            skip_ws();
        }
        return p;
    }

private:
    std::string_view text_;
    const std::set<std::string>* universe_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool peek_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    bool peek_ident() {
        skip_ws();
        return pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
    }

    BigInt parse_uint() {
        skip_ws();
        if (!peek_digit()) fail("expected integer");
        BigInt n = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            n = n * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return n;
    }

    int parse_sint() {
        bool neg = accept('-');
        BigInt n = parse_uint();
        if (n > 1000000) fail("exponent too large");
        int v = static_cast<int>(n);
        return neg ? -v : v;
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos_;
        if (!peek_ident()) fail("expected identifier");
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (universe_ && !universe_->count(name)) {
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        return name;
    }

    Rational parse_coeff() {
        BigInt num = parse_uint();
        if (accept('/')) {
            BigInt den = parse_uint();
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    LaurentPoly parse_factor() {
        std::string name = parse_ident();
        int exp = 1;
        if (accept('^')) exp = parse_sint();
        return LaurentPoly::variable(VarTable::intern(name), exp);
    }

    LaurentPoly parse_term() {
        LaurentPoly p;
        if (peek_digit())
            p = LaurentPoly::constant(parse_coeff());
        else if (peek_ident())
            p = parse_factor();
        else
            fail("expected coefficient or identifier");
        while (accept('*')) p = p * parse_factor();
        return p;
    }
};

} // namespace

LaurentPoly parse_poly(std::string_view text, const std::set<std::string>* universe) {
    return Parser(text, universe).parse();
}

} // namespace gsd
