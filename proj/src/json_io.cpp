#include "gsd/json_io.hpp"

#include <fstream>

namespace gsd {

namespace {

Cone cone_from(const std::string& s) {
    if (s == "nonneg") return Cone::NonNeg;
    if (s == "any" || s == "any-integer") return Cone::AnyInt;
    throw ConfigError("unknown cone '" + s + "' (expected nonneg | any)");
}

Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace

Cochain cochain_from_json(const Json& j, const std::map<std::string, AlgebraPtr>& algebras,
                          const std::map<std::string, MorphismPtr>& morphisms) {
    Signature sig;
    for (const auto& s : j.at("sources")) {
        auto it = algebras.find(s.get<std::string>());
        if (it == algebras.end()) throw ConfigError("cochain: unknown source algebra");
        sig.sources.push_back(it->second);
    }
    auto t = algebras.find(j.at("target").get<std::string>());
    if (t == algebras.end()) throw ConfigError("cochain: unknown target algebra");
    sig.target = t->second;

    std::set<std::string> target_universe;
    for (VarId v : sig.target->vars) target_universe.insert(VarTable::name(v));

    std::vector<DiffTerm> terms;
    for (const auto& jt : j.at("terms")) {
        DiffTerm term;
        term.coeff = parse_poly(jt.at("coeff").get<std::string>(), &target_universe);
        for (const auto& js : jt.at("slots")) {
            SlotFactor sf;
            if (js.contains("pullback")) {
                std::string name = js["pullback"].get<std::string>();
                if (name != "identity") {
                    auto it = morphisms.find(name);
                    if (it == morphisms.end())
                        throw ConfigError("cochain: unknown pullback morphism '" + name + "'");
                    sf.pullback = it->second;
                }
            }
            if (js.contains("derivs"))
                for (const auto& [var, order] : js["derivs"].items())
                    sf.derivs[VarTable::intern(var)] = order.get<int>();
            term.slots.push_back(std::move(sf));
        }
        if (term.slots.size() != sig.arity())
            throw ConfigError("cochain: slot count does not match sources");
        terms.push_back(std::move(term));
    }
    return Cochain::from_terms(std::move(sig), std::move(terms));
}

SpanDiagram diagram_from_json(const Json& j) {
    std::map<std::string, AlgebraPtr> algebras;
    for (const auto& ja : j.at("algebras")) {
        std::vector<std::pair<std::string, Cone>> vars;
        const auto& cones = ja.at("cone");
        for (const auto& v : ja.at("variables")) {
            std::string name = v.get<std::string>();
            vars.emplace_back(name, cone_from(cones.at(name).get<std::string>()));
        }
        std::vector<std::string> grid;
        if (ja.contains("grid"))
            for (const auto& v : ja["grid"]) grid.push_back(v.get<std::string>());
        std::string id = ja.at("id").get<std::string>();
        algebras[id] = std::make_shared<AlgebraSpec>(id, vars, grid);
    }

    auto chart = [&](const std::string& role) {
        std::string id = j.at("span").at(role).get<std::string>();
        auto it = algebras.find(id);
        if (it == algebras.end()) throw ConfigError("span: unknown algebra '" + id + "'");
        return it->second;
    };
    AlgebraPtr U = chart("U"), V = chart("V"), W = chart("W");

    std::map<std::string, MorphismPtr> morphisms;
    for (const auto& jm : j.at("morphisms")) {
        std::string id = jm.at("id").get<std::string>();
        AlgebraPtr src = algebras.at(jm.at("source").get<std::string>());
        AlgebraPtr tgt = algebras.at(jm.at("target").get<std::string>());
        std::map<std::string, std::string> subs;
        for (const auto& [var, image] : jm.at("substitution").items())
            subs[var] = image.get<std::string>();
        try {
            morphisms[id] = std::make_shared<MorphismSpec>(id, src, tgt, subs);
        } catch (const ParseError& e) {
            throw ConfigError("morphism " + id + ": " + e.what());
        }
    }

    auto morphism = [&](const std::string& role) {
        std::string id = j.at(role).get<std::string>();
        auto it = morphisms.find(id);
        if (it == morphisms.end()) throw ConfigError("unknown morphism '" + id + "'");
        return it->second;
    };
    SpanDiagram d = SpanDiagram::make(U, V, W, morphism("phi"), morphism("psi"));

    if (j.contains("multiplications")) {
        for (const auto& [id, lit] : j["multiplications"].items()) {
            Cochain m = cochain_from_json(lit, algebras, morphisms);
            if (id == U->id)
                d.mu = m;
            else if (id == V->id)
                d.nu = m;
            else if (id == W->id)
                d.xi = m;
            else
                throw ConfigError("multiplication override for unknown algebra '" + id + "'");
        }
    }
    if (j.contains("morphism_cochains")) {
        for (const auto& [role, lit] : j["morphism_cochains"].items()) {
            Cochain c = cochain_from_json(lit, algebras, morphisms);
            if (role == "phi")
                d.phic = c;
            else if (role == "psi")
                d.psic = c;
            else
                throw ConfigError("morphism_cochains: key must be phi or psi");
        }
    }
    return d;
}

SpanDiagram load_diagram(const std::string& path) { return diagram_from_json(load_file(path)); }

Bivector bivector_from_json(const Json& j, const AlgebraPtr& chart) {
    Bivector b;
    b.chart = chart;
    int dim = j.at("dim").get<int>();
    if (j.contains("vars")) {
        for (const auto& v : j["vars"]) b.coords.push_back(VarTable::intern(v.get<std::string>()));
    } else {
        for (VarId v : chart->grid_vars) b.coords.push_back(v);
    }
    if (static_cast<int>(b.coords.size()) != dim)
        throw ConfigError("bivector: dim does not match coordinate count");
    std::set<std::string> universe;
    for (VarId v : chart->vars) universe.insert(VarTable::name(v));
    for (const auto& [key, val] : j.at("coeffs").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw ConfigError("bivector: coeff key must be \"i,j\"");
        int i = std::stoi(key.substr(0, comma)) - 1;
        int jj = std::stoi(key.substr(comma + 1)) - 1;
        if (i < 0 || jj < 0 || i >= dim || jj >= dim || i == jj)
            throw ConfigError("bivector: coeff index out of range");
        LaurentPoly c = parse_poly(val.get<std::string>(), &universe);
        if (i < jj)
            b.upper[{i, jj}] = c;
        else
            b.upper[{jj, i}] = -c;
    }
    return b;
}

Bivector load_bivector(const std::string& path, const AlgebraPtr& chart) {
    return bivector_from_json(load_file(path), chart);
}

Json report_json(const DiagramReport& rep) {
    Json j;
    j["schema"] = 1;
    j["pass"] = rep.pass;
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.pass) jc["counterexample"] = c.detail;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    return j;
}

Json report_json(const ZkGeometry& g, const VerdictReport& rep) {
    Json j;
    j["schema"] = 1;
    j["k"] = rep.k;
    j["i"] = rep.i;
    Json table = Json::array();
    LaurentPoly zeta = LaurentPoly::variable(VarTable::intern("zeta"));
    LaurentPoly v = LaurentPoly::variable(VarTable::intern("v"));
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c)
                for (int dd = 0; dd <= 2; ++dd) {
                    LaurentPoly val = rep.residual(
                        {zeta.pow(a) * v.pow(b), zeta.pow(c) * v.pow(dd)});
                    if (val.is_zero()) continue;
                    Json row;
                    row["a"] = a;
                    row["b"] = b;
                    row["c"] = c;
                    row["d"] = dd;
                    row["value"] = val.str();
                    table.push_back(row);
                }
    j["residual_monomial_table"] = table;
    j["bivector_frameU"] = rep.hkr.coeff_frame_U.str();
    Json cech;
    cech["trivial"] = rep.cech.trivial;
    if (rep.cech.trivial) {
        Json dec;
        dec["p_U"] = rep.cech.p_U.str();
        dec["p_V"] = rep.cech.p_V.str();
        cech["decomposition"] = dec;
    } else {
        Json coords;
        for (const auto& [e, coeff] : rep.cech.basis)
            coords["z^" + std::to_string(e)] = coeff.str();
        cech["basis_coords"] = coords;
    }
    j["cech"] = cech;
    j["verdict"] = rep.obstructed ? "obstructed" : "unobstructed";
    return j;
}

Json mc_report_json(const std::vector<McOrderRow>& rows) {
    Json j;
    j["schema"] = 1;
    Json orders = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["order"] = r.n;
        row["multiplication_residual_zero"] = r.g_zero;
        row["morphism_residual_zero"] = r.a_zero;
        if (!r.counterexample.empty()) row["counterexample"] = r.counterexample;
        orders.push_back(row);
    }
    j["orders"] = orders;
    return j;
}

} // namespace gsd
