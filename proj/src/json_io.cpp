#include "boolecc/json_io.hpp"

#include <stdexcept>

namespace boolecc {

namespace {
// cpp_int reads a leading 0 as an octal prefix; force base 10
Int int_from_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    while (i + 1 < s.size() && s[i] == '0') ++i;
    Int v(s.substr(i));
    return neg ? Int(-v) : v;
}

Rat parse_rat_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rat(int_from_decimal(s.substr(0, slash)), int_from_decimal(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Int den = 1;
        for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rat(int_from_decimal(digits), den);
    }
    return Rat(int_from_decimal(s));
}
}  // namespace

json group_to_json(const GroupSpecPtr& g) {
    switch (g->kind()) {
        case GroupSpec::Kind::cyclic: {
            json j;
            j["kind"] = "cyclic";
            if (g->modulus() <= Int(std::numeric_limits<std::int64_t>::max()))
                j["m"] = static_cast<std::int64_t>(g->modulus());
            else
                j["m"] = g->modulus().str();
            return j;
        }
        case GroupSpec::Kind::integers: return json{{"kind", "integers"}};
        case GroupSpec::Kind::rationals: return json{{"kind", "rationals"}};
        case GroupSpec::Kind::product: {
            json parts = json::array();
            for (const auto& p : g->parts()) parts.push_back(group_to_json(p));
            return json{{"kind", "product"}, {"parts", parts}};
        }
    }
    throw std::logic_error("unreachable");
}

GroupSpecPtr group_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") {
        const auto& m = j.at("m");
        if (m.is_string()) return GroupSpec::cyclic(int_from_decimal(m.get<std::string>()));
        return GroupSpec::cyclic(Int(m.get<std::int64_t>()));
    }
    if (kind == "integers") return GroupSpec::integers();
    if (kind == "rationals") return GroupSpec::rationals();
    if (kind == "product") {
        std::vector<GroupSpecPtr> parts;
        for (const auto& p : j.at("parts")) parts.push_back(group_from_json(p));
        return GroupSpec::product(std::move(parts));
    }
    throw std::invalid_argument("unknown group kind: " + kind);
}

json value_to_json(const GroupValue& v) {
    switch (v.spec()->kind()) {
        case GroupSpec::Kind::cyclic:
        case GroupSpec::Kind::integers: return v.as_int().str();
        case GroupSpec::Kind::rationals: return v.canonical();
        case GroupSpec::Kind::product: {
            json arr = json::array();
            for (const auto& c : v.components()) arr.push_back(value_to_json(c));
            return arr;
        }
    }
    throw std::logic_error("unreachable");
}


GroupValue value_from_json(const GroupSpecPtr& g, const json& j) {
    switch (g->kind()) {
        case GroupSpec::Kind::cyclic:
        case GroupSpec::Kind::integers: {
            if (j.is_string()) return GroupValue::from_int(g, int_from_decimal(j.get<std::string>()));
            return GroupValue::from_int(g, Int(j.get<std::int64_t>()));
        }
        case GroupSpec::Kind::rationals: {
            if (j.is_string()) return GroupValue::from_rational(g, parse_rat_string(j.get<std::string>()));
            return GroupValue::from_rational(g, Rat(j.get<std::int64_t>()));
        }
        case GroupSpec::Kind::product: {
            std::vector<GroupValue> vs;
            const auto& parts = g->parts();
            if (!j.is_array() || j.size() != parts.size())
                throw std::invalid_argument("product value arity mismatch");
            for (size_t i = 0; i < parts.size(); ++i)
                vs.push_back(value_from_json(parts[i], j[i]));
            return GroupValue::tuple(g, std::move(vs));
        }
    }
    throw std::logic_error("unreachable");
}

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_number_float()) return parse_rat_string(j.dump());
    throw std::invalid_argument("expected rational");
}

json rat_to_json(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

json poly_to_json(const MultilinearPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["vars"] = m;
        t["coeff"] = value_to_json(c);
        terms.push_back(std::move(t));
    }
    return json{{"n", p.n()}, {"d", p.degree_bound()}, {"terms", terms}};
}

MultilinearPoly poly_from_json(const GroupSpecPtr& g, const json& j) {
    MultilinearPoly p(j.at("n").get<std::uint32_t>(), j.at("d").get<int>(), g);
    for (const auto& t : j.at("terms")) {
        Monomial m = t.at("vars").get<Monomial>();
        p.set_coeff(m, value_from_json(g, t.at("coeff")));
    }
    return p;
}

json embedding_to_json(const SubcubeEmbedding& e) {
    return json{{"n", e.n}, {"k", e.k}, {"a", e.a.to_string()}, {"h", e.h}};
}

SubcubeEmbedding embedding_from_json(const json& j) {
    SubcubeEmbedding e;
    e.n = j.at("n").get<std::uint32_t>();
    e.k = j.at("k").get<std::uint32_t>();
    e.a = PointN::from_string(j.at("a").get<std::string>());
    e.h = j.at("h").get<std::vector<std::uint32_t>>();
    e.validate();
    return e;
}

json table_to_json(const DenseTable& t) {
    json vals = json::array();
    for (const auto& v : t.values) vals.push_back(value_to_json(v));
    return json{{"group", group_to_json(t.group)}, {"n", t.n}, {"values", vals}};
}

DenseTable table_from_json(const json& j) {
    DenseTable t;
    t.group = group_from_json(j.at("group"));
    t.n = j.at("n").get<std::uint32_t>();
    const auto& vals = j.at("values");
    if (vals.size() != (size_t(1) << t.n))
        throw std::invalid_argument("table must have 2^n values");
    for (const auto& v : vals) t.values.push_back(value_from_json(t.group, v));
    return t;
}

std::unique_ptr<PolyOracle> make_oracle(const json& spec) {
    GroupSpecPtr g = group_from_json(spec.at("group"));
    const std::uint32_t n = spec.at("n").get<std::uint32_t>();
    MultilinearPoly truth = poly_from_json(g, spec.at("truth"));
    if (truth.n() != n) throw std::invalid_argument("truth dimension mismatch");

    ErrorModel model;
    if (spec.contains("error")) {
        const json& e = spec.at("error");
        const std::string kind = e.at("kind").get<std::string>();
        const std::uint64_t seed = spec.value("seed", std::uint64_t(0));
        if (kind == "none") {
            model = ErrorModel::none();
        } else if (kind == "random_density") {
            model = ErrorModel::random_density(rat_from_json(e.at("delta")),
                                               e.value("key", seed));
        } else if (kind == "explicit_set") {
            std::vector<std::pair<PointN, GroupValue>> pts;
            const auto& points = e.at("points");
            const auto& values = e.at("values");
            if (points.size() != values.size())
                throw std::invalid_argument("explicit_set arity mismatch");
            for (size_t i = 0; i < points.size(); ++i)
                pts.emplace_back(PointN::from_string(points[i].get<std::string>()),
                                 value_from_json(g, values[i]));
            model = ErrorModel::explicit_set(std::move(pts));
        } else if (kind == "band_adversary") {
            std::vector<GroupValue> vals;
            for (const auto& v : e.at("values")) vals.push_back(value_from_json(g, v));
            model = ErrorModel::band(e.at("width").get<std::uint32_t>(), std::move(vals),
                                     e.value("key", seed));
        } else if (kind == "planted_pair") {
            model = ErrorModel::planted_pair(poly_from_json(g, e.at("p2")),
                                             e.at("selector").get<std::uint32_t>());
        } else {
            throw std::invalid_argument("unknown error kind: " + kind);
        }
    }
    return std::make_unique<PolyOracle>(std::move(truth), std::move(model));
}

}  // namespace boolecc
