#include "boolecc/group.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace boolecc {

GroupSpecPtr GroupSpec::cyclic(Int m) {
    if (m < 1) throw std::invalid_argument("cyclic modulus must be >= 1");
    return GroupSpecPtr(new GroupSpec(Kind::cyclic, std::move(m), {}));
}

GroupSpecPtr GroupSpec::integers() {
    return GroupSpecPtr(new GroupSpec(Kind::integers, 0, {}));
}

GroupSpecPtr GroupSpec::rationals() {
    return GroupSpecPtr(new GroupSpec(Kind::rationals, 0, {}));
}

GroupSpecPtr GroupSpec::product(std::vector<GroupSpecPtr> parts) {
    if (parts.empty()) throw std::invalid_argument("product arity must be >= 1");
    for (const auto& p : parts)
        if (!p) throw std::invalid_argument("null part in product spec");
    return GroupSpecPtr(new GroupSpec(Kind::product, 0, std::move(parts)));
}

bool GroupSpec::same_as(const GroupSpec& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::cyclic: return modulus_ == other.modulus_;
        case Kind::integers:
        case Kind::rationals: return true;
        case Kind::product: {
            if (parts_.size() != other.parts_.size()) return false;
            for (size_t i = 0; i < parts_.size(); ++i)
                if (!parts_[i]->same_as(*other.parts_[i])) return false;
            return true;
        }
    }
    return false;
}

bool GroupSpec::is_finite() const {
    switch (kind_) {
        case Kind::cyclic: return true;
        case Kind::integers:
        case Kind::rationals: return false;
        case Kind::product:
            return std::all_of(parts_.begin(), parts_.end(),
                               [](const GroupSpecPtr& p) { return p->is_finite(); });
    }
    return false;
}

std::optional<Int> GroupSpec::size() const {
    switch (kind_) {
        case Kind::cyclic: return modulus_;
        case Kind::integers:
        case Kind::rationals: return std::nullopt;
        case Kind::product: {
            Int total = 1;
            for (const auto& p : parts_) {
                auto s = p->size();
                if (!s) return std::nullopt;
                total *= *s;
            }
            return total;
        }
    }
    return std::nullopt;
}

std::string GroupSpec::describe() const {
    switch (kind_) {
        case Kind::cyclic: return "Z_" + modulus_.str();
        case Kind::integers: return "Z";
        case Kind::rationals: return "Q";
        case Kind::product: {
            std::string out = "(";
            for (size_t i = 0; i < parts_.size(); ++i) {
                if (i) out += " x ";
                out += parts_[i]->describe();
            }
            return out + ")";
        }
    }
    return "?";
}

namespace {

void require_spec(const GroupSpecPtr& spec) {
    if (!spec) throw std::invalid_argument("GroupValue requires a spec");
}

void require_same(const GroupValue& a, const GroupValue& b) {
    if (!a.spec() || !b.spec() || !a.spec()->same_as(*b.spec()))
        throw std::invalid_argument("cross-spec group operation rejected");
}

Int mod_reduce(Int v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

GroupValue GroupValue::zero(const GroupSpecPtr& spec) {
    require_spec(spec);
    GroupValue g;
    g.spec_ = spec;
    switch (spec->kind()) {
        case GroupSpec::Kind::cyclic:
        case GroupSpec::Kind::integers: g.payload_ = Int(0); break;
        case GroupSpec::Kind::rationals: g.payload_ = Rat(0); break;
        case GroupSpec::Kind::product: {
            std::vector<GroupValue> vs;
            vs.reserve(spec->parts().size());
            for (const auto& p : spec->parts()) vs.push_back(zero(p));
            g.payload_ = std::move(vs);
            break;
        }
    }
    return g;
}

GroupValue GroupValue::from_int(const GroupSpecPtr& spec, Int v) {
    require_spec(spec);
    GroupValue g;
    g.spec_ = spec;
    switch (spec->kind()) {
        case GroupSpec::Kind::cyclic: g.payload_ = mod_reduce(std::move(v), spec->modulus()); break;
        case GroupSpec::Kind::integers: g.payload_ = std::move(v); break;
        case GroupSpec::Kind::rationals: g.payload_ = Rat(std::move(v)); break;
        case GroupSpec::Kind::product:
            throw std::invalid_argument("from_int on product spec; use tuple()");
    }
    return g;
}

GroupValue GroupValue::from_rational(const GroupSpecPtr& spec, Rat v) {
    require_spec(spec);
    if (spec->kind() != GroupSpec::Kind::rationals)
        throw std::invalid_argument("from_rational requires rationals spec");
    GroupValue g;
    g.spec_ = spec;
    g.payload_ = std::move(v);
    return g;
}

GroupValue GroupValue::tuple(const GroupSpecPtr& spec, std::vector<GroupValue> vs) {
    require_spec(spec);
    if (spec->kind() != GroupSpec::Kind::product)
        throw std::invalid_argument("tuple requires product spec");
    if (vs.size() != spec->parts().size())
        throw std::invalid_argument("tuple arity mismatch");
    for (size_t i = 0; i < vs.size(); ++i)
        if (!vs[i].spec() || !vs[i].spec()->same_as(*spec->parts()[i]))
            throw std::invalid_argument("tuple component spec mismatch");
    GroupValue g;
    g.spec_ = spec;
    g.payload_ = std::move(vs);
    return g;
}

bool GroupValue::is_zero() const {
    switch (spec_->kind()) {
        case GroupSpec::Kind::cyclic:
        case GroupSpec::Kind::integers: return std::get<Int>(payload_) == 0;
        case GroupSpec::Kind::rationals: return std::get<Rat>(payload_) == 0;
        case GroupSpec::Kind::product: {
            for (const auto& c : std::get<std::vector<GroupValue>>(payload_))
                if (!c.is_zero()) return false;
            return true;
        }
    }
    return false;
}

GroupValue GroupValue::add(const GroupValue& o) const {
    require_same(*this, o);
    GroupValue g;
    g.spec_ = spec_;
    switch (spec_->kind()) {
        case GroupSpec::Kind::cyclic: {
            Int s = std::get<Int>(payload_) + std::get<Int>(o.payload_);
            if (s >= spec_->modulus()) s -= spec_->modulus();
            g.payload_ = std::move(s);
            break;
        }
        case GroupSpec::Kind::integers:
            g.payload_ = std::get<Int>(payload_) + std::get<Int>(o.payload_);
            break;
        case GroupSpec::Kind::rationals:
            g.payload_ = std::get<Rat>(payload_) + std::get<Rat>(o.payload_);
            break;
        case GroupSpec::Kind::product: {
            const auto& a = std::get<std::vector<GroupValue>>(payload_);
            const auto& b = std::get<std::vector<GroupValue>>(o.payload_);
            std::vector<GroupValue> vs;
            vs.reserve(a.size());
            for (size_t i = 0; i < a.size(); ++i) vs.push_back(a[i].add(b[i]));
            g.payload_ = std::move(vs);
            break;
        }
    }
    return g;
}

GroupValue GroupValue::neg() const {
    GroupValue g;
    g.spec_ = spec_;
    switch (spec_->kind()) {
        case GroupSpec::Kind::cyclic: {
            const Int& v = std::get<Int>(payload_);
            g.payload_ = (v == 0) ? Int(0) : Int(spec_->modulus() - v);
            break;
        }
        case GroupSpec::Kind::integers: g.payload_ = Int(-std::get<Int>(payload_)); break;
        case GroupSpec::Kind::rationals: g.payload_ = Rat(-std::get<Rat>(payload_)); break;
        case GroupSpec::Kind::product: {
            std::vector<GroupValue> vs;
            const auto& a = std::get<std::vector<GroupValue>>(payload_);
            vs.reserve(a.size());
            for (const auto& c : a) vs.push_back(c.neg());
            g.payload_ = std::move(vs);
            break;
        }
    }
    return g;
}

bool GroupValue::operator==(const GroupValue& o) const {
    require_same(*this, o);
    return payload_ == o.payload_;
}

int GroupValue::compare(const GroupValue& o) const {
    require_same(*this, o);
    switch (spec_->kind()) {
        case GroupSpec::Kind::cyclic:
        case GroupSpec::Kind::integers: {
            const Int& a = std::get<Int>(payload_);
            const Int& b = std::get<Int>(o.payload_);
            return a < b ? -1 : (a == b ? 0 : 1);
        }
        case GroupSpec::Kind::rationals: {
            const Rat& a = std::get<Rat>(payload_);
            const Rat& b = std::get<Rat>(o.payload_);
            return a < b ? -1 : (a == b ? 0 : 1);
        }
        case GroupSpec::Kind::product: {
            const auto& a = std::get<std::vector<GroupValue>>(payload_);
            const auto& b = std::get<std::vector<GroupValue>>(o.payload_);
            for (size_t i = 0; i < a.size(); ++i) {
                int c = a[i].compare(b[i]);
                if (c != 0) return c;
            }
            return 0;
        }
    }
    return 0;
}

std::string GroupValue::canonical() const {
    switch (spec_->kind()) {
        case GroupSpec::Kind::cyclic:
        case GroupSpec::Kind::integers: return std::get<Int>(payload_).str();
        case GroupSpec::Kind::rationals: {
            const Rat& r = std::get<Rat>(payload_);
            return numerator(r).str() + "/" + denominator(r).str();
        }
        case GroupSpec::Kind::product: {
            std::string out = "(";
            const auto& a = std::get<std::vector<GroupValue>>(payload_);
            for (size_t i = 0; i < a.size(); ++i) {
                if (i) out += ",";
                out += a[i].canonical();
            }
            return out + ")";
        }
    }
    return "?";
}

const Int& GroupValue::as_int() const { return std::get<Int>(payload_); }
const Rat& GroupValue::as_rational() const { return std::get<Rat>(payload_); }
const std::vector<GroupValue>& GroupValue::components() const {
    return std::get<std::vector<GroupValue>>(payload_);
}

GroupValue scalar_multiply(const Int& n, const GroupValue& g) {
    const auto& spec = g.spec();
    require_spec(spec);
    switch (spec->kind()) {
        case GroupSpec::Kind::cyclic:
            return GroupValue::from_int(spec, n * g.as_int());
        case GroupSpec::Kind::integers:
            return GroupValue::from_int(spec, n * g.as_int());
        case GroupSpec::Kind::rationals:
            return GroupValue::from_rational(spec, Rat(n) * g.as_rational());
        case GroupSpec::Kind::product: {
            std::vector<GroupValue> vs;
            vs.reserve(g.components().size());
            for (const auto& c : g.components()) vs.push_back(scalar_multiply(n, c));
            return GroupValue::tuple(spec, std::move(vs));
        }
    }
    throw std::logic_error("unreachable");
}

std::optional<Int> element_order(const GroupValue& g) {
    const auto& spec = g.spec();
    require_spec(spec);
    switch (spec->kind()) {
        case GroupSpec::Kind::cyclic: {
            // order of residue v mod m is m / gcd(v, m)
            const Int& v = g.as_int();
            if (v == 0) return Int(1);
            return Int(spec->modulus() / gcd(v, spec->modulus()));
        }
        case GroupSpec::Kind::integers:
            return g.as_int() == 0 ? std::optional<Int>(Int(1)) : std::nullopt;
        case GroupSpec::Kind::rationals:
            return g.as_rational() == 0 ? std::optional<Int>(Int(1)) : std::nullopt;
        case GroupSpec::Kind::product: {
            Int l = 1;
            for (const auto& c : g.components()) {
                auto o = element_order(c);
                if (!o) return std::nullopt;
                l = lcm(l, *o);
            }
            return l;
        }
    }
    return std::nullopt;
}

GroupValue plurality(const std::vector<GroupValue>& values) {
    if (values.empty()) throw std::invalid_argument("plurality of empty set");
    auto cmp = [](const GroupValue& a, const GroupValue& b) { return a.compare(b) < 0; };
    std::map<GroupValue, int, decltype(cmp)> counts(cmp);
    for (const auto& v : values) counts[v]++;
    const GroupValue* best = nullptr;
    int best_count = -1;
    std::string best_key;
    for (const auto& [v, c] : counts) {
        if (c > best_count) {
            best = &v;
            best_count = c;
            best_key = v.canonical();
        } else if (c == best_count) {
            std::string k = v.canonical();
            if (k < best_key) {
                best = &v;
                best_key = std::move(k);
            }
        }
    }
    return *best;
}

}  // namespace boolecc
