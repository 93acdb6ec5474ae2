#include "boolecc/poly.hpp"

#include <algorithm>

#include "boolecc/cube.hpp"

namespace boolecc {

int MultilinearPoly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, static_cast<int>(m.size()));
    return d;
}

namespace {
void check_monomial(const Monomial& vars, std::uint32_t n, int d) {
    if (static_cast<int>(vars.size()) > d)
        throw std::invalid_argument("monomial exceeds degree bound");
    for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] >= n) throw std::invalid_argument("variable index out of range");
        if (i && vars[i] <= vars[i - 1]) throw std::invalid_argument("monomial not sorted/unique");
    }
}
}  // namespace

void MultilinearPoly::set_coeff(const Monomial& vars, const GroupValue& c) {
    check_monomial(vars, n_, d_);
    if (!c.spec()->same_as(*group_)) throw std::invalid_argument("coefficient group mismatch");
    if (c.is_zero()) terms_.erase(vars);
    else terms_[vars] = c;
}

void MultilinearPoly::add_to_coeff(const Monomial& vars, const GroupValue& c) {
    check_monomial(vars, n_, d_);
    auto it = terms_.find(vars);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(vars, c);
        return;
    }
    GroupValue s = it->second.add(c);
    if (s.is_zero()) terms_.erase(it);
    else it->second = std::move(s);
}

GroupValue MultilinearPoly::coeff(const Monomial& vars) const {
    auto it = terms_.find(vars);
    return it == terms_.end() ? GroupValue::zero(group_) : it->second;
}

GroupValue MultilinearPoly::evaluate(const PointN& x) const {
    if (x.n() != n_) throw std::invalid_argument("evaluation point dimension mismatch");
    GroupValue acc = GroupValue::zero(group_);
    for (const auto& [m, c] : terms_) {
        bool active = true;
        for (std::uint32_t i : m)
            if (!x.get(i)) { active = false; break; }
        if (active) acc = acc.add(c);
    }
    return acc;
}

MultilinearPoly MultilinearPoly::add(const MultilinearPoly& o) const {
    if (n_ != o.n_ || !group_->same_as(*o.group_))
        throw std::invalid_argument("polynomial shape mismatch");
    MultilinearPoly out(n_, std::max(d_, o.d_), group_);
    out.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) out.add_to_coeff(m, c);
    return out;
}

MultilinearPoly MultilinearPoly::neg() const {
    MultilinearPoly out(n_, d_, group_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.neg());
    return out;
}

MultilinearPoly MultilinearPoly::sub(const MultilinearPoly& o) const { return add(o.neg()); }

bool MultilinearPoly::operator==(const MultilinearPoly& o) const {
    if (n_ != o.n_ || !group_->same_as(*o.group_)) return false;
    return terms_ == o.terms_;
}

std::string MultilinearPoly::canonical() const {
    std::string out;
    for (const auto& [m, c] : terms_) {
        out += "[";
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(m[i]);
        }
        out += "]=";
        out += c.canonical();
        out += ";";
    }
    return out;
}

std::vector<GroupValue> MultilinearPoly::tabulate(std::uint32_t max_n) const {
    if (n_ > max_n)
        throw budget_exceeded_error("dense tabulation beyond budget n=" + std::to_string(max_n));
    const size_t size = size_t(1) << n_;
    std::vector<GroupValue> table(size, GroupValue::zero(group_));
    // place coefficients at monomial masks, then zeta-transform to values
    for (const auto& [m, c] : terms_) {
        std::uint64_t mask = 0;
        for (std::uint32_t i : m) mask |= 1ULL << i;
        table[mask] = table[mask].add(c);
    }
    for (std::uint32_t b = 0; b < n_; ++b) {
        const std::uint64_t bit = 1ULL << b;
        for (std::uint64_t x = 0; x < size; ++x)
            if (x & bit) table[x] = table[x].add(table[x ^ bit]);
    }
    return table;
}

DenseTable tabulate(const MultilinearPoly& p, std::uint32_t max_n) {
    DenseTable t;
    t.n = p.n();
    t.group = p.group();
    t.values = p.tabulate(max_n);
    return t;
}

MultilinearPoly interpolate(const DenseTable& table, std::optional<int> d_max) {
    const size_t size = table.values.size();
    if (size == 0 || (size & (size - 1)) != 0 || size != (size_t(1) << table.n))
        throw std::invalid_argument("table must have 2^n entries");
    for (const auto& v : table.values)
        if (!v.spec()->same_as(*table.group))
            throw std::invalid_argument("table group mismatch");

    // Moebius inversion in place: c_I = sum_{J subseteq I} (-1)^{|I\J|} f(1_J)
    std::vector<GroupValue> coeffs = table.values;
    for (std::uint32_t b = 0; b < table.n; ++b) {
        const std::uint64_t bit = 1ULL << b;
        for (std::uint64_t x = 0; x < size; ++x)
            if (x & bit) coeffs[x] = coeffs[x].sub(coeffs[x ^ bit]);
    }

    int deg = 0;
    for (std::uint64_t mask = 0; mask < size; ++mask)
        if (!coeffs[mask].is_zero())
            deg = std::max<int>(deg, std::popcount(mask));
    if (d_max && deg > *d_max) throw degree_exceeded_error(*d_max);

    MultilinearPoly p(table.n, deg, table.group);
    for (std::uint64_t mask = 0; mask < size; ++mask) {
        if (coeffs[mask].is_zero()) continue;
        Monomial m;
        for (std::uint32_t i = 0; i < table.n; ++i)
            if ((mask >> i) & 1) m.push_back(i);
        p.set_coeff(m, coeffs[mask]);
    }
    return p;
}

Rat exact_distance(const DenseTable& f, const DenseTable& g) {
    if (f.n != g.n || !f.group->same_as(*g.group))
        throw std::invalid_argument("table shape mismatch");
    std::uint64_t bad = 0;
    for (size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] != g.values[i]) ++bad;
    return Rat(Int(bad), Int(1) << f.n);
}

Rat distance_to_poly(const DenseTable& f, const MultilinearPoly& p) {
    DenseTable g = tabulate(p, f.n);
    return exact_distance(f, g);
}

MultilinearPoly restrict(const MultilinearPoly& p, const SubcubeEmbedding& emb) {
    if (emb.n != p.n()) throw std::invalid_argument("embedding dimension mismatch");
    MultilinearPoly out(emb.k, std::min<int>(p.degree_bound(), emb.k), p.group());
    for (const auto& [mono, alpha] : p.terms()) {
        // expand prod_{i in I} (a_i == 0 ? y_{h(i)} : 1 - y_{h(i)})
        std::map<Monomial, Int, MonomialLess> partial;
        partial[{}] = 1;
        for (std::uint32_t i : mono) {
            const std::uint32_t j = emb.h[i];
            std::map<Monomial, Int, MonomialLess> next;
            for (const auto& [m, mult] : partial) {
                bool has = std::binary_search(m.begin(), m.end(), j);
                if (!emb.a.get(i)) {
                    Monomial mj = m;
                    if (!has) { mj.insert(std::lower_bound(mj.begin(), mj.end(), j), j); }
                    next[mj] += mult;
                } else {
                    // (1 - y_j): if j already present the two branches cancel
                    if (has) continue;
                    next[m] += mult;
                    Monomial mj = m;
                    mj.insert(std::lower_bound(mj.begin(), mj.end(), j), j);
                    next[mj] -= mult;
                }
            }
            partial = std::move(next);
        }
        for (const auto& [m, mult] : partial) {
            if (mult == 0) continue;
            out.add_to_coeff(m, scalar_multiply(mult, alpha));
        }
    }
    return out;
}

namespace {
Int binomial(std::uint32_t n, std::uint32_t r) {
    if (r > n) return 0;
    Int v = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        v *= n - i;
        v /= i + 1;
    }
    return v;
}
}  // namespace

std::vector<std::pair<PointN, Int>> ball_interpolation_coeffs(std::uint32_t k, int d,
                                                              const PointN& center) {
    if (d < 0 || static_cast<std::uint32_t>(d) > k)
        throw std::invalid_argument("ball radius must satisfy 0 <= d <= k");
    if (center.n() != k) throw std::invalid_argument("center dimension mismatch");

    // P(0^k) = sum over J subseteq supp(center), |J| <= d of
    //   [ sum_{t=0}^{d-|J|} (-1)^t C(W-|J|, t) ] * P(center with J flipped)
    // where W = |center|. All other ball points get coefficient zero.
    std::vector<std::uint32_t> supp;
    for (std::uint32_t i = 0; i < k; ++i)
        if (center.get(i)) supp.push_back(i);
    const std::uint32_t W = static_cast<std::uint32_t>(supp.size());

    std::vector<std::pair<PointN, Int>> out;
    std::vector<std::uint32_t> idx;  // indices into supp forming J
    auto emit = [&](const std::vector<std::uint32_t>& J) {
        const std::uint32_t j = static_cast<std::uint32_t>(J.size());
        Int alpha = 0;
        for (int t = 0; t <= d - static_cast<int>(j); ++t) {
            Int b = binomial(W - j, static_cast<std::uint32_t>(t));
            alpha += (t % 2 == 0) ? b : -b;
        }
        if (alpha == 0) return;
        PointN pt = center;
        for (std::uint32_t s : J) pt.flip(supp[s]);
        out.emplace_back(std::move(pt), std::move(alpha));
    };
    // enumerate subsets of supp of size <= min(d, W)
    const int dmax = std::min<int>(d, static_cast<int>(W));
    std::vector<std::uint32_t> J;
    auto rec = [&](auto&& self, std::uint32_t start, int remaining) -> void {
        emit(J);
        if (remaining == 0) return;
        for (std::uint32_t s = start; s < W; ++s) {
            J.push_back(s);
            self(self, s + 1, remaining - 1);
            J.pop_back();
        }
    };
    rec(rec, 0, dmax);
    return out;
}

}  // namespace boolecc
