#include "boolecc/oracle.hpp"

#include <bit>
#include <stdexcept>

#include "boolecc/rng.hpp"

namespace boolecc {

bool QueryOracle::fill_cube_compact(const SubcubeEmbedding&, std::vector<std::uint8_t>&) {
    return false;
}

DenseTable QueryOracle::fill_cube(const SubcubeEmbedding& emb) {
    emb.validate();
    if (emb.n != n_) throw std::invalid_argument("embedding dimension mismatch");
    if (emb.k > 26) throw budget_exceeded_error("subcube tabulation beyond budget");
    const std::uint64_t size = 1ULL << emb.k;

    std::vector<PointN> bucket_mask(emb.k, PointN(emb.n));
    for (std::uint32_t i = 0; i < emb.n; ++i) bucket_mask[emb.h[i]].flip(i);

    DenseTable t;
    t.n = emb.k;
    t.group = group_;
    t.values.assign(size, GroupValue::zero(group_));

    // Gray walk: one bucket flip per step
    PointN x = emb.a;
    std::uint64_t gray = 0;
    t.values[0] = query(x);
    for (std::uint64_t i = 1; i < size; ++i) {
        const std::uint32_t j = static_cast<std::uint32_t>(std::countr_zero(i));
        x = x.xored(bucket_mask[j]);
        gray ^= 1ULL << j;
        t.values[gray] = query(x);
    }
    return t;
}

ErrorModel ErrorModel::random_density(Rat delta, std::uint64_t key) {
    if (delta < 0 || delta >= 1) throw std::invalid_argument("need 0 <= delta < 1");
    ErrorModel m;
    m.kind = Kind::random_density;
    m.delta = std::move(delta);
    m.key = key;
    return m;
}

ErrorModel ErrorModel::planted_pair(MultilinearPoly p2, std::uint32_t selector) {
    ErrorModel m;
    m.kind = Kind::planted_pair;
    m.p2 = std::move(p2);
    m.selector = selector;
    return m;
}

ErrorModel ErrorModel::band(std::uint32_t width, std::vector<GroupValue> values,
                            std::uint64_t key) {
    if (values.empty()) throw std::invalid_argument("band adversary needs values");
    for (const auto& v : values)
        if (v.is_zero()) throw std::invalid_argument("band adversary values must be nonzero");
    ErrorModel m;
    m.kind = Kind::band_adversary;
    m.width = width;
    m.values = std::move(values);
    m.key = key;
    return m;
}

ErrorModel ErrorModel::explicit_set(std::vector<std::pair<PointN, GroupValue>> pts) {
    ErrorModel m;
    m.kind = Kind::explicit_set;
    m.points = std::move(pts);
    return m;
}

GroupValue default_offset(const GroupSpecPtr& spec) {
    switch (spec->kind()) {
        case GroupSpec::Kind::cyclic:
            if (spec->modulus() < 2)
                throw std::invalid_argument("trivial group has no nonzero offset");
            return GroupValue::from_int(spec, 1);
        case GroupSpec::Kind::integers: return GroupValue::from_int(spec, 1);
        case GroupSpec::Kind::rationals: return GroupValue::from_rational(spec, Rat(1));
        case GroupSpec::Kind::product: {
            std::vector<GroupValue> vs;
            bool placed = false;
            for (const auto& p : spec->parts()) {
                if (!placed) {
                    try {
                        vs.push_back(default_offset(p));
                        placed = true;
                        continue;
                    } catch (const std::invalid_argument&) {
                    }
                }
                vs.push_back(GroupValue::zero(p));
            }
            if (!placed) throw std::invalid_argument("trivial group has no nonzero offset");
            return GroupValue::tuple(spec, std::move(vs));
        }
    }
    throw std::logic_error("unreachable");
}

namespace {
std::uint64_t delta_threshold(const Rat& delta) {
    // floor(delta * 2^64)
    Int t = (numerator(delta) << 64) / denominator(delta);
    return static_cast<std::uint64_t>(t);
}
}  // namespace

PolyOracle::PolyOracle(MultilinearPoly truth, ErrorModel model)
    : QueryOracle(truth.n(), truth.group()), truth_(std::move(truth)), model_(std::move(model)) {
    if (model_.kind == ErrorModel::Kind::random_density ||
        model_.kind == ErrorModel::Kind::band_adversary) {
        offset_ = default_offset(group_);
    } else {
        offset_ = GroupValue::zero(group_);
    }
    if (model_.kind == ErrorModel::Kind::random_density) thresh_ = delta_threshold(model_.delta);
    if (model_.kind == ErrorModel::Kind::planted_pair) {
        if (model_.p2.n() != n_ || !model_.p2.group()->same_as(*group_))
            throw std::invalid_argument("planted pair shape mismatch");
        if (model_.selector >= n_) throw std::invalid_argument("selector out of range");
    }
    if (model_.kind == ErrorModel::Kind::explicit_set) {
        for (const auto& [p, v] : model_.points)
            if (p.n() != n_ || !v.spec()->same_as(*group_))
                throw std::invalid_argument("explicit point shape mismatch");
    }

    // compact lane: cyclic group with small modulus, degree-1 truth
    if (group_->kind() == GroupSpec::Kind::cyclic && group_->modulus() >= 2 &&
        group_->modulus() <= 255 && truth_.degree() <= 1 &&
        (model_.kind == ErrorModel::Kind::none ||
         model_.kind == ErrorModel::Kind::random_density ||
         model_.kind == ErrorModel::Kind::planted_pair)) {
        if (model_.kind != ErrorModel::Kind::planted_pair || model_.p2.degree() <= 1) {
            compact_ = true;
            cm_ = static_cast<std::uint32_t>(group_->modulus());
            auto linearize = [&](const MultilinearPoly& p, std::vector<std::uint32_t>& lin,
                                 std::uint32_t& c0) {
                lin.assign(n_, 0);
                c0 = 0;
                for (const auto& [mono, coef] : p.terms()) {
                    const std::uint32_t r = static_cast<std::uint32_t>(coef.as_int());
                    if (mono.empty()) c0 = r;
                    else lin[mono[0]] = r;
                }
            };
            linearize(truth_, lin1_, const1_);
            if (model_.kind == ErrorModel::Kind::planted_pair) linearize(model_.p2, lin2_, const2_);
            if (!offset_.is_zero()) offset_res_ = static_cast<std::uint32_t>(offset_.as_int());
        }
    }
}

bool PolyOracle::corrupted(const PointN& x) const {
    return point_hash(model_.key, x.words()) < thresh_;
}

GroupValue PolyOracle::answer(const PointN& x) {
    switch (model_.kind) {
        case ErrorModel::Kind::none: return truth_.evaluate(x);
        case ErrorModel::Kind::random_density: {
            GroupValue v = truth_.evaluate(x);
            return corrupted(x) ? v.add(offset_) : v;
        }
        case ErrorModel::Kind::explicit_set: {
            for (const auto& [p, v] : model_.points)
                if (p == x) return v;
            return truth_.evaluate(x);
        }
        case ErrorModel::Kind::band_adversary: {
            const std::uint32_t w = x.weight();
            const std::int64_t lo = static_cast<std::int64_t>(n_) / 2 - model_.width;
            const std::int64_t hi = static_cast<std::int64_t>(n_) / 2 + model_.width;
            if (static_cast<std::int64_t>(w) >= lo && static_cast<std::int64_t>(w) <= hi)
                return truth_.evaluate(x);
            const std::uint64_t h = point_hash(model_.key ^ 0xbadULL, x.words());
            return truth_.evaluate(x).add(model_.values[h % model_.values.size()]);
        }
        case ErrorModel::Kind::planted_pair:
            return x.get(model_.selector) ? truth_.evaluate(x) : model_.p2.evaluate(x);
    }
    throw std::logic_error("unreachable");
}

std::optional<std::uint32_t> PolyOracle::compact_modulus() const {
    return compact_ ? std::optional<std::uint32_t>(cm_) : std::nullopt;
}

bool PolyOracle::fill_cube_compact(const SubcubeEmbedding& emb, std::vector<std::uint8_t>& out) {
    if (!compact_) return false;
    emb.validate();
    if (emb.n != n_) throw std::invalid_argument("embedding dimension mismatch");
    if (emb.k > 26) return false;
    const std::uint64_t size = 1ULL << emb.k;
    out.resize(size);
    const std::uint32_t m = cm_;

    // per-bucket coefficient sums and selector membership
    std::vector<std::uint32_t> d1(emb.k, 0), d2(emb.k, 0);
    std::vector<std::uint8_t> sel_in(emb.k, 0);
    const bool planted = model_.kind == ErrorModel::Kind::planted_pair;
    for (std::uint32_t i = 0; i < n_; ++i) {
        const std::uint32_t j = emb.h[i];
        d1[j] = (d1[j] + lin1_[i]) % m;
        if (planted) {
            d2[j] = (d2[j] + lin2_[i]) % m;
            if (i == model_.selector) sel_in[j] = 1;
        }
    }

    std::uint32_t v1 = const1_, v2 = const2_;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (!emb.a.get(i)) continue;
        v1 = (v1 + lin1_[i]) % m;
        if (planted) v2 = (v2 + lin2_[i]) % m;
    }
    bool selbit = planted && emb.a.get(model_.selector);

    const bool hashed = model_.kind == ErrorModel::Kind::random_density && thresh_ > 0;
    std::vector<std::uint64_t> bucket_words;
    std::vector<std::uint64_t> xw;
    const std::uint32_t nwords = static_cast<std::uint32_t>(emb.a.words().size());
    if (hashed) {
        bucket_words.assign(size_t(emb.k) * nwords, 0);
        for (std::uint32_t i = 0; i < n_; ++i)
            bucket_words[size_t(emb.h[i]) * nwords + (i >> 6)] ^= 1ULL << (i & 63);
        xw.assign(emb.a.words().begin(), emb.a.words().end());
    }

    auto emit = [&]() -> std::uint8_t {
        std::uint32_t v = planted ? (selbit ? v1 : v2) : v1;
        if (hashed && point_hash(model_.key, {xw.data(), xw.size()}) < thresh_)
            v = (v + offset_res_) % m;
        return static_cast<std::uint8_t>(v);
    };

    std::uint64_t gray = 0;
    std::uint64_t bucket_bits = 0;
    out[0] = emit();
    if (m == 2 && !hashed) {
        // mod-2 walk: adding and subtracting a delta coincide, so each step
        // is a handful of xors
        std::uint8_t v1b = static_cast<std::uint8_t>(v1), v2b = static_cast<std::uint8_t>(v2);
        std::uint8_t sb = selbit ? 1 : 0;
        for (std::uint64_t i = 1; i < size; ++i) {
            const std::uint32_t j = static_cast<std::uint32_t>(std::countr_zero(i));
            gray ^= 1ULL << j;
            v1b ^= static_cast<std::uint8_t>(d1[j]);
            if (planted) {
                v2b ^= static_cast<std::uint8_t>(d2[j]);
                sb ^= sel_in[j];
            }
            out[gray] = planted ? (sb ? v1b : v2b) : v1b;
        }
        count_ += size;
        return true;
    }
    for (std::uint64_t i = 1; i < size; ++i) {
        const std::uint32_t j = static_cast<std::uint32_t>(std::countr_zero(i));
        gray ^= 1ULL << j;
        bucket_bits ^= 1ULL << j;
        const bool up = (bucket_bits >> j) & 1;
        v1 += up ? d1[j] : m - d1[j];
        if (v1 >= m) v1 -= m;
        if (planted) {
            v2 += up ? d2[j] : m - d2[j];
            if (v2 >= m) v2 -= m;
            if (sel_in[j]) selbit = !selbit;
        }
        if (!xw.empty()) {
            const std::uint64_t* bw = &bucket_words[size_t(j) * nwords];
            for (std::uint32_t t = 0; t < nwords; ++t) xw[t] ^= bw[t];
        }
        out[gray] = emit();
    }
    count_ += size;
    return true;
}

namespace {
class MajOracle : public QueryOracle {
public:
    MajOracle(std::uint32_t t, std::uint32_t n, GroupValue g)
        : QueryOracle(n, g.spec()), t_(t), g_(std::move(g)), zero_(GroupValue::zero(g_.spec())) {}

protected:
    GroupValue answer(const PointN& x) override {
        std::uint32_t w = 0;
        for (std::uint32_t i = 0; i < t_; ++i) w += x.get(i);
        return (2 * w > t_) ? g_ : zero_;
    }

private:
    std::uint32_t t_;
    GroupValue g_;
    GroupValue zero_;
};
}  // namespace

std::unique_ptr<QueryOracle> maj_instance(std::uint32_t t, std::uint32_t n, const GroupValue& g) {
    if (t > n) throw std::invalid_argument("need t <= n");
    if (t % 2 == 0) throw std::invalid_argument("need t odd");
    if (g.is_zero()) throw std::invalid_argument("need g nonzero");
    return std::make_unique<MajOracle>(t, n, g);
}

}  // namespace boolecc
