#include "boolecc/correct.hpp"

#include <stdexcept>

#include "boolecc/decode.hpp"
#include "boolecc/rng.hpp"

namespace boolecc {

void CorrectorParams::validate() const {
    if (d < 1) throw std::invalid_argument("need d >= 1");
    if (delta < 0 || delta >= Rat(1, Int(1) << (d + 1)))
        throw std::invalid_argument("need 0 <= delta < 2^-(d+1)");
    if (reps % 2 == 0) throw std::invalid_argument("reps must be odd");
    if (k_subcube && *k_subcube < 2 * static_cast<std::uint32_t>(d) + 2)
        throw std::invalid_argument("need k_subcube >= 2d + 2");
}

GroupValue correct_small_error(QueryOracle& f, const PointN& a, std::uint32_t reps,
                               std::uint64_t seed) {
    if (a.n() != f.n()) throw std::invalid_argument("point dimension mismatch");
    std::vector<GroupValue> votes;
    votes.reserve(reps);
    for (std::uint32_t r = 0; r < reps; ++r) {
        GadgetSample s =
            gadget_queries(f.n(), a, mix64(seed, mix64(seedtag::smallerr, r)));
        GroupValue acc = GroupValue::zero(f.group());
        for (std::uint32_t j = 0; j < s.q; ++j)
            acc = acc.add(scalar_multiply(s.coeffs[j], f.query(s.queries[j])));
        votes.push_back(std::move(acc));
    }
    return plurality(votes);
}

GroupValue base_reduce(QueryOracle& g, const PointN& a, int d, std::uint64_t seed) {
    if (a.n() != g.n()) throw std::invalid_argument("point dimension mismatch");
    std::vector<GroupValue> votes;
    votes.reserve(3);
    for (std::uint32_t r = 0; r < 3; ++r) {
        ReductionDraw draw =
            reduction_gadget(d, Rat(1, 10), g.n(), a, mix64(seed, mix64(seedtag::reduction, r)));
        GroupValue acc = GroupValue::zero(g.group());
        for (size_t t = 0; t < draw.queries.size(); ++t)
            acc = acc.add(scalar_multiply(draw.gadget.terms[t].second, g.query(draw.queries[t])));
        votes.push_back(std::move(acc));
    }
    return plurality(votes);
}

namespace {

/// One reduction level with bucket maps fixed at construction: answers
/// plurality over three gadget evaluations a xor mask_b against the inner
/// oracle. Masks are target-independent (the gadget shifts by the target).
class ReducedLevelOracle : public QueryOracle {
public:
    ReducedLevelOracle(QueryOracle& inner, int d, std::uint64_t seed)
        : QueryOracle(inner.n(), inner.group()), inner_(inner) {
        PointN origin(inner.n());
        for (std::uint32_t r = 0; r < 3; ++r) {
            ReductionDraw draw =
                reduction_gadget(d, Rat(1, 10), n_, origin, mix64(seed, mix64(seedtag::reduction, r)));
            auto& rep = reps_[r];
            for (size_t t = 0; t < draw.queries.size(); ++t)
                rep.emplace_back(draw.queries[t], draw.gadget.terms[t].second);
        }
    }

protected:
    GroupValue answer(const PointN& x) override {
        std::vector<GroupValue> votes;
        votes.reserve(3);
        for (const auto& rep : reps_) {
            GroupValue acc = GroupValue::zero(group_);
            for (const auto& [mask, alpha] : rep)
                acc = acc.add(scalar_multiply(alpha, inner_.query(x.xored(mask))));
            votes.push_back(std::move(acc));
        }
        return plurality(votes);
    }

private:
    QueryOracle& inner_;
    std::vector<std::pair<PointN, Int>> reps_[3];
};

/// Chain of t reduction levels over a borrowed base oracle.
class ReducedChainOracle : public QueryOracle {
public:
    ReducedChainOracle(QueryOracle& f, int d, std::uint32_t t_levels, std::uint64_t seed)
        : QueryOracle(f.n(), f.group()), base_(f) {
        QueryOracle* prev = &base_;
        for (std::uint32_t t = 1; t <= t_levels; ++t) {
            levels_.push_back(std::make_unique<ReducedLevelOracle>(
                *prev, d, mix64(seed, mix64(seedtag::level, t))));
            prev = levels_.back().get();
        }
        top_ = prev;
    }

protected:
    GroupValue answer(const PointN& x) override { return top_->query(x); }

private:
    QueryOracle& base_;
    std::vector<std::unique_ptr<QueryOracle>> levels_;
    QueryOracle* top_;
};

GroupValue decode_on_cube(QueryOracle& f, const SubcubeEmbedding& emb, int d) {
    std::vector<std::uint8_t> compact;
    std::optional<MultilinearPoly> p;
    if (auto m = f.compact_modulus(); m && f.fill_cube_compact(emb, compact)) {
        CompactTable ct{emb.k, *m, std::move(compact)};
        p = unique_decode_compact(ct, d, f.group());
    } else {
        p = unique_decode(f.fill_cube(emb), d);
    }
    if (!p) return GroupValue::zero(f.group());
    return p->coeff({});  // value at y = 0^k, which embeds to the base point
}

class SubcubeStageOracle : public QueryOracle {
public:
    SubcubeStageOracle(QueryOracle& inner, std::uint32_t k, int d, std::uint64_t seed)
        : QueryOracle(inner.n(), inner.group()), inner_(inner), k_(k), d_(d), h_(inner.n()) {
        Rng rng = Rng::derive(seed, {seedtag::subcube});
        for (auto& b : h_) b = static_cast<std::uint32_t>(rng.below(k));
    }

protected:
    GroupValue answer(const PointN& x) override {
        SubcubeEmbedding emb{n_, k_, x, h_};
        return decode_on_cube(inner_, emb, d_);
    }

private:
    QueryOracle& inner_;
    std::uint32_t k_;
    int d_;
    std::vector<std::uint32_t> h_;
};

}  // namespace

std::unique_ptr<QueryOracle> reduced_oracle(QueryOracle& f, int d, std::uint32_t t_levels,
                                            std::uint64_t seed) {
    return std::make_unique<ReducedChainOracle>(f, d, t_levels, seed);
}

GroupValue subcube_reduce_with_h(QueryOracle& f, const PointN& a, std::uint32_t k, int d,
                                 const std::vector<std::uint32_t>& h) {
    if (a.n() != f.n()) throw std::invalid_argument("point dimension mismatch");
    SubcubeEmbedding emb{f.n(), k, a, h};
    return decode_on_cube(f, emb, d);
}

GroupValue subcube_reduce(QueryOracle& f, const PointN& a, std::uint32_t k, int d,
                          std::uint64_t seed) {
    Rng rng = Rng::derive(seed, {seedtag::subcube});
    std::vector<std::uint32_t> h(f.n());
    for (auto& b : h) b = static_cast<std::uint32_t>(rng.below(k));
    return subcube_reduce_with_h(f, a, k, d, h);
}

std::unique_ptr<QueryOracle> subcube_stage_oracle(QueryOracle& f, std::uint32_t k, int d,
                                                  std::uint64_t seed) {
    return std::make_unique<SubcubeStageOracle>(f, k, d, seed);
}

GroupValue unique_correct(QueryOracle& f, const PointN& a, const CorrectorParams& params) {
    params.validate();
    QueryOracle* base = &f;
    std::unique_ptr<QueryOracle> stage3;
    if (params.k_subcube) {
        stage3 = subcube_stage_oracle(f, *params.k_subcube, params.d,
                                      mix64(params.seed, seedtag::subcube));
        base = stage3.get();
    }
    std::unique_ptr<QueryOracle> chain;
    if (params.t_levels > 0) {
        chain = reduced_oracle(*base, params.d, params.t_levels,
                               mix64(params.seed, seedtag::level));
        base = chain.get();
    }
    return correct_small_error(*base, a, params.reps, mix64(params.seed, seedtag::smallerr));
}

std::uint32_t reduction_query_count(int d) {
    PointN origin(1);
    origin.set(0, true);  // n = 1 probe target
    ReductionDraw draw = reduction_gadget(d, Rat(1, 10), 1, origin, 0);
    return draw.gadget.query_count();
}

std::uint64_t unique_correct_query_formula(std::uint32_t n, const CorrectorParams& params) {
    std::uint64_t q = gadget_query_count(n);
    std::uint64_t total = q * params.reps;
    const std::uint64_t K = 3ULL * reduction_query_count(params.d);
    for (std::uint32_t t = 0; t < params.t_levels; ++t) total *= K;
    if (params.k_subcube) total <<= *params.k_subcube;
    return total;
}

}  // namespace boolecc
