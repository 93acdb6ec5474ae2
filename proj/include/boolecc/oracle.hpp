#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "boolecc/cube.hpp"
#include "boolecc/group.hpp"
#include "boolecc/point.hpp"
#include "boolecc/poly.hpp"

namespace boolecc {

/// Point oracle with query accounting. The counter goes up by exactly one
/// per answered query (bulk tabulations add their exact query count).
/// Oracles are deterministic: equal construction inputs give equal answers.
class QueryOracle {
public:
    virtual ~QueryOracle() = default;

    GroupValue query(const PointN& x) {
        ++count_;
        return answer(x);
    }

    std::uint64_t query_count() const { return count_; }
    const GroupSpecPtr& group() const { return group_; }
    std::uint32_t n() const { return n_; }

    /// Modulus of the compact answer lane, when one exists.
    virtual std::optional<std::uint32_t> compact_modulus() const { return std::nullopt; }

    /// Tabulate the oracle over a whole subcube into residues (index =
    /// bitmask of y). Counts 2^k queries. Returns false when this oracle has
    /// no compact lane; callers then fall back to fill_cube.
    virtual bool fill_cube_compact(const SubcubeEmbedding& emb, std::vector<std::uint8_t>& out);

    /// Boxed subcube tabulation (index = bitmask of y); counts 2^k queries.
    DenseTable fill_cube(const SubcubeEmbedding& emb);

protected:
    QueryOracle(std::uint32_t n, GroupSpecPtr g) : n_(n), group_(std::move(g)) {}
    virtual GroupValue answer(const PointN& x) = 0;

    std::uint64_t count_ = 0;
    std::uint32_t n_;
    GroupSpecPtr group_;
};

/// Corruption models applied on top of a truth polynomial.
struct ErrorModel {
    enum class Kind { none, random_density, explicit_set, band_adversary, planted_pair };
    Kind kind = Kind::none;

    // random_density: membership keyed by (key, point); corrupted points
    // answer truth + offset (a fixed nonzero group element).
    Rat delta;
    std::uint64_t key = 0;

    // explicit_set: absolute values at the listed points.
    std::vector<std::pair<PointN, GroupValue>> points;

    // band_adversary: truth inside the weight band [n/2 - width, n/2 + width],
    // adversarial (truth + values[hash mod |values|]) outside.
    std::uint32_t width = 0;
    std::vector<GroupValue> values;

    // planted_pair: f(x) = truth(x) when x_selector = 1, else p2(x).
    MultilinearPoly p2;
    std::uint32_t selector = 0;

    static ErrorModel none() { return {}; }
    static ErrorModel random_density(Rat delta, std::uint64_t key);
    static ErrorModel planted_pair(MultilinearPoly p2, std::uint32_t selector);
    static ErrorModel band(std::uint32_t width, std::vector<GroupValue> values,
                           std::uint64_t key);
    static ErrorModel explicit_set(std::vector<std::pair<PointN, GroupValue>> pts);
};

/// Truth polynomial + error model. Grows a compact lane when the group is
/// cyclic with small modulus and the truth is degree <= 1.
class PolyOracle : public QueryOracle {
public:
    PolyOracle(MultilinearPoly truth, ErrorModel model);

    const MultilinearPoly& truth() const { return truth_; }
    const ErrorModel& model() const { return model_; }
    const GroupValue& corruption_offset() const { return offset_; }

    std::optional<std::uint32_t> compact_modulus() const override;
    bool fill_cube_compact(const SubcubeEmbedding& emb, std::vector<std::uint8_t>& out) override;

protected:
    GroupValue answer(const PointN& x) override;

private:
    bool corrupted(const PointN& x) const;

    MultilinearPoly truth_;
    ErrorModel model_;
    GroupValue offset_;
    std::uint64_t thresh_ = 0;

    // compact lane (cyclic group, small modulus, linear truth)
    bool compact_ = false;
    std::uint32_t cm_ = 0;
    std::vector<std::uint32_t> lin1_, lin2_;  // coordinate coefficients mod m
    std::uint32_t const1_ = 0, const2_ = 0;
    std::uint32_t offset_res_ = 0;
};

/// Oracle defined by a function; used to stack derived correction stages.
class FnOracle : public QueryOracle {
public:
    FnOracle(std::uint32_t n, GroupSpecPtr g, std::function<GroupValue(const PointN&)> fn)
        : QueryOracle(n, std::move(g)), fn_(std::move(fn)) {}

protected:
    GroupValue answer(const PointN& x) override { return fn_(x); }

private:
    std::function<GroupValue(const PointN&)> fn_;
};

/// Majority selector: g when the first t coordinates have weight > t/2,
/// zero otherwise (t odd). The list-size example instance.
std::unique_ptr<QueryOracle> maj_instance(std::uint32_t t, std::uint32_t n, const GroupValue& g);

/// A canonical nonzero element used as the corruption offset.
GroupValue default_offset(const GroupSpecPtr& spec);

}  // namespace boolecc
