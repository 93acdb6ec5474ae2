#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "boolecc/group.hpp"
#include "boolecc/point.hpp"

namespace boolecc {

struct SubcubeEmbedding;  // cube.hpp

class degree_exceeded_error : public std::runtime_error {
public:
    explicit degree_exceeded_error(int d_max)
        : std::runtime_error("coefficient above degree bound " + std::to_string(d_max)),
          d_max(d_max) {}
    int d_max;
};

class budget_exceeded_error : public std::runtime_error {
public:
    explicit budget_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

/// Monomial = subset of variable indices (0-based, sorted ascending).
using Monomial = std::vector<std::uint32_t>;

/// Term order: degree first, then lexicographic. Fixes the canonical term
/// enumeration used by serialization and tie-breaking.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Degree-bounded multilinear polynomial over {0,1}^n with coefficients in
/// one Abelian group. Sparse: only nonzero coefficients are stored, and the
/// zero polynomial has no terms. Immutable in spirit; mutating helpers keep
/// the invariants (no zero coefficients, every |I| <= degree bound).
class MultilinearPoly {
public:
    MultilinearPoly() = default;
    MultilinearPoly(std::uint32_t n, int d, GroupSpecPtr group)
        : n_(n), d_(d), group_(std::move(group)) {
        if (d_ < 0 || static_cast<std::uint32_t>(d_) > n_)
            throw std::invalid_argument("degree bound out of range");
    }

    std::uint32_t n() const { return n_; }
    int degree_bound() const { return d_; }
    const GroupSpecPtr& group() const { return group_; }
    const std::map<Monomial, GroupValue, MonomialLess>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Largest |I| with nonzero coefficient; -1 for the zero polynomial.
    int degree() const;

    void set_coeff(const Monomial& vars, const GroupValue& c);
    void add_to_coeff(const Monomial& vars, const GroupValue& c);
    GroupValue coeff(const Monomial& vars) const;

    GroupValue evaluate(const PointN& x) const;

    MultilinearPoly add(const MultilinearPoly& o) const;
    MultilinearPoly sub(const MultilinearPoly& o) const;
    MultilinearPoly neg() const;

    bool operator==(const MultilinearPoly& o) const;
    bool operator!=(const MultilinearPoly& o) const { return !(*this == o); }

    /// Canonical text form (term order is the map order); deterministic.
    std::string canonical() const;

    /// Full evaluation table, index = bitmask of the point (bit i = x_i).
    /// Guarded by the dense tabulation budget.
    std::vector<GroupValue> tabulate(std::uint32_t max_n = kTabulationBudget) const;

    static constexpr std::uint32_t kTabulationBudget = 20;

private:
    std::uint32_t n_ = 0;
    int d_ = 0;
    GroupSpecPtr group_;
    std::map<Monomial, GroupValue, MonomialLess> terms_;
};

/// Full evaluation table over {0,1}^n; entry i is the value at the point
/// whose bit j equals (i >> j) & 1.
struct DenseTable {
    std::uint32_t n = 0;
    GroupSpecPtr group;
    std::vector<GroupValue> values;

    size_t size() const { return values.size(); }
};

DenseTable tabulate(const MultilinearPoly& p, std::uint32_t max_n = MultilinearPoly::kTabulationBudget);

/// Moebius inversion: the unique multilinear polynomial matching the table.
/// With d_max given, throws degree_exceeded_error when any coefficient of
/// higher degree is nonzero.
MultilinearPoly interpolate(const DenseTable& table, std::optional<int> d_max = std::nullopt);

/// Exact fraction of points where the two tables disagree.
Rat exact_distance(const DenseTable& f, const DenseTable& g);
Rat distance_to_poly(const DenseTable& f, const MultilinearPoly& p);

/// Restriction of P to the subcube named by the embedding: substitutes
/// x_i = y_{h(i)} xor a_i. Degree never increases.
MultilinearPoly restrict(const MultilinearPoly& p, const SubcubeEmbedding& emb);

/// Interpolation coefficients on a radius-d Hamming ball around `center`:
/// P(0^k) = sum alpha_b P(b) for every degree-<=d multilinear P over
/// {0,1}^k. Zero coefficients are omitted.
std::vector<std::pair<PointN, Int>> ball_interpolation_coeffs(std::uint32_t k, int d,
                                                              const PointN& center);

}  // namespace boolecc
