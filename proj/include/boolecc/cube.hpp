#pragma once

#include <cstdint>
#include <vector>

#include "boolecc/point.hpp"
#include "boolecc/poly.hpp"
#include "boolecc/rng.hpp"

namespace boolecc {

/// Embedding of {0,1}^k into {0,1}^n: x(y)_i = y_{h(i)} xor a_i.
/// h is total and need not be surjective (empty buckets are fine; the
/// corresponding image coordinates are then constant).
struct SubcubeEmbedding {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    PointN a;                        // base point, embed(0^k) = a
    std::vector<std::uint32_t> h;    // size n, values in [0, k)

    void validate() const;
};

PointN embed(const SubcubeEmbedding& emb, const PointN& y);

/// a uniform over {0,1}^n, each h(i) uniform over [k], all from `seed`.
SubcubeEmbedding random_embedding(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

/// The 2k-dimensional subcube spanned by a k-cube and a point b:
/// base.h refines the original bucket map by whether a and b agree on each
/// coordinate, routed through the permutation sigma of [2k]. w is the
/// weight-k point of the big cube with embed(base, w) = b; the original
/// k-cube is exactly the set of z with z_{sigma(j)} = z_{sigma(j+k)}.
struct SpannedSubcube {
    SubcubeEmbedding base;           // dimension 2k
    PointN w;                        // |w| = k, embed(base, w) = b
    std::vector<std::uint32_t> sigma;  // permutation of [0, 2k)
};

SpannedSubcube span_with(const SubcubeEmbedding& emb, const PointN& b,
                         const std::vector<std::uint32_t>& sigma);

/// Identify z_{sigma(j)} with z_{sigma(j+k)} as y_j in a polynomial over
/// 2k variables; coefficients of merged monomials add up (x^2 = x).
MultilinearPoly restrict_pair(const MultilinearPoly& r, const std::vector<std::uint32_t>& sigma);

std::vector<std::uint32_t> random_permutation(std::uint32_t size, Rng& rng);

}  // namespace boolecc
