#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "boolecc/group.hpp"
#include "boolecc/point.hpp"

namespace boolecc {

/// The nearly balanced (2^k - 1) x (2k - 1) Boolean matrix A_k with integer
/// coefficients c satisfying A_k c = 1, sum c = 1, exactly one all-ones row,
/// and every column weight in [2^{k-1} - 1, 2^{k-1} + 1].
struct BalancedMatrix {
    std::uint32_t k = 0;
    std::vector<std::uint64_t> rows;  // 2^k - 1 rows, low 2k-1 bits used
    std::vector<Int> c;               // length 2k - 1

    std::uint32_t num_rows() const { return (1u << k) - 1; }
    std::uint32_t num_cols() const { return 2 * k - 1; }
    bool bit(std::uint32_t row, std::uint32_t col) const { return (rows[row] >> col) & 1; }
};

/// Row r (0-based; the construction's row index is r+1) of A_k, packed into
/// the low 2k-1 bits. O(1); used by samplers without materializing A_k.
std::uint64_t balanced_row(std::uint32_t k, std::uint32_t r);

/// Coefficient vector c of A_k.
std::vector<Int> balanced_coeffs(std::uint32_t k);

BalancedMatrix build_balanced_matrix(std::uint32_t k);  // k >= 2

/// One draw of the correction gadget at an arbitrary target: q = 2k-1 query
/// points with integer coefficients c such that sum_j c_j = 1 and, for every
/// coordinate i, sum_j c_j * queries[j]_i = target_i. Every degree-1
/// polynomial P then satisfies sum_j c_j P(queries[j]) = P(target).
struct GadgetSample {
    std::uint32_t q = 0;
    std::vector<Int> coeffs;
    std::vector<PointN> queries;
    PointN target;
};

/// k = ceil(log2 n) + 2, so q = 2*ceil(log2 n) + 3 and each query point is
/// O(sqrt(n)/2^k)-close to uniform.
std::uint32_t gadget_k(std::uint32_t n);
std::uint32_t gadget_query_count(std::uint32_t n);

GadgetSample gadget_queries(std::uint32_t n, const PointN& target, std::uint64_t seed);

/// Error-reduction gadget for degree-d polynomials: integer coefficients on
/// a radius-d ball around a balanced center of a k-dimensional subcube, plus
/// the drawn query points target xor b_h. Identity: for every degree-<=d P,
/// sum over terms alpha_b * P(query_b) = P(target).
struct ReductionGadget {
    int d = 0;
    Rat rho;
    std::uint32_t k = 0;
    PointN center;
    std::vector<std::pair<PointN, Int>> terms;  // (ball offset b, alpha_b)

    std::uint32_t query_count() const { return static_cast<std::uint32_t>(terms.size()); }
};

struct ReductionDraw {
    ReductionGadget gadget;
    std::vector<PointN> queries;  // aligned with gadget.terms
};

/// k = 2 * ceil(2d / rho) (even, > 4d/rho); center = first k/2 coordinates.
ReductionDraw reduction_gadget(int d, const Rat& rho, std::uint32_t n, const PointN& target,
                               std::uint64_t seed);

/// Test hook: explicit k and center (bypasses the rho-derived dimension).
ReductionDraw reduction_gadget_with_k(int d, std::uint32_t k, const PointN& center,
                                      std::uint32_t n, const PointN& target, std::uint64_t seed);

/// Exact statistical distance from U_n of a product of n iid Bernoulli(p)
/// bits, computed by weight-bucket dynamic programming.
Rat product_bernoulli_sd(std::uint32_t n, const Rat& p);

/// P[column bit = 1] for each column of A_k under a uniform row draw.
std::vector<Rat> balanced_column_biases(std::uint32_t k);

}  // namespace boolecc
