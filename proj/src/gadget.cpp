#include "boolecc/gadget.hpp"

#include <bit>
#include <stdexcept>

#include "boolecc/poly.hpp"
#include "boolecc/rng.hpp"

namespace boolecc {

namespace {

// Base matrix row i (1-based) is (bin(i) bin(i-1)), k-bit MSB-first halves.
// Columns j != k are negated and column 2k is dropped.
std::uint64_t base_bit(std::uint32_t k, std::uint32_t i, std::uint32_t j) {
    // j is 1-based over [1, 2k]
    if (j <= k) return (i >> (k - j)) & 1;            // bin(i), MSB first
    return ((i - 1) >> (2 * k - j)) & 1;              // bin(i-1)
}

}  // namespace

std::uint64_t balanced_row(std::uint32_t k, std::uint32_t r) {
    const std::uint32_t i = r + 1;  // construction indexes rows from 1
    std::uint64_t row = 0;
    for (std::uint32_t j = 1; j <= 2 * k - 1; ++j) {
        std::uint64_t b = base_bit(k, i, j);
        if (j != k) b ^= 1;
        row |= b << (j - 1);
    }
    return row;
}

std::vector<Int> balanced_coeffs(std::uint32_t k) {
    // c_j = -w~_j / 2 for j != k and c_k = 1, where w = (2^{k-1},...,1,
    // -2^{k-1},...,-1) and w~ flips the sign of entry k only.
    std::vector<Int> c(2 * k - 1);
    for (std::uint32_t j = 1; j <= 2 * k - 1; ++j) {
        if (j == k) c[j - 1] = 1;
        else if (j < k) c[j - 1] = -(Int(1) << (k - j - 1));
        else c[j - 1] = Int(1) << (2 * k - j - 1);
    }
    return c;
}

BalancedMatrix build_balanced_matrix(std::uint32_t k) {
    if (k < 2) throw std::invalid_argument("balanced matrix needs k >= 2");
    if (k > 20) throw std::invalid_argument("refusing to materialize A_k beyond k = 20");
    BalancedMatrix m;
    m.k = k;
    m.rows.resize((1u << k) - 1);
    for (std::uint32_t r = 0; r < m.rows.size(); ++r) m.rows[r] = balanced_row(k, r);
    m.c = balanced_coeffs(k);
    return m;
}

std::uint32_t gadget_k(std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("gadget needs n >= 1");
    std::uint32_t ceil_log = 0;
    while ((1ULL << ceil_log) < n) ++ceil_log;
    return ceil_log + 2;
}

std::uint32_t gadget_query_count(std::uint32_t n) { return 2 * gadget_k(n) - 1; }

GadgetSample gadget_queries(std::uint32_t n, const PointN& target, std::uint64_t seed) {
    if (target.n() != n) throw std::invalid_argument("target dimension mismatch");
    const std::uint32_t k = gadget_k(n);
    const std::uint32_t q = 2 * k - 1;
    const std::uint64_t num_rows = (1ULL << k) - 1;

    GadgetSample s;
    s.q = q;
    s.coeffs = balanced_coeffs(k);
    s.target = target;
    s.queries.assign(q, PointN(n));

    Rng rng = Rng::derive(seed, {seedtag::gadget});
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint64_t row = balanced_row(k, static_cast<std::uint32_t>(rng.below(num_rows)));
        // shift by 1^n xor target: coordinate i flips when target_i = 0
        const bool flip = !target.get(i);
        for (std::uint32_t j = 0; j < q; ++j) {
            bool bit = (row >> j) & 1;
            if (flip) bit = !bit;
            if (bit) s.queries[j].set(i, true);
        }
    }
    return s;
}

namespace {
ReductionDraw draw_with(int d, const Rat& rho, std::uint32_t k, const PointN& center,
                        std::uint32_t n, const PointN& target, std::uint64_t seed) {
    if (target.n() != n) throw std::invalid_argument("target dimension mismatch");
    ReductionDraw out;
    out.gadget.d = d;
    out.gadget.rho = rho;
    out.gadget.k = k;
    out.gadget.center = center;
    out.gadget.terms = ball_interpolation_coeffs(k, d, center);

    Rng rng = Rng::derive(seed, {seedtag::reduction});
    std::vector<std::uint32_t> h(n);
    for (std::uint32_t i = 0; i < n; ++i) h[i] = static_cast<std::uint32_t>(rng.below(k));

    out.queries.reserve(out.gadget.terms.size());
    for (const auto& [b, alpha] : out.gadget.terms) {
        PointN x = target;
        for (std::uint32_t i = 0; i < n; ++i)
            if (b.get(h[i])) x.flip(i);
        out.queries.push_back(std::move(x));
    }
    return out;
}
}  // namespace

ReductionDraw reduction_gadget(int d, const Rat& rho, std::uint32_t n, const PointN& target,
                               std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("reduction gadget needs d >= 1");
    if (rho <= 0 || rho > 1) throw std::invalid_argument("need 0 < rho <= 1");
    // k = 2 * ceil(2d / rho), even and above 4d/rho
    Rat ratio = Rat(2 * d) / rho;
    Int ceil_ratio = numerator(ratio) / denominator(ratio);
    if (ceil_ratio * denominator(ratio) != numerator(ratio)) ceil_ratio += 1;
    const std::uint32_t k = 2 * static_cast<std::uint32_t>(ceil_ratio);
    PointN center(k);
    for (std::uint32_t i = 0; i < k / 2; ++i) center.set(i, true);
    return draw_with(d, rho, k, center, n, target, seed);
}

ReductionDraw reduction_gadget_with_k(int d, std::uint32_t k, const PointN& center,
                                      std::uint32_t n, const PointN& target, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("reduction gadget needs d >= 1");
    return draw_with(d, Rat(0), k, center, n, target, seed);
}

Rat product_bernoulli_sd(std::uint32_t n, const Rat& p) {
    // coordinates iid: P[x] depends only on |x|, so bucket by weight
    const Rat q = 1 - p;
    Rat uniform = Rat(1, Int(1) << n);
    Rat sd = 0;
    Rat pw = 1;  // p^w
    for (std::uint32_t w = 0; w <= n; ++w) {
        Int count = 1;
        for (std::uint32_t i = 0; i < w; ++i) { count *= n - i; count /= i + 1; }
        Rat qn = 1;
        for (std::uint32_t i = 0; i < n - w; ++i) qn *= q;
        Rat diff = pw * qn - uniform;
        if (diff < 0) diff = -diff;
        sd += Rat(count) * diff;
        pw *= p;
    }
    return sd / 2;
}

std::vector<Rat> balanced_column_biases(std::uint32_t k) {
    BalancedMatrix m = build_balanced_matrix(k);
    std::vector<Rat> biases(m.num_cols());
    for (std::uint32_t j = 0; j < m.num_cols(); ++j) {
        std::uint64_t weight = 0;
        for (std::uint32_t r = 0; r < m.num_rows(); ++r)
            if (m.bit(r, j)) ++weight;
        biases[j] = Rat(weight, m.num_rows());
    }
    return biases;
}

}  // namespace boolecc
