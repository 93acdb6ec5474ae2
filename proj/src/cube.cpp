#include "boolecc/cube.hpp"

#include <algorithm>
#include <stdexcept>

namespace boolecc {

void SubcubeEmbedding::validate() const {
    if (k == 0 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (a.n() != n) throw std::invalid_argument("base point dimension mismatch");
    if (h.size() != n) throw std::invalid_argument("bucket map must be total on [n]");
    for (std::uint32_t b : h)
        if (b >= k) throw std::invalid_argument("bucket index out of range");
}

PointN embed(const SubcubeEmbedding& emb, const PointN& y) {
    if (y.n() != emb.k) throw std::invalid_argument("embed: point length mismatch");
    PointN x = emb.a;
    for (std::uint32_t i = 0; i < emb.n; ++i)
        if (y.get(emb.h[i])) x.flip(i);
    return x;
}

SubcubeEmbedding random_embedding(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
    if (k == 0 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    Rng rng = Rng::derive(seed, {seedtag::subcube});
    SubcubeEmbedding emb;
    emb.n = n;
    emb.k = k;
    emb.a = PointN(n);
    for (std::uint32_t i = 0; i < n; ++i)
        if (rng.bit()) emb.a.set(i, true);
    emb.h.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
        emb.h[i] = static_cast<std::uint32_t>(rng.below(k));
    return emb;
}

SpannedSubcube span_with(const SubcubeEmbedding& emb, const PointN& b,
                         const std::vector<std::uint32_t>& sigma) {
    emb.validate();
    if (b.n() != emb.n) throw std::invalid_argument("span point dimension mismatch");
    const std::uint32_t k = emb.k;
    if (sigma.size() != 2 * size_t(k)) throw std::invalid_argument("sigma must permute [2k]");
    {
        std::vector<bool> seen(2 * k, false);
        for (std::uint32_t s : sigma) {
            if (s >= 2 * k || seen[s]) throw std::invalid_argument("sigma is not a permutation");
            seen[s] = true;
        }
    }

    SpannedSubcube out;
    out.sigma = sigma;
    out.base.n = emb.n;
    out.base.k = 2 * k;
    out.base.a = emb.a;
    out.base.h.resize(emb.n);
    PointN v = emb.a.xored(b);
    for (std::uint32_t i = 0; i < emb.n; ++i) {
        const std::uint32_t j = emb.h[i];
        out.base.h[i] = v.get(i) ? sigma[j + k] : sigma[j];
    }
    out.w = PointN(2 * k);
    for (std::uint32_t j = 0; j < k; ++j) out.w.set(sigma[j + k], true);
    return out;
}

MultilinearPoly restrict_pair(const MultilinearPoly& r, const std::vector<std::uint32_t>& sigma) {
    const std::uint32_t twok = r.n();
    if (twok == 0 || twok % 2 != 0) throw std::invalid_argument("restrict_pair needs 2k variables");
    if (sigma.size() != twok) throw std::invalid_argument("sigma arity mismatch");
    const std::uint32_t k = twok / 2;

    std::vector<std::uint32_t> bucket(twok);  // variable position -> identified y index
    for (std::uint32_t j = 0; j < twok; ++j) {
        const std::uint32_t pos = sigma[j];
        if (pos >= twok) throw std::invalid_argument("sigma is not a permutation");
        bucket[pos] = j < k ? j : j - k;
    }

    MultilinearPoly out(k, std::min<std::uint32_t>(r.degree_bound(), k), r.group());
    for (const auto& [m, c] : r.terms()) {
        Monomial mapped;
        for (std::uint32_t pos : m) mapped.push_back(bucket[pos]);
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
        out.add_to_coeff(mapped, c);
    }
    return out;
}

std::vector<std::uint32_t> random_permutation(std::uint32_t size, Rng& rng) {
    std::vector<std::uint32_t> p(size);
    for (std::uint32_t i = 0; i < size; ++i) p[i] = i;
    for (std::uint32_t i = size; i > 1; --i)
        std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

}  // namespace boolecc
