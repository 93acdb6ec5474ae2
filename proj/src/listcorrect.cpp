#include "boolecc/listcorrect.hpp"

#include <cassert>
#include <stdexcept>

#include "boolecc/rng.hpp"

namespace boolecc {

std::uint64_t ApproxOracle::fingerprint() const {
    std::uint64_t h = mix64(C.n, C.k);
    for (std::uint64_t w : C.a.words()) h = mix64(h, w);
    for (std::uint32_t b : C.h) h = mix64(h, b);
    for (std::uint32_t s : sigma) h = mix64(h, s + 1);
    return h;
}

namespace {

std::vector<MultilinearPoly> advice_list(QueryOracle& f, const SubcubeEmbedding& emb,
                                         const Rat& radius) {
    std::vector<std::uint8_t> t8;
    if (auto m = f.compact_modulus(); m && *m == 2 && f.fill_cube_compact(emb, t8)) {
        CompactTable ct{emb.k, 2, std::move(t8)};
        std::vector<MultilinearPoly> out;
        auto z2 = f.group();
        for (const auto& a : wht_affine_list(ct, radius))
            out.push_back(affine_to_poly(a, emb.k, z2));
        return out;
    }
    return list_decode(f.fill_cube(emb), 1, radius);
}

struct AffineZ2 {
    std::uint64_t slope = 0;
    std::uint8_t c0 = 0;
};

AffineZ2 poly_to_affine(const MultilinearPoly& p) {
    AffineZ2 a;
    for (const auto& [m, c] : p.terms()) {
        if (m.empty()) a.c0 = 1;
        else a.slope |= 1ULL << m[0];
        (void)c;  // coefficients over Z_2 are 1
    }
    return a;
}

}  // namespace

std::vector<ApproxOracle> build_approx_oracles(QueryOracle& f, const Rat& eps, std::uint32_t k,
                                               std::uint32_t ell, std::uint64_t seed) {
    if (k == 0 || k % 2 != 0) throw std::invalid_argument("k must be even and positive");
    if (k > f.n()) throw std::invalid_argument("need k <= n");
    if (ell < 1) throw std::invalid_argument("need ell >= 1");
    if (eps <= 0 || eps > Rat(1, 2)) throw std::invalid_argument("need 0 < eps <= 1/2");

    const Rat radius = Rat(1, 2) - eps / 2;
    std::vector<std::pair<SubcubeEmbedding, MultilinearPoly>> found;
    for (std::uint32_t it = 0; it < ell; ++it) {
        SubcubeEmbedding emb =
            random_embedding(f.n(), k, mix64(seed, mix64(seedtag::advice, it)));
        for (auto& q : advice_list(f, emb, radius))
            found.emplace_back(emb, std::move(q));
    }
    Rng srng = Rng::derive(seed, {seedtag::sigma});
    std::vector<std::uint32_t> sigma = random_permutation(2 * k, srng);

    std::vector<ApproxOracle> out;
    out.reserve(found.size());
    for (auto& [emb, q] : found)
        out.push_back(ApproxOracle{std::move(emb), sigma, std::move(q), eps});
    return out;
}

PsiCache::Decoded* PsiCache::find(std::uint64_t cube_fp, const PointN& b) {
    auto it = map_.find({cube_fp, b});
    return it == map_.end() ? nullptr : &it->second;
}

void PsiCache::store(std::uint64_t cube_fp, const PointN& b, Decoded d) {
    map_.emplace(std::make_pair(cube_fp, b), std::move(d));
}

GroupValue psi_eval(const ApproxOracle& oracle, QueryOracle& f, const PointN& b,
                    PsiCache* cache) {
    if (b.n() != f.n() || oracle.C.n != f.n())
        throw std::invalid_argument("psi point dimension mismatch");
    if (oracle.C.k % 2 != 0) throw std::invalid_argument("psi needs even k");
    if (oracle.Q.degree() > 1) throw std::invalid_argument("advice must have degree <= 1");

    const std::uint32_t k = oracle.C.k;
    SpannedSubcube span = span_with(oracle.C, b, oracle.sigma);
    assert(span.w.weight() == k);
    assert(embed(span.base, span.w) == b);

    const Rat radius = Rat(1, 2) - oracle.eps / 2;
    const std::uint64_t fp = oracle.fingerprint();

    PsiCache::Decoded fresh;
    PsiCache::Decoded* dec = cache ? cache->find(fp, b) : nullptr;
    if (!dec) {
        std::vector<std::uint8_t> t8;
        if (auto m = f.compact_modulus(); m && *m == 2 && f.fill_cube_compact(span.base, t8)) {
            fresh.compact = true;
            CompactTable ct{2 * k, 2, std::move(t8)};
            fresh.affine = wht_affine_list(ct, radius);
        } else {
            fresh.polys = list_decode(f.fill_cube(span.base), 1, radius);
        }
        if (cache) {
            cache->store(fp, b, std::move(fresh));
            dec = cache->find(fp, b);
        } else {
            dec = &fresh;
        }
    }

    if (dec->compact) {
        const AffineZ2 q = poly_to_affine(oracle.Q);
        const std::uint64_t wbits = span.w.bits64();
        for (const auto& r : dec->affine) {
            // pairing restriction: y_j coefficient is the sum of the
            // coefficients at positions sigma(j) and sigma(j+k)
            std::uint64_t rslope = 0;
            for (std::uint32_t j = 0; j < k; ++j) {
                const std::uint64_t bit =
                    ((r.slope >> oracle.sigma[j]) ^ (r.slope >> oracle.sigma[j + k])) & 1;
                rslope |= bit << j;
            }
            if (rslope == q.slope && r.c0 == q.c0)
                return GroupValue::from_int(f.group(), r.eval(wbits) ? 1 : 0);
        }
        return GroupValue::zero(f.group());
    }

    for (const auto& r : dec->polys)
        if (restrict_pair(r, oracle.sigma) == oracle.Q) return r.evaluate(span.w);
    return GroupValue::zero(f.group());
}

std::uint32_t ListCorrectParams::effective_ell() const {
    if (ell) return ell;
    std::uint32_t e = 1;
    while ((1u << e) < list_cap) ++e;
    return e + 1;
}

GroupValue PointCorrector::correct_at(QueryOracle& f, const PointN& b, std::uint64_t seed,
                                      PsiCache* cache) const {
    FnOracle psi_oracle(f.n(), f.group(), [this, &f, cache](const PointN& x) {
        return psi_eval(oracle, f, x, cache);
    });
    CorrectorParams p = wrapper;
    p.seed = seed;
    return unique_correct(psi_oracle, b, p);
}

std::vector<PointCorrector> local_list_correct(QueryOracle& f, const Rat& eps,
                                               const ListCorrectParams& params) {
    params.wrapper.validate();
    std::vector<ApproxOracle> oracles =
        build_approx_oracles(f, eps, params.k, params.effective_ell(), params.seed);
    std::vector<PointCorrector> out;
    out.reserve(oracles.size());
    for (auto& o : oracles) out.push_back(PointCorrector{std::move(o), params.wrapper});
    return out;
}

}  // namespace boolecc
