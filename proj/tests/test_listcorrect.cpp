#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boolecc/experiment.hpp"
#include "boolecc/listcorrect.hpp"
#include "boolecc/rng.hpp"

using namespace boolecc;

namespace {

GroupValue iv(const GroupSpecPtr& g, long v) { return GroupValue::from_int(g, Int(v)); }

MultilinearPoly random_linear_over(std::uint32_t n, const GroupSpecPtr& g, Rng& rng) {
    const std::uint64_t m = static_cast<std::uint64_t>(g->modulus());
    MultilinearPoly p(n, 1, g);
    p.set_coeff({}, iv(g, static_cast<long>(rng.below(m))));
    for (std::uint32_t i = 0; i < n; ++i)
        p.set_coeff({i}, iv(g, static_cast<long>(rng.below(m))));
    return p;
}

}  // namespace

TEST_CASE("build_approx_oracles rejects odd k and bad parameters") {
    auto z2 = GroupSpec::cyclic(2);
    Rng rng(1);
    MultilinearPoly p = random_linear_over(8, z2, rng);
    PolyOracle f(p, ErrorModel::none());
    CHECK_THROWS_AS(build_approx_oracles(f, Rat(1, 5), 3, 1, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_approx_oracles(f, Rat(1, 5), 0, 1, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_approx_oracles(f, Rat(1, 5), 2, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_approx_oracles(f, Rat(0), 2, 1, 7), std::invalid_argument);
}

TEST_CASE("clean oracle: the advice contains the restriction of the truth") {
    for (long m : {2L, 4L}) {
        auto g = GroupSpec::cyclic(m);
        Rng rng(2 + m);
        MultilinearPoly p = random_linear_over(10, g, rng);
        PolyOracle f(p, ErrorModel::none());
        const std::uint64_t before = f.query_count();
        auto oracles = build_approx_oracles(f, Rat(1, 5), 4, 3, 99);
        CHECK(f.query_count() - before == 3ULL * (1ULL << 4));  // ell * 2^k
        bool has_restriction = false;
        for (const auto& o : oracles)
            if (o.Q == restrict(p, o.C)) has_restriction = true;
        CHECK(has_restriction);
        // output size cap: at most ell * (list size per iteration)
        CHECK(oracles.size() <= 3 * 8u);
    }
}

TEST_CASE("psi computes P everywhere on a clean oracle, exhaustive n <= 8, k = 2") {
    // cyclic(4) exercises order-2 coefficients (2 + 2 = 0)
    for (long m : {2L, 4L}) {
        auto g = GroupSpec::cyclic(m);
        Rng rng(33 + m);
        for (std::uint32_t n : {4u, 8u}) {
            MultilinearPoly p = random_linear_over(n, g, rng);
            PolyOracle f(p, ErrorModel::none());
            SubcubeEmbedding C = random_embedding(n, 2, rng.next());
            std::vector<std::uint32_t> sigma = random_permutation(4, rng);
            ApproxOracle psi{C, sigma, restrict(p, C), Rat(1, 5)};
            for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
                PointN pt = PointN::from_bits64(n, b);
                CHECK(psi_eval(psi, f, pt) == p.evaluate(pt));
            }
        }
    }
}

TEST_CASE("psi query count is exactly 2^{2k} per evaluation") {
    auto z2 = GroupSpec::cyclic(2);
    Rng rng(44);
    for (std::uint32_t k : {2u, 4u, 6u}) {
        MultilinearPoly p = random_linear_over(16, z2, rng);
        PolyOracle f(p, ErrorModel::none());
        SubcubeEmbedding C = random_embedding(16, k, rng.next());
        std::vector<std::uint32_t> sigma = random_permutation(2 * k, rng);
        ApproxOracle psi{C, sigma, restrict(p, C), Rat(1, 5)};
        const std::uint64_t before = f.query_count();
        psi_eval(psi, f, random_point(16, rng));
        CHECK(f.query_count() - before == (1ULL << (2 * k)));
    }
}

TEST_CASE("psi memo answers equal fresh answers") {
    auto z2 = GroupSpec::cyclic(2);
    Rng rng(55);
    MultilinearPoly p1 = random_linear_over(12, z2, rng);
    MultilinearPoly p2 = p1;
    {
        MultilinearPoly diff(12, 1, z2);
        for (std::uint32_t i = 0; i < 12; ++i) diff.set_coeff({i}, iv(z2, 1));
        p2 = p1.add(diff);
    }
    PolyOracle f(p1, ErrorModel::planted_pair(p2, 0));
    auto oracles = build_approx_oracles(f, Rat(1, 5), 4, 2, 808);
    REQUIRE(!oracles.empty());
    PsiCache cache;
    for (int t = 0; t < 10; ++t) {
        PointN b = random_point(12, rng);
        for (const auto& o : oracles) {
            GroupValue fresh = psi_eval(o, f, b);
            GroupValue memo1 = psi_eval(o, f, b, &cache);
            GroupValue memo2 = psi_eval(o, f, b, &cache);  // cache hit
            CHECK(fresh == memo1);
            CHECK(fresh == memo2);
        }
    }
    CHECK(cache.size() > 0);
}

TEST_CASE("advice filter soundness on clean data, exhaustive k = 2, n <= 8") {
    // with f = P and Q = P|_C the filter may never produce a value other
    // than P(b); cyclic(4) covers the alpha = -alpha tie case
    for (long m : {2L, 4L}) {
        auto g = GroupSpec::cyclic(m);
        Rng rng(66 + m);
        for (int trial = 0; trial < 6; ++trial) {
            const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(5));  // 4..8
            MultilinearPoly p = random_linear_over(n, g, rng);
            PolyOracle f(p, ErrorModel::none());
            SubcubeEmbedding C = random_embedding(n, 2, rng.next());
            std::vector<std::uint32_t> sigma = random_permutation(4, rng);
            ApproxOracle psi{C, sigma, restrict(p, C), Rat(1, 5)};
            for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
                PointN pt = PointN::from_bits64(n, b);
                CHECK(psi_eval(psi, f, pt) == p.evaluate(pt));
            }
        }
    }
}

TEST_CASE("planted two-codeword instance: advice found, psi close to each codeword") {
    auto z2 = GroupSpec::cyclic(2);
    const std::uint32_t n = 16, k = 6;
    Rng rng(77);
    MultilinearPoly p1 = random_linear_over(n, z2, rng);
    MultilinearPoly diff(n, 1, z2);
    for (std::uint32_t i = 0; i < n; ++i) diff.set_coeff({i}, iv(z2, 1));
    MultilinearPoly p2 = p1.add(diff);
    PolyOracle f(p1, ErrorModel::planted_pair(p2, 0));

    int both_found = 0;
    const int runs = 10;
    for (int r = 0; r < runs; ++r) {
        auto oracles = build_approx_oracles(f, Rat(1, 5), k, 3, mix64(1000, r));
        const ApproxOracle* o1 = nullptr;
        const ApproxOracle* o2 = nullptr;
        for (const auto& o : oracles) {
            if (!o1 && o.Q == restrict(p1, o.C)) o1 = &o;
            if (!o2 && o.Q == restrict(p2, o.C)) o2 = &o;
        }
        if (!o1 || !o2) continue;
        ++both_found;
        // empirical distance of psi to its codeword
        Rng prng = Rng::derive(2000, {seedtag::point, static_cast<std::uint64_t>(r)});
        int bad1 = 0, bad2 = 0;
        const int pts = 60;
        for (int j = 0; j < pts; ++j) {
            PointN b = random_point(n, prng);
            bad1 += psi_eval(*o1, f, b) != p1.evaluate(b);
            bad2 += psi_eval(*o2, f, b) != p2.evaluate(b);
        }
        CHECK(bad1 <= pts / 10);
        CHECK(bad2 <= pts / 10);
    }
    CHECK(both_found >= 9);  // expected probability well above 0.9
}

TEST_CASE("local_list_correct on a clean oracle computes P everywhere tested") {
    auto z2 = GroupSpec::cyclic(2);
    Rng rng(88);
    const std::uint32_t n = 12;
    MultilinearPoly p = random_linear_over(n, z2, rng);
    PolyOracle f(p, ErrorModel::none());
    ListCorrectParams params;
    params.k = 4;
    params.ell = 2;
    params.seed = 3003;
    auto correctors = local_list_correct(f, Rat(1, 5), params);
    REQUIRE(!correctors.empty());
    const PointCorrector* match = nullptr;
    for (const auto& c : correctors)
        if (c.oracle.Q == restrict(p, c.oracle.C)) { match = &c; break; }
    REQUIRE(match != nullptr);
    for (int t = 0; t < 15; ++t) {
        PointN b = random_point(n, rng);
        CHECK(match->correct_at(f, b, rng.next()) == p.evaluate(b));
    }
    // list length is one wrapper per approx oracle
    auto oracles = build_approx_oracles(f, Rat(1, 5), params.k, params.ell, params.seed);
    CHECK(correctors.size() == oracles.size());
}

TEST_CASE("psi debug invariants: w has weight k and embeds to b") {
    auto z2 = GroupSpec::cyclic(2);
    Rng rng(99);
    MultilinearPoly p = random_linear_over(10, z2, rng);
    PolyOracle f(p, ErrorModel::none());
    for (int t = 0; t < 20; ++t) {
        SubcubeEmbedding C = random_embedding(10, 4, rng.next());
        std::vector<std::uint32_t> sigma = random_permutation(8, rng);
        PointN b = random_point(10, rng);
        SpannedSubcube s = span_with(C, b, sigma);
        CHECK(s.w.weight() == 4);
        CHECK(embed(s.base, s.w) == b);
    }
}
