#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "boolecc/cube.hpp"
#include "boolecc/experiment.hpp"
#include "boolecc/json_io.hpp"
#include "boolecc/rng.hpp"

using namespace boolecc;

namespace {
GroupValue iv(const GroupSpecPtr& g, long v) { return GroupValue::from_int(g, Int(v)); }
}

TEST_CASE("embed examples") {
    SubcubeEmbedding emb{3, 2, PointN::from_string("101"), {0, 1, 0}};
    CHECK(embed(emb, PointN(2)) == emb.a);  // y = 0^k gives the base point

    SubcubeEmbedding id{3, 3, PointN(3), {0, 1, 2}};
    for (std::uint64_t y = 0; y < 8; ++y)
        CHECK(embed(id, PointN::from_bits64(3, y)) == PointN::from_bits64(3, y));

    // n=3, k=1, h constant, a=(1,0,1), y=(1): flip everything
    SubcubeEmbedding flip{3, 1, PointN::from_string("101"), {0, 0, 0}};
    CHECK(embed(flip, PointN::from_string("1")) == PointN::from_string("010"));

    CHECK_THROWS_AS(embed(id, PointN(2)), std::invalid_argument);
}

TEST_CASE("random_embedding determinism and parameter checks") {
    SubcubeEmbedding a = random_embedding(10, 4, 123);
    SubcubeEmbedding b = random_embedding(10, 4, 123);
    CHECK(a.a == b.a);
    CHECK(a.h == b.h);
    SubcubeEmbedding c = random_embedding(10, 4, 124);
    CHECK((c.a != a.a || c.h != a.h));
    CHECK_THROWS_AS(random_embedding(4, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_embedding(4, 0, 1), std::invalid_argument);
}

TEST_CASE("embedded point is uniform: chi-square at n=4 over 1e5 draws") {
    const std::uint32_t n = 4, k = 3;
    const int draws = 100000;
    PointN y = PointN::from_string("101");
    std::vector<int> counts(16, 0);
    for (int t = 0; t < draws; ++t) {
        SubcubeEmbedding emb = random_embedding(n, k, mix64(42, t));
        counts[embed(emb, y).bits64()]++;
    }
    double chi2 = 0;
    const double expect = draws / 16.0;
    for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
    // 15 dof at significance 1e-3
    CHECK(chi2 < 37.70);
}

TEST_CASE("pair correlation: x(y) xor x(y') has iid Bernoulli(1/2) coordinates") {
    // delta(y, y') = 1/2: per coordinate i, x(y)_i xor x(y')_i = 1 with
    // probability 1/2 independently, so the xor vector is uniform on 2^n
    const std::uint32_t n = 4, k = 4;
    const int draws = 100000;
    PointN y = PointN::from_string("1100");
    PointN yp = PointN::from_string("1010");  // distance 2 of 4
    std::vector<int> counts(16, 0);
    for (int t = 0; t < draws; ++t) {
        SubcubeEmbedding emb = random_embedding(n, k, mix64(77, t));
        counts[(embed(emb, y).bits64()) ^ (embed(emb, yp).bits64())]++;
    }
    double chi2 = 0;
    const double expect = draws / 16.0;
    for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 37.70);
}

TEST_CASE("span_with examples") {
    // b = a: embed(w) = a must hold
    SubcubeEmbedding emb = random_embedding(6, 2, 9);
    std::vector<std::uint32_t> sigma{2, 0, 3, 1};
    SpannedSubcube s = span_with(emb, emb.a, sigma);
    CHECK(s.w.weight() == emb.k);
    CHECK(embed(s.base, s.w) == emb.a);
    CHECK(embed(s.base, PointN(2 * emb.k)) == emb.a);

    // hand-executed: n=2, k=1, h = const 0, a = 00, b = 01, sigma = id
    SubcubeEmbedding e2{2, 1, PointN(2), {0, 0}};
    SpannedSubcube s2 = span_with(e2, PointN::from_string("01"), {0, 1});
    CHECK(s2.base.h == std::vector<std::uint32_t>{0, 1});
    CHECK(s2.w == PointN::from_string("01"));
    CHECK(embed(s2.base, s2.w) == PointN::from_string("01"));

    CHECK_THROWS_AS(span_with(e2, PointN(3), {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(span_with(e2, PointN(2), {0, 0}), std::invalid_argument);
}

TEST_CASE("spanned cube contains the original cube, exhaustive k <= 3") {
    Rng rng(31);
    for (std::uint32_t k = 1; k <= 3; ++k) {
        const std::uint32_t n = k + 3;
        SubcubeEmbedding emb = random_embedding(n, k, rng.next());
        PointN b = random_point(n, rng);
        std::vector<std::uint32_t> sigma = random_permutation(2 * k, rng);
        SpannedSubcube s = span_with(emb, b, sigma);

        std::set<PointN> big;
        for (std::uint64_t z = 0; z < (1ULL << (2 * k)); ++z)
            big.insert(embed(s.base, PointN::from_bits64(2 * k, z)));
        CHECK(big.count(b) == 1);
        for (std::uint64_t y = 0; y < (1ULL << k); ++y) {
            PointN img = embed(emb, PointN::from_bits64(k, y));
            CHECK(big.count(img) == 1);
            // the identified point z (z_{sigma(j)} = z_{sigma(j+k)} = y_j) maps to it
            PointN z(2 * k);
            for (std::uint32_t j = 0; j < k; ++j) {
                if ((y >> j) & 1) {
                    z.set(sigma[j], true);
                    z.set(sigma[j + k], true);
                }
            }
            CHECK(embed(s.base, z) == img);
        }
    }
}

TEST_CASE("restrict_pair examples") {
    auto z4 = GroupSpec::cyclic(4);
    MultilinearPoly c(2, 0, z4);
    c.set_coeff({}, iv(z4, 3));
    MultilinearPoly cr = restrict_pair(c, {0, 1});
    CHECK(cr.n() == 1);
    CHECK(cr.terms().size() == 1);
    CHECK(cr.coeff({}) == iv(z4, 3));

    // R = a*z1 + a*z2, k=1, sigma = id: identification sums coefficients
    MultilinearPoly r(2, 1, z4);
    r.set_coeff({0}, iv(z4, 1));
    r.set_coeff({1}, iv(z4, 1));
    MultilinearPoly got = restrict_pair(r, {0, 1});
    CHECK(got.coeff({0}) == iv(z4, 2));

    // order-2 coefficient: 2 + 2 = 0 in Z_4
    MultilinearPoly r2(2, 1, z4);
    r2.set_coeff({0}, iv(z4, 2));
    r2.set_coeff({1}, iv(z4, 2));
    CHECK(restrict_pair(r2, {0, 1}).is_zero());
}

TEST_CASE("restrict_pair consistency with direct evaluation, k <= 3") {
    Rng rng(13);
    auto z6 = GroupSpec::cyclic(6);
    for (std::uint32_t k = 1; k <= 3; ++k) {
        for (int t = 0; t < 50; ++t) {
            MultilinearPoly r(2 * k, 1, z6);
            for (std::uint32_t i = 0; i < 2 * k; ++i)
                r.set_coeff({i}, iv(z6, static_cast<long>(rng.below(6))));
            r.set_coeff({}, iv(z6, static_cast<long>(rng.below(6))));
            std::vector<std::uint32_t> sigma = random_permutation(2 * k, rng);
            MultilinearPoly q = restrict_pair(r, sigma);
            for (std::uint64_t y = 0; y < (1ULL << k); ++y) {
                PointN z(2 * k);
                for (std::uint32_t j = 0; j < k; ++j) {
                    if ((y >> j) & 1) {
                        z.set(sigma[j], true);
                        z.set(sigma[j + k], true);
                    }
                }
                CHECK(q.evaluate(PointN::from_bits64(k, y)) == r.evaluate(z));
            }
        }
    }
}

TEST_CASE("embed is injective when h is surjective") {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        const std::uint32_t n = 6, k = 3;
        SubcubeEmbedding emb = random_embedding(n, k, rng.next());
        std::set<std::uint32_t> buckets(emb.h.begin(), emb.h.end());
        if (buckets.size() != k) continue;
        std::set<PointN> images;
        for (std::uint64_t y = 0; y < (1ULL << k); ++y)
            images.insert(embed(emb, PointN::from_bits64(k, y)));
        CHECK(images.size() == (1ULL << k));
    }
}

TEST_CASE("sampling concentration at n=16, k=14 for densities 0.1 and 0.25") {
    for (const Rat& mu : {Rat(1, 10), Rat(1, 4)}) {
        std::vector<bool> pred = random_predicate(16, mu, 999);
        SamplingStats s = sampling_check(pred, 16, 14, 2000, Rat(1, 10), 4242);
        CHECK(s.tail_frequency < 0.05);
    }
}

TEST_CASE("trivial predicate has zero deviation") {
    std::vector<bool> empty(1 << 10, false);
    SamplingStats s = sampling_check(empty, 10, 6, 100, Rat(1, 100), 7);
    CHECK(s.tail_count == 0);
}

TEST_CASE("embedding JSON round trip") {
    SubcubeEmbedding emb = random_embedding(9, 4, 5);
    SubcubeEmbedding back = embedding_from_json(embedding_to_json(emb));
    CHECK(back.n == emb.n);
    CHECK(back.k == emb.k);
    CHECK(back.a == emb.a);
    CHECK(back.h == emb.h);
}
