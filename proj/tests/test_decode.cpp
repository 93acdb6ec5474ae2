#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "boolecc/decode.hpp"
#include "boolecc/experiment.hpp"
#include "boolecc/rng.hpp"

using namespace boolecc;

namespace {

GroupValue iv(const GroupSpecPtr& g, long v) { return GroupValue::from_int(g, Int(v)); }

MultilinearPoly random_poly(std::uint32_t n, int d, const GroupSpecPtr& g, Rng& rng) {
    const std::uint64_t m = static_cast<std::uint64_t>(g->modulus());
    MultilinearPoly p(n, d, g);
    const std::uint64_t full = (1ULL << n) - 1;
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
        if (std::popcount(mask) > d) continue;
        Monomial mono;
        for (std::uint32_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) mono.push_back(i);
        p.set_coeff(mono, iv(g, static_cast<long>(rng.below(m))));
        if (mask == full) break;
    }
    return p;
}

DenseTable random_table(std::uint32_t n, const GroupSpecPtr& g, Rng& rng) {
    DenseTable t;
    t.n = n;
    t.group = g;
    const std::uint64_t m = static_cast<std::uint64_t>(g->modulus());
    for (std::uint64_t x = 0; x < (1ULL << n); ++x)
        t.values.push_back(iv(g, static_cast<long>(rng.below(m))));
    return t;
}

}  // namespace

TEST_CASE("unique_decode recovers exact tables, n <= 6, d <= 2") {
    Rng rng(6001);
    std::vector<GroupSpecPtr> groups{GroupSpec::cyclic(2), GroupSpec::cyclic(3),
                                     GroupSpec::cyclic(5), GroupSpec::cyclic(12)};
    for (int t = 0; t < 200; ++t) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(6));
        const int d = 1 + static_cast<int>(rng.below(std::min(n, 2u)));
        const auto& g = groups[rng.below(groups.size())];
        MultilinearPoly p = random_poly(n, d, g, rng);
        auto got = unique_decode(tabulate(p), d);
        REQUIRE(got.has_value());
        CHECK(*got == p);
    }
}

TEST_CASE("unique_decode under fewer than 2^{n-d-1} corruptions") {
    Rng rng(6002);
    auto z5 = GroupSpec::cyclic(5);
    for (int t = 0; t < 100; ++t) {
        const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(3));  // 4..6
        const int d = 1;
        MultilinearPoly p = random_poly(n, d, z5, rng);
        DenseTable f = tabulate(p);
        const std::uint64_t budget = (1ULL << (n - d - 1)) - 1;
        std::set<std::uint64_t> corrupted;
        while (corrupted.size() < budget) corrupted.insert(rng.below(1ULL << n));
        for (std::uint64_t x : corrupted) f.values[x] = f.values[x].add(iv(z5, 1));
        auto got = unique_decode(f, d);
        REQUIRE(got.has_value());
        CHECK(*got == p);
    }
}

TEST_CASE("unique_decode returns NONE at exact distance 1/4 (d=1, n=4)") {
    // constructed tie instance: f is 1 on a 4-point set S chosen so that no
    // linear polynomial is strictly closer than 1/4 (checked by brute force)
    auto z2 = GroupSpec::cyclic(2);
    Rng rng(6003);
    bool found_instance = false;
    for (int attempt = 0; attempt < 200 && !found_instance; ++attempt) {
        std::set<std::uint64_t> s;
        while (s.size() < 4) s.insert(rng.below(16));
        DenseTable f;
        f.n = 4;
        f.group = z2;
        for (std::uint64_t x = 0; x < 16; ++x)
            f.values.push_back(iv(z2, s.count(x) ? 1 : 0));
        // brute-force the nearest linear polynomial
        auto all = brute_force_list(f, 1, Rat(1));
        Rat best(1);
        for (const auto& p : all) {
            Rat d = distance_to_poly(f, p);
            if (d < best) best = d;
        }
        if (best != Rat(1, 4)) continue;
        found_instance = true;
        CHECK(!unique_decode(f, 1).has_value());
    }
    CHECK(found_instance);
}

TEST_CASE("generic and compact unique_decode agree (product-of-one wrapper)") {
    // product(cyclic(m)) routes through the generic decoder; cyclic(m) takes
    // the compact lane; the two groups are isomorphic
    Rng rng(6004);
    for (int t = 0; t < 60; ++t) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(4));
        const std::uint64_t m = 2 + rng.below(3);
        auto zc = GroupSpec::cyclic(m);
        auto zp = GroupSpec::product({zc});
        DenseTable fc = random_table(n, zc, rng);
        DenseTable fp;
        fp.n = n;
        fp.group = zp;
        for (const auto& v : fc.values) fp.values.push_back(GroupValue::tuple(zp, {v}));
        auto a = unique_decode(fc, 1);
        auto b = unique_decode(fp, 1);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            for (const auto& [mono, c] : a->terms())
                CHECK(b->coeff(mono) == GroupValue::tuple(zp, {c}));
        }
    }
}

TEST_CASE("list_decode basic examples") {
    auto z2 = GroupSpec::cyclic(2);
    Rng rng(6005);
    MultilinearPoly p = random_poly(5, 1, z2, rng);
    auto list = list_decode(tabulate(p), 1, Rat(1, 4));
    REQUIRE(list.size() == 1);
    CHECK(list[0] == p);
}

TEST_CASE("brute_force_list examples") {
    auto z2 = GroupSpec::cyclic(2);
    DenseTable zero;
    zero.n = 2;
    zero.group = z2;
    zero.values.assign(4, GroupValue::zero(z2));
    auto list = brute_force_list(zero, 1, Rat(0));
    REQUIRE(list.size() == 1);
    CHECK(list[0].is_zero());

    // n=1, f = (0,1) = x1: direct enumeration of the 4 linear polys gives
    // x1 at distance 0, the constants 0 and 1 at distance 1/2, and x1+1 at
    // distance 1 (it disagrees at both points)
    DenseTable f;
    f.n = 1;
    f.group = z2;
    f.values = {iv(z2, 0), iv(z2, 1)};
    auto l2 = brute_force_list(f, 1, Rat(1, 2));
    REQUIRE(l2.size() == 3);
    CHECK(distance_to_poly(f, l2.front()) == Rat(0));  // x1 itself comes first
    CHECK(distance_to_poly(f, l2[1]) == Rat(1, 2));
    CHECK(distance_to_poly(f, l2[2]) == Rat(1, 2));
    auto l3 = brute_force_list(f, 1, Rat(1));
    CHECK(l3.size() == 4);

    // budget guard
    ListDecodeConfig tight;
    tight.enum_budget = 2;
    CHECK_THROWS_AS(brute_force_list(f, 1, Rat(1, 2), tight), budget_exceeded_error);
}

TEST_CASE("list_decode equals brute force on random tables (independent strategies)") {
    Rng rng(6006);
    for (int t = 0; t < 300; ++t) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(4));
        const std::uint64_t m = 2 + rng.below(3);  // 2, 3, 4
        auto g = GroupSpec::cyclic(m);
        DenseTable f = random_table(n, g, rng);
        const Rat radius(7, 20);
        auto fast = list_decode(f, 1, radius);
        auto brute = brute_force_list(f, 1, radius);
        REQUIRE(fast.size() == brute.size());
        for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == brute[i]);
    }
}

TEST_CASE("list_decode output is duplicate-free, in-radius, monotone in radius") {
    Rng rng(6007);
    for (int t = 0; t < 50; ++t) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(3));
        auto g = GroupSpec::cyclic(2 + rng.below(2));
        DenseTable f = random_table(n, g, rng);
        const Rat r1(1, 4), r2(2, 5);
        auto small = list_decode(f, 1, r1);
        auto large = list_decode(f, 1, r2);
        std::set<std::string> small_keys, large_keys;
        for (const auto& p : small) {
            CHECK(distance_to_poly(f, p) <= r1);
            CHECK(small_keys.insert(p.canonical()).second);  // no duplicates
        }
        for (const auto& p : large) CHECK(large_keys.insert(p.canonical()).second);
        for (const auto& k : small_keys) CHECK(large_keys.count(k) == 1);
    }
}

TEST_CASE("list ordering: distance ascending, canonical tie-break") {
    Rng rng(6008);
    auto z3 = GroupSpec::cyclic(3);
    DenseTable f = random_table(3, z3, rng);
    auto list = list_decode(f, 1, Rat(2, 5));
    for (size_t i = 1; i < list.size(); ++i) {
        Rat d0 = distance_to_poly(f, list[i - 1]);
        Rat d1 = distance_to_poly(f, list[i]);
        CHECK(d0 <= d1);
        if (d0 == d1) CHECK(list[i - 1].canonical() < list[i].canonical());
    }
}

TEST_CASE("wht strategy matches the assembly strategy on cyclic(2)") {
    // both are exact; compare them directly on random tables
    Rng rng(6009);
    auto z2 = GroupSpec::cyclic(2);
    for (int t = 0; t < 100; ++t) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(4));
        DenseTable f = random_table(n, z2, rng);
        const Rat radius(3, 10);
        auto via_wht = list_decode(f, 1, radius);  // routes to WHT for m=2
        auto via_brute = brute_force_list(f, 1, radius);
        REQUIRE(via_wht.size() == via_brute.size());
        for (size_t i = 0; i < via_wht.size(); ++i) CHECK(via_wht[i] == via_brute[i]);
    }
}
