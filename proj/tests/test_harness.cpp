#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boolecc/experiment.hpp"
#include "boolecc/json_io.hpp"
#include "boolecc/rng.hpp"

using namespace boolecc;

namespace {
GroupValue iv(const GroupSpecPtr& g, long v) { return GroupValue::from_int(g, Int(v)); }

json linear_poly_json(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
    auto g = GroupSpec::cyclic(m);
    Rng rng(seed);
    MultilinearPoly p = random_linear_poly(n, g, rng);
    return poly_to_json(p);
}
}  // namespace

TEST_CASE("make_oracle: none model equals the truth polynomial") {
    json spec = {{"group", {{"kind", "cyclic"}, {"m", 5}}},
                 {"n", 8},
                 {"truth", linear_poly_json(8, 5, 1)},
                 {"error", {{"kind", "none"}}},
                 {"seed", 7}};
    auto oracle = make_oracle(spec);
    auto g = GroupSpec::cyclic(5);
    MultilinearPoly p = poly_from_json(g, spec["truth"]);
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        PointN x = random_point(8, rng);
        CHECK(oracle->query(x) == p.evaluate(x));
    }
}

TEST_CASE("make_oracle: random_density fraction близко nominal at delta = 0.1, n = 16") {
    json spec = {{"group", {{"kind", "cyclic"}, {"m", 3}}},
                 {"n", 16},
                 {"truth", linear_poly_json(16, 3, 3)},
                 {"error", {{"kind", "random_density"}, {"delta", "1/10"}, {"key", 12345}}},
                 {"seed", 9}};
    auto oracle = make_oracle(spec);
    auto g = GroupSpec::cyclic(3);
    MultilinearPoly p = poly_from_json(g, spec["truth"]);
    std::uint64_t corrupted = 0;
    for (std::uint64_t x = 0; x < (1ULL << 16); ++x) {
        PointN pt = PointN::from_bits64(16, x);
        corrupted += oracle->query(pt) != p.evaluate(pt);
    }
    const double fraction = static_cast<double>(corrupted) / (1ULL << 16);
    CHECK(fraction >= 0.08);
    CHECK(fraction <= 0.12);
    CHECK(oracle->query_count() == (1ULL << 16));
}

TEST_CASE("make_oracle: band adversary corruption fraction is the exact binomial tail") {
    // n = 16, width 4: the band is weights [4, 12]; the corrupted fraction is
    // 2 * (C(16,0)+C(16,1)+C(16,2)+C(16,3)) / 2^16 = 1394/65536 (~0.0213)
    json spec = {{"group", {{"kind", "cyclic"}, {"m", 7}}},
                 {"n", 16},
                 {"truth", linear_poly_json(16, 7, 5)},
                 {"error",
                  {{"kind", "band_adversary"}, {"width", 4}, {"values", json::array({1, 3})}}},
                 {"seed", 4}};
    auto oracle = make_oracle(spec);
    auto g = GroupSpec::cyclic(7);
    MultilinearPoly p = poly_from_json(g, spec["truth"]);
    std::uint64_t corrupted = 0;
    for (std::uint64_t x = 0; x < (1ULL << 16); ++x) {
        PointN pt = PointN::from_bits64(16, x);
        corrupted += oracle->query(pt) != p.evaluate(pt);
    }
    CHECK(corrupted == 1394);
    CHECK(Rat(Int(corrupted), Int(1) << 16) < Rat(1, 20));  // sparse corruption
}

TEST_CASE("make_oracle: explicit set and planted pair") {
    auto g = GroupSpec::cyclic(4);
    json spec = {{"group", {{"kind", "cyclic"}, {"m", 4}}},
                 {"n", 3},
                 {"truth", linear_poly_json(3, 4, 6)},
                 {"error",
                  {{"kind", "explicit_set"},
                   {"points", json::array({"101"})},
                   {"values", json::array({"3"})}}}};
    auto oracle = make_oracle(spec);
    CHECK(oracle->query(PointN::from_string("101")) == iv(g, 3));

    MultilinearPoly p1 = poly_from_json(g, linear_poly_json(3, 4, 7));
    MultilinearPoly p2 = poly_from_json(g, linear_poly_json(3, 4, 8));
    json spec2 = {{"group", {{"kind", "cyclic"}, {"m", 4}}},
                  {"n", 3},
                  {"truth", poly_to_json(p1)},
                  {"error", {{"kind", "planted_pair"}, {"p2", poly_to_json(p2)}, {"selector", 1}}}};
    auto planted = make_oracle(spec2);
    for (std::uint64_t x = 0; x < 8; ++x) {
        PointN pt = PointN::from_bits64(3, x);
        CHECK(planted->query(pt) == (pt.get(1) ? p1.evaluate(pt) : p2.evaluate(pt)));
    }
}

TEST_CASE("maj_instance: t = 1 is the dictator g*x1") {
    auto g = GroupSpec::cyclic(6);
    auto oracle = maj_instance(1, 4, iv(g, 5));
    for (std::uint64_t x = 0; x < 16; ++x) {
        PointN pt = PointN::from_bits64(4, x);
        CHECK(oracle->query(pt) == (pt.get(0) ? iv(g, 5) : GroupValue::zero(g)));
    }
    CHECK_THROWS_AS(maj_instance(2, 4, iv(g, 1)), std::invalid_argument);
    CHECK_THROWS_AS(maj_instance(5, 4, iv(g, 1)), std::invalid_argument);
    CHECK_THROWS_AS(maj_instance(1, 4, GroupValue::zero(g)), std::invalid_argument);
}

TEST_CASE("maj_instance: t = 5 dictator agreement is exactly 11/16") {
    auto g = GroupSpec::cyclic(2);
    auto oracle = maj_instance(5, 5, iv(g, 1));
    DenseTable f;
    f.n = 5;
    f.group = g;
    for (std::uint64_t x = 0; x < 32; ++x) f.values.push_back(oracle->query(PointN::from_bits64(5, x)));
    for (std::uint32_t i = 0; i < 5; ++i) {
        MultilinearPoly dict(5, 1, g);
        dict.set_coeff({i}, iv(g, 1));
        CHECK(Rat(1) - distance_to_poly(f, dict) == Rat(11, 16));
    }
}

TEST_CASE("reports are byte-identical for equal config and seed (minus wall time)") {
    ExperimentConfig cfg;
    cfg.scenario = "decode-equivalence";
    cfg.seed = 31337;
    cfg.params = {{"tables", 25}};
    ExperimentReport a = run_experiment(cfg);
    ExperimentReport b = run_experiment(cfg);
    a.doc.erase("wall_ms");
    b.doc.erase("wall_ms");
    CHECK(a.doc.dump() == b.doc.dump());
    CHECK(a.passed);
}

TEST_CASE("scenario smoke runs") {
    {
        ExperimentConfig cfg;
        cfg.scenario = "unique-correct";
        cfg.seed = 5;
        cfg.params = {{"n", 16}, {"m", 2}, {"delta", "1/10"}, {"trials", 40}, {"k", 6}};
        ExperimentReport rep = run_experiment(cfg);
        CHECK(rep.doc["trials"] == 40);
        CHECK(rep.doc["successes"].get<std::uint64_t>() <= 40);
        CHECK(rep.passed);
    }
    {
        ExperimentConfig cfg;
        cfg.scenario = "subcube-reduce";
        cfg.seed = 6;
        cfg.params = {{"n", 24}, {"m", 2}, {"delta", "1/10"}, {"k", 8}, {"trials", 60}};
        ExperimentReport rep = run_experiment(cfg);
        CHECK(rep.passed);
        CHECK(rep.doc["clean_oracle_exact"] == true);
    }
    {
        ExperimentConfig cfg;
        cfg.scenario = "sampling-check";
        cfg.seed = 7;
        cfg.params = {{"n", 12}, {"k", 10}, {"k_low", 3}, {"trials", 300}};
        ExperimentReport rep = run_experiment(cfg);
        CHECK(rep.passed);
    }
    {
        ExperimentConfig cfg;
        cfg.scenario = "maj-list";
        cfg.seed = 8;
        ExperimentReport rep = run_experiment(cfg);
        CHECK(rep.passed);
        CHECK(rep.doc["dictators_in_list"] == 5);
        // the full parity is the one extra member at the same agreement
        CHECK(rep.doc["list_size"] == 6);
        CHECK(rep.doc["non_dictator_members"].size() == 1);
    }
    ExperimentConfig bad;
    bad.scenario = "nope";
    CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
}

TEST_CASE("csv export carries the scalar fields") {
    ExperimentConfig cfg;
    cfg.scenario = "maj-list";
    cfg.seed = 11;
    ExperimentReport rep = run_experiment(cfg);
    std::string csv = rep.to_csv();
    CHECK(csv.find("scenario") != std::string::npos);
    CHECK(csv.find("maj-list") != std::string::npos);
    CHECK(csv.find("passed") != std::string::npos);
}

TEST_CASE("oracle spec and table JSON round trips") {
    auto g = GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::integers()});
    DenseTable t;
    t.n = 2;
    t.group = g;
    for (int i = 0; i < 4; ++i)
        t.values.push_back(GroupValue::tuple(
            g, {iv(GroupSpec::cyclic(2), i & 1), iv(GroupSpec::integers(), i - 2)}));
    DenseTable back = table_from_json(table_to_json(t));
    CHECK(back.n == t.n);
    for (int i = 0; i < 4; ++i) CHECK(back.values[i] == t.values[i]);

    // rationals in poly JSON
    auto q = GroupSpec::rationals();
    MultilinearPoly p(2, 1, q);
    p.set_coeff({0}, GroupValue::from_rational(q, Rat(-3, 7)));
    MultilinearPoly pr = poly_from_json(q, poly_to_json(p));
    CHECK(pr == p);
}

TEST_CASE("rational parsing accepts fractions, decimals, and integers") {
    CHECK(rat_from_json(json("1/10")) == Rat(1, 10));
    CHECK(rat_from_json(json("0.15")) == Rat(3, 20));
    CHECK(rat_from_json(json(2)) == Rat(2));
    CHECK(rat_from_json(json(0.25)) == Rat(1, 4));
}
