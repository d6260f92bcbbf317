#include <doctest.h>

#include "modseries/io.hpp"
#include "modseries/relation.hpp"
#include "test_util.hpp"

using namespace modseries;

namespace {

const int N = 700;

ModSeries Smod(u64 m) { return reduce(tu::normalized4(N), m); }

}  // namespace

TEST_CASE("printed relations certify against S mod p") {
    for (const char* name :
         {"rel_eq29_p3.json", "rel_eq38_p5.json", "rel_eq39_p7.json", "rel_eq40_p11.json",
          "rel_eq41_p13.json", "rel_eq37_p9.json", "rel_eqA1_p17.json", "rel_eqA2_p19.json"}) {
        BivariateRelation rel = relation_from_json(tu::load_json(name));
        CAPTURE(name);
        CHECK(verify_relation(rel, Smod(rel.modulus)));
    }
}

TEST_CASE("falsified relation is rejected") {
    BivariateRelation rel = relation_from_json(tu::load_json("rel_eq38_p5.json"));
    rel.terms[0].c = (rel.terms[0].c + 1) % 5;
    CHECK_FALSE(verify_relation(rel, Smod(5)));
    BivariateRelation other = relation_from_json(tu::load_json("rel_eq29_p3.json"));
    CHECK_THROWS_AS(verify_relation(other, Smod(5)), DomainError);
}

TEST_CASE("trivial relation S - 1 on the constant series") {
    ModSeries one("w", 5, 50);
    one[0] = 1;
    BivariateRelation rel;
    rel.modulus = 5;
    rel.terms = {{0, 1, 1}, {0, 0, 4}};
    rel.recompute_degrees();
    CHECK(verify_relation(rel, one));
}

TEST_CASE("guess_relation rediscovers Eq. 38 and Eq. 39") {
    auto r5 = guess_relation(Smod(5), 2, 2, 200);
    REQUIRE(r5.has_value());
    BivariateRelation expect5 = relation_from_json(tu::load_json("rel_eq38_p5.json"));
    expect5.normalize();
    CHECK(r5->rel == expect5);

    auto r7 = guess_relation(Smod(7), 4, 4, 200);
    REQUIRE(r7.has_value());
    BivariateRelation expect7 = relation_from_json(tu::load_json("rel_eq39_p7.json"));
    expect7.normalize();
    CHECK(r7->rel == expect7);

    // trivial: constant 1 admits S - 1
    ModSeries one("w", 5, 100);
    one[0] = 1;
    auto rc = guess_relation(one, 1, 0, 50);
    REQUIRE(rc.has_value());
    CHECK(rc->rel.terms == std::vector<BivariateRelation::Term>{{0, 0, 4}, {0, 1, 1}});
}

TEST_CASE("guess_relation over the prime power 9 rediscovers a relation") {
    auto r9 = guess_relation(Smod(9), 6, 17, 200);
    REQUIRE(r9.has_value());
    CHECK(verify_relation(r9->rel, Smod(9)));
}

TEST_CASE("search_relation schedules budgets deterministically") {
    // geometric series mod 3: (1-w) S - 1 = 0 found at the smallest budget
    ModSeries geo("w", 3, 200);
    for (int k = 0; k <= 200; ++k) geo[k] = 1;
    auto r = search_relation(geo, 50, 50);
    REQUIRE(r.has_value());
    CHECK(r->degS == 1);
    CHECK(r->degW == 1);
    CHECK(verify_relation(*r, geo));

    auto r3 = search_relation(Smod(3), 30, 200);
    REQUIRE(r3.has_value());
    CHECK(r3->degS == 3);
    CHECK(r3->degW == 5);
    BivariateRelation expect3 = relation_from_json(tu::load_json("rel_eq29_p3.json"));
    expect3.normalize();
    CHECK(*r3 == expect3);
}

TEST_CASE("relations remain valid on longer regenerations and prefixes") {
    BivariateRelation rel = relation_from_json(tu::load_json("rel_eq29_p3.json"));
    IntegerSeries longer = normalized_series(tutte_series(Int(4), 902));
    CHECK(verify_relation(rel, reduce(longer, 3)));
    CHECK(verify_relation(rel, Smod(3).truncated(123)));
}

TEST_CASE("guess_frobenius: lacunary cube relation and the constant") {
    ModSeries l3 = lacunary_series(LacKind::L3, 3, 400);
    auto r = guess_frobenius(l3, 1, 1);
    REQUIRE(r.has_value());
    CHECK(verify_frobenius(*r, l3));
    // expect S^3 - S + w (up to scalar): exponents {0, 1, 3}
    std::vector<long> exps;
    for (const auto& t : r->terms) exps.push_back(t.exponent);
    CHECK(exps == std::vector<long>{0, 1, 3});

    ModSeries one("w", 2, 64);
    one[0] = 1;
    auto rc = guess_frobenius(one, 0, 0);
    REQUIRE(rc.has_value());
    CHECK(verify_frobenius(*rc, one));
}

TEST_CASE("relation JSON round trip") {
    BivariateRelation rel = relation_from_json(tu::load_json("rel_eq40_p11.json"));
    CHECK(relation_from_json(to_json(rel)) == rel);
    FrobeniusRelation fr;
    fr.p = 2;
    fr.terms = {{0, {1}}, {64, {1, 0, 1}}};
    FrobeniusRelation back = frobenius_from_json(to_json(fr));
    CHECK(back.p == fr.p);
    REQUIRE(back.terms.size() == 2);
    CHECK(back.terms[1].poly == fr.terms[1].poly);
}
