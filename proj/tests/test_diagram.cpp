#include <doctest.h>

#include "pssk/diagram.hpp"
#include "pssk/errors.hpp"
#include "pssk/rng.hpp"
#include "oracles.hpp"

using namespace pssk;

TEST_CASE("parse_diagram reads points, comments and blank lines") {
    PersistenceDiagram d = parse_diagram("0 1\n2 5");
    REQUIRE(d.size() == 2);
    CHECK(d.points()[0] == DiagramPoint{0, 1});
    CHECK(d.points()[1] == DiagramPoint{2, 5});
    CHECK(d.dimension() == 0);

    CHECK(parse_diagram("").empty());
    CHECK(parse_diagram("# just a comment\n\n").empty());

    PersistenceDiagram tagged = parse_diagram("# dim: 1\n0 1\n");
    CHECK(tagged.dimension() == 1);

    PersistenceDiagram inline_comment = parse_diagram("0 1 # the first point\n");
    CHECK(inline_comment.size() == 1);
}

TEST_CASE("parse_diagram rejects bad input") {
    CHECK_THROWS_AS(parse_diagram("1 0"), DeathBeforeBirth);
    CHECK_THROWS_AS(parse_diagram("1"), MalformedLine);
    CHECK_THROWS_AS(parse_diagram("1 2 3"), MalformedLine);
    CHECK_THROWS_AS(parse_diagram("a b"), MalformedLine);
    CHECK_THROWS_AS(parse_diagram("nan 1"), NonFinite);
    CHECK_THROWS_AS(parse_diagram("0 inf"), NonFinite);
}

TEST_CASE("write_diagram round-trips") {
    CHECK(write_diagram(parse_diagram("0 1")) == "0 1\n");
    CHECK(write_diagram(PersistenceDiagram{}) == "");

    PersistenceDiagram tricky({{0.1, 0.30000000000000004}});
    CHECK(parse_diagram(write_diagram(tricky)) == tricky);

    PersistenceDiagram tagged({{0, 1}}, 1);
    CHECK(parse_diagram(write_diagram(tagged)) == tagged);
}

TEST_CASE("parse/write round-trip on random diagrams") {
    Rng rng(7101);
    for (int rep = 0; rep < 200; ++rep) {
        PersistenceDiagram d = oracles::random_diagram(rng, 64, -1e3, 1e3);
        CHECK(parse_diagram(write_diagram(d)) == d);
    }
}

TEST_CASE("mirror and persistence") {
    CHECK(mirror({0, 1}) == DiagramPoint{1, 0});
    CHECK(mirror({3.5, 3.5}) == DiagramPoint{3.5, 3.5});
    CHECK(mirror({2, 5}) == DiagramPoint{5, 2});

    Rng rng(7102);
    for (int rep = 0; rep < 100; ++rep) {
        DiagramPoint p{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        CHECK(mirror(mirror(p)) == p);
    }

    CHECK(persistence({0, 1}) == 1.0);
    CHECK(persistence({4.25, 4.25}) == 0.0);
    double lambda = 17.5;
    CHECK(persistence({-lambda, lambda}) == 2 * lambda);
}

TEST_CASE("canonical order and idempotence") {
    PersistenceDiagram d({{2, 5}, {0, 3}, {0, 1}});
    CHECK(d.points()[0] == DiagramPoint{0, 1});
    CHECK(d.points()[1] == DiagramPoint{0, 3});
    CHECK(d.points()[2] == DiagramPoint{2, 5});
    CHECK(PersistenceDiagram(d.points(), d.dimension()) == d);
}

TEST_CASE("diagram constructor enforces point invariants") {
    CHECK_THROWS_AS(PersistenceDiagram({{1, 0}}), DeathBeforeBirth);
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PersistenceDiagram({{0, inf}}), NonFinite);
}

TEST_CASE("multiset_union keeps multiplicities") {
    PersistenceDiagram a({{0, 1}});
    PersistenceDiagram two = multiset_union(a, a);
    REQUIRE(two.size() == 2);
    CHECK(two.points()[0] == two.points()[1]);

    CHECK(multiset_union(a, PersistenceDiagram{}) == a);

    PersistenceDiagram five = multiset_power(a, 5);
    CHECK(five.size() == 5);

    Rng rng(7103);
    for (int rep = 0; rep < 50; ++rep) {
        PersistenceDiagram f = oracles::random_diagram(rng, 8, -5, 5);
        PersistenceDiagram g = oracles::random_diagram(rng, 8, -5, 5);
        CHECK(multiset_union(f, g).size() == f.size() + g.size());
    }

    PersistenceDiagram dim1({{0, 1}}, 1);
    CHECK_THROWS_AS(multiset_union(a, dim1), DimensionMismatch);
}
