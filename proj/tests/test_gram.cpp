#include <doctest.h>

#include <cmath>
#include <limits>

#include "pssk/errors.hpp"
#include "pssk/gram.hpp"
#include "pssk/jacobi.hpp"
#include "pssk/matching.hpp"
#include "pssk/rng.hpp"
#include "oracles.hpp"

using namespace pssk;

TEST_CASE("gram matrix basics") {
    PersistenceDiagram d({{0, 1}, {0.5, 2}});
    GramMatrix single = gram_matrix({d}, {KernelFamily::pssk, 0.5});
    REQUIRE(single.n == 1);
    CHECK(single.at(0, 0) == pssk_eval(d, d, {0.5}));

    GramMatrix zeros = gram_matrix({PersistenceDiagram{}, PersistenceDiagram{}},
                                   {KernelFamily::pssk, 1.0});
    for (double v : zeros.entries) CHECK(v == 0.0);

    CHECK_THROWS_AS(gram_matrix({d}, {KernelFamily::pssk, 0.0}), NonPositiveScale);
}

TEST_CASE("gram entries are exactly symmetric and thread-invariant") {
    Rng rng(1701);
    std::vector<PersistenceDiagram> diagrams;
    for (int i = 0; i < 12; ++i) diagrams.push_back(oracles::random_diagram(rng, 6, 0, 1));
    GramMatrix serial = gram_matrix(diagrams, {KernelFamily::pssk, 0.5}, 1);
    GramMatrix parallel = gram_matrix(diagrams, {KernelFamily::pssk, 0.5}, 4);
    CHECK(serial.entries == parallel.entries);
    for (std::size_t i = 0; i < serial.n; ++i) {
        for (std::size_t j = 0; j < serial.n; ++j) {
            CHECK(serial.at(i, j) == serial.at(j, i));
        }
    }
}

TEST_CASE("kernel gram matrices are positive semidefinite") {
    Rng rng(1702);
    const double sigmas[] = {0.01, 0.1, 1.0, 10.0};
    for (int collection = 0; collection < 50; ++collection) {
        std::size_t n = 4 + rng.next_below(9);
        std::vector<PersistenceDiagram> diagrams;
        for (std::size_t i = 0; i < n; ++i) diagrams.push_back(oracles::random_diagram(rng, 8, 0, 1));

        GramMatrix pssk_gram =
            gram_matrix(diagrams, {KernelFamily::pssk, sigmas[collection % 4]});
        auto eigs = sym_eigenvalues(pssk_gram.entries, n);
        CHECK(eigs.front() >= -1e-8 * std::max(0.0, eigs.back()));

        GramMatrix land_gram = gram_matrix(diagrams, {KernelFamily::landscape});
        eigs = sym_eigenvalues(land_gram.entries, n);
        CHECK(eigs.front() >= -1e-8 * std::max(0.0, eigs.back()));
    }
}

TEST_CASE("definiteness report on simple matrices") {
    DefinitenessReport zero = definiteness_check(std::vector<double>(9, 0.0), 3, 1e-8);
    CHECK(zero.psd);
    CHECK(zero.cnd);
    CHECK(zero.n_positive == 0);
    CHECK(zero.n_negative == 0);

    // Squared distances on the line are c.n.d. (classic negative-type metric);
    // their negation is c.p.d. but not c.n.d.
    std::vector<double> xs{0.0, 1.0, 3.0, -2.0};
    std::vector<double> m(16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m[i * 4 + j] = (xs[i] - xs[j]) * (xs[i] - xs[j]);
    }
    DefinitenessReport report = definiteness_check(m, 4, 1e-10);
    CHECK_FALSE(report.psd);  // zero trace with nonzero entries: mixed spectrum
    CHECK(report.cnd);

    for (auto& v : m) v = -v;
    DefinitenessReport flipped = definiteness_check(m, 4, 1e-10);
    CHECK_FALSE(flipped.psd);
    CHECK_FALSE(flipped.cnd);

    std::string text = definiteness_report_text(report);
    CHECK(text.find("psd false") != std::string::npos);
    CHECK(text.find("cnd true") != std::string::npos);
    CHECK(text.find("eigenvalue 0 ") != std::string::npos);
}

TEST_CASE("pssk gram is reported positive semidefinite") {
    Rng rng(1703);
    std::vector<PersistenceDiagram> diagrams;
    for (int i = 0; i < 10; ++i) diagrams.push_back(oracles::random_diagram(rng, 6, 0, 1));
    GramMatrix gram = gram_matrix(diagrams, {KernelFamily::pssk, 0.5});
    CHECK(definiteness_check(gram, 1e-8).psd);
}

TEST_CASE("indefiniteness witness for each exponent") {
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        IndefinitenessWitness witness = indefiniteness_search(p, 1.0, 30, 20250101, 500);
        REQUIRE(witness.diagrams.size() == 30);

        // The distance Gram has >= 2 positive and >= 2 negative eigenvalues.
        double max_abs = 0.0;
        for (double e : witness.distance_eigenvalues) max_abs = std::max(max_abs, std::abs(e));
        std::size_t pos = 0, neg = 0;
        for (double e : witness.distance_eigenvalues) {
            if (e > 1e-6 * max_abs) ++pos;
            if (e < -1e-6 * max_abs) ++neg;
        }
        CHECK(pos >= 2);
        CHECK(neg >= 2);
        // Mixed spectrum on both signs: neither c.p.d. nor c.n.d.
        CHECK(witness.report_minus_d.n_positive >= 2);
        CHECK(witness.report_minus_d.n_negative >= 2);
        CHECK_FALSE(witness.report_minus_d.cnd);
        CHECK_FALSE(witness.report_minus_d.psd);
        CHECK_FALSE(witness.report_exp.psd);  // exp(-xi d) has a negative eigenvalue
        CHECK(witness.report_exp.eigenvalues.front() < 0.0);

        // Distances in the witness matrix really are d_{W,p} of the diagrams.
        const std::size_t n = witness.diagrams.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double d = wasserstein_distance(witness.diagrams[i], witness.diagrams[j], p);
                CHECK(std::abs(witness.distance_matrix[i * n + j] - d) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(indefiniteness_search(1.0, 1.0, 6, 20250101, 0), SearchExhausted);
    CHECK_THROWS_AS(indefiniteness_search(1.0, 1.0, 3, 1, 10), TooFewItems);
}

TEST_CASE("witness search is reproducible under its seed") {
    IndefinitenessWitness a = indefiniteness_search(1.0, 1.0, 30, 42, 500);
    IndefinitenessWitness b = indefiniteness_search(1.0, 1.0, 30, 42, 500);
    CHECK(a.trial == b.trial);
    CHECK(a.xi_used == b.xi_used);
    CHECK(a.distance_matrix == b.distance_matrix);
    for (std::size_t i = 0; i < a.diagrams.size(); ++i) CHECK(a.diagrams[i] == b.diagrams[i]);
}

TEST_CASE("precomputed-kernel export format") {
    GramMatrix g{1, {0.5}, {"0"}};
    CHECK(export_gram(g, {3}) == "3 0:1 1:0.5\n");

    GramMatrix empty{0, {}, {}};
    CHECK(export_gram(empty, {}) == "");

    Rng rng(1704);
    std::vector<PersistenceDiagram> diagrams;
    for (int i = 0; i < 5; ++i) diagrams.push_back(oracles::random_diagram(rng, 5, 0, 1));
    GramMatrix gram = gram_matrix(diagrams, {KernelFamily::pssk, 0.7});
    std::vector<int> labels{4, 2, 2, 1, 4};
    std::vector<int> parsed_labels;
    GramMatrix parsed = parse_gram_export(export_gram(gram, labels), parsed_labels);
    CHECK(parsed.entries == gram.entries);
    CHECK(parsed_labels == labels);
}
