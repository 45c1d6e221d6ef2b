#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pssk/errors.hpp"
#include "pssk/svm.hpp"
#include "pssk/rng.hpp"
#include "oracles.hpp"

using namespace pssk;

namespace {

// Two well-separated clusters of diagrams: low-persistence vs high-persistence
// points, with seeded jitter.
std::vector<PersistenceDiagram> separable_diagrams(std::vector<int>& labels, std::size_t per_class,
                                                   std::uint64_t seed) {
    Rng rng(seed);
    std::vector<PersistenceDiagram> diagrams;
    labels.clear();
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        bool big = i >= per_class;
        double pers = big ? 10.0 : 1.0;
        double b = rng.uniform(0, 0.2);
        diagrams.push_back(PersistenceDiagram({{b, b + pers + rng.uniform(-0.1, 0.1)}}));
        labels.push_back(big ? 1 : 0);
    }
    return diagrams;
}

}  // namespace

TEST_CASE("separable clusters train to zero error") {
    std::vector<int> labels;
    auto diagrams = separable_diagrams(labels, 8, 111);
    GramMatrix gram = gram_matrix(diagrams, {KernelFamily::pssk, 0.5});
    SvmModel model = svm_train(gram, labels, 10.0);
    CHECK_FALSE(model.shift_applied);

    std::vector<double> row(gram.n);
    for (std::size_t q = 0; q < gram.n; ++q) {
        for (std::size_t j = 0; j < gram.n; ++j) row[j] = gram.at(q, j);
        CHECK(svm_predict(model, row) == labels[q]);
    }
}

TEST_CASE("hard-margin limit has no margin violations on separable data") {
    std::vector<int> labels;
    auto diagrams = separable_diagrams(labels, 6, 222);
    GramMatrix gram = gram_matrix(diagrams, {KernelFamily::pssk, 0.5});
    SvmModel model = svm_train(gram, labels, 1e6);

    REQUIRE(model.binaries.size() == 1);
    const auto& binary = model.binaries.front();
    for (std::size_t i = 0; i < gram.n; ++i) {
        double f = binary.bias;
        for (std::size_t s : binary.support_indices) f += binary.coefficients[s] * gram.at(i, s);
        double y = labels[i] == binary.positive_label ? 1.0 : -1.0;
        CHECK(y * f >= 1.0 - 1e-2);  // within KKT tolerance of the margin
    }
}

TEST_CASE("KKT conditions hold at convergence on noisy data") {
    // Non-separable labels: flip two items across the clusters.
    std::vector<int> labels;
    auto diagrams = separable_diagrams(labels, 8, 999);
    std::swap(labels[0], labels[15]);
    GramMatrix gram = gram_matrix(diagrams, {KernelFamily::pssk, 0.5});
    const double c = 2.0;
    SvmModel model = svm_train(gram, labels, c);
    REQUIRE(model.binaries.size() == 1);
    const auto& binary = model.binaries.front();

    // Recover the dual gradient from the coefficients and re-check the
    // maximal violating pair gap against the solver tolerance.
    const std::size_t n = gram.n;
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double y = labels[i] == binary.positive_label ? 1.0 : -1.0;
        double alpha = binary.coefficients[i] * y;  // coefficients store alpha*y
        CHECK(alpha >= -1e-12);
        CHECK(alpha <= c + 1e-12);
        double f = 0.0;
        for (std::size_t j = 0; j < n; ++j) f += binary.coefficients[j] * gram.at(i, j);
        double grad = y * f - 1.0;  // d/d alpha_i of the dual objective
        bool in_up = (y > 0 && alpha < c) || (y < 0 && alpha > 0);
        bool in_low = (y < 0 && alpha < c) || (y > 0 && alpha > 0);
        if (in_up) m_up = std::max(m_up, -y * grad);
        if (in_low) m_low = std::min(m_low, -y * grad);
    }
    CHECK(m_up - m_low <= 1e-3 + 1e-9);
}

TEST_CASE("single class is rejected") {
    std::vector<int> labels{0, 0, 0};
    std::vector<PersistenceDiagram> diagrams(3, PersistenceDiagram({{0, 1}}));
    GramMatrix gram = gram_matrix(diagrams, {KernelFamily::pssk, 0.5});
    CHECK_THROWS_AS(svm_train(gram, labels, 1.0), SingleClass);
}

TEST_CASE("indefinite gram matrices are shift-regularized") {
    GramMatrix gram{2, {0.0, 1.0, 1.0, 0.0}, {"0", "1"}};
    SvmModel model = svm_train(gram, {0, 1}, 1.0);
    CHECK(model.shift_applied);
    CHECK(model.shift_amount >= 1.0);
}

TEST_CASE("predictions are invariant under training permutation") {
    std::vector<int> labels;
    auto diagrams = separable_diagrams(labels, 5, 333);
    // Three classes to exercise one-vs-one voting.
    for (int i = 0; i < 5; ++i) {
        Rng rng(400 + i);
        diagrams.push_back(PersistenceDiagram({{5.0 + rng.uniform(0, 0.2), 10.0}}));
        labels.push_back(2);
    }
    GramMatrix gram = gram_matrix(diagrams, {KernelFamily::pssk, 1.0});
    SvmModel model = svm_train(gram, labels, 10.0);

    // Permute the training items and retrain.
    std::vector<std::size_t> perm(diagrams.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    Rng rng(555);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);

    std::vector<PersistenceDiagram> pd;
    std::vector<int> pl;
    for (std::size_t i : perm) {
        pd.push_back(diagrams[i]);
        pl.push_back(labels[i]);
    }
    GramMatrix pgram = gram_matrix(pd, {KernelFamily::pssk, 1.0});
    SvmModel pmodel = svm_train(pgram, pl, 10.0);

    Rng probe_rng(777);
    for (int rep = 0; rep < 20; ++rep) {
        PersistenceDiagram probe = oracles::random_diagram(probe_rng, 3, 0, 10);
        std::vector<double> row(gram.n), prow(gram.n);
        for (std::size_t j = 0; j < gram.n; ++j) row[j] = pssk_eval(probe, diagrams[j], {1.0});
        for (std::size_t j = 0; j < gram.n; ++j) prow[j] = pssk_eval(probe, pd[j], {1.0});
        CHECK(svm_predict(model, row) == svm_predict(pmodel, prow));
    }
}

TEST_CASE("stratified folds are deterministic and balanced") {
    std::vector<int> labels{0, 0, 0, 0, 1, 1, 1, 1, 1, 1};
    auto folds = stratified_folds(labels, 2, 99);
    CHECK(folds == stratified_folds(labels, 2, 99));
    std::size_t zero_in_0 = 0, one_in_0 = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (folds[i] == 0 && labels[i] == 0) ++zero_in_0;
        if (folds[i] == 0 && labels[i] == 1) ++one_in_0;
    }
    CHECK(zero_in_0 == 2);
    CHECK(one_in_0 == 3);
}

TEST_CASE("cross validation finds a perfect grid point on separable data") {
    std::vector<int> labels;
    auto diagrams = separable_diagrams(labels, 10, 444);
    CvResult result = cross_validate(diagrams, labels, KernelFamily::pssk, {0.1, 1.0, 10.0},
                                     {0.1, 1.0}, 5, 77);
    double best = 0.0;
    for (const auto& point : result.curve) best = std::max(best, point.mean_accuracy);
    CHECK(best == 1.0);
    CHECK(result.fold_accuracies.size() == 5);
    double mean = 0.0;
    for (double a : result.fold_accuracies) mean += a;
    CHECK(mean / 5.0 == 1.0);
    CHECK(result.curve.size() == 6);  // full grid reported for plotting

    // Leave-one-out is accepted.
    CvResult loo = cross_validate(diagrams, labels, KernelFamily::pssk, {1.0}, {0.5},
                                  diagrams.size(), 77);
    CHECK(loo.fold_accuracies.size() == diagrams.size());

    CHECK_THROWS_AS(cross_validate(diagrams, labels, KernelFamily::pssk, {1.0}, {0.5}, 15, 77),
                    TooFewItems);
    CHECK_THROWS_AS(
        cross_validate(diagrams, labels, KernelFamily::pssk, {1.0}, {0.5}, 50, 77),
        TooFewItems);
}

TEST_CASE("cross validation works with the landscape kernel") {
    std::vector<int> labels;
    auto diagrams = separable_diagrams(labels, 6, 555);
    CvResult result = cross_validate(diagrams, labels, KernelFamily::landscape, {1.0, 10.0}, {}, 3,
                                     11);
    CHECK(std::isnan(result.best_sigma));
    double best = 0.0;
    for (const auto& point : result.curve) best = std::max(best, point.mean_accuracy);
    CHECK(best == 1.0);
}

TEST_CASE("ties prefer smaller C then smaller sigma") {
    std::vector<int> labels;
    auto diagrams = separable_diagrams(labels, 6, 666);
    CvResult result = cross_validate(diagrams, labels, KernelFamily::pssk, {10.0, 0.5, 2.0},
                                     {2.0, 0.25}, 3, 5);
    // Separable data ties at accuracy 1 across the grid.
    CHECK(result.best_c == 0.5);
    CHECK(result.best_sigma == 0.25);
}
