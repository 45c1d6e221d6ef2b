#include "pssk/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "pssk/errors.hpp"
#include "pssk/jacobi.hpp"
#include "pssk/rng.hpp"

namespace pssk {

namespace {

constexpr double kKktTol = 1e-3;
constexpr std::size_t kMaxIterations = 100000;

// Binary SMO over items listed in `idx` (indices into the Gram), with labels
// y in {-1,+1}. Returns alpha (aligned with idx) and the bias.
struct BinarySolution {
    std::vector<double> alpha;
    double bias = 0.0;
};

BinarySolution solve_binary(const GramMatrix& gram, const std::vector<std::size_t>& idx,
                            const std::vector<double>& y, double c) {
    const std::size_t n = idx.size();
    std::vector<double> alpha(n, 0.0);
    // gradient of 1/2 a'Qa - e'a with Q_ij = y_i y_j K_ij; starts at -e.
    std::vector<double> grad(n, -1.0);

    auto kernel = [&](std::size_t i, std::size_t j) { return gram.at(idx[i], idx[j]); };

    double m_up = 0.0, m_low = 0.0;
    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
        // Maximal violating pair.
        std::size_t i_up = n, i_low = n;
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            bool in_up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
            bool in_low = (y[t] < 0 && alpha[t] < c) || (y[t] > 0 && alpha[t] > 0);
            double score = -y[t] * grad[t];
            if (in_up && score > m_up) {
                m_up = score;
                i_up = t;
            }
            if (in_low && score < m_low) {
                m_low = score;
                i_low = t;
            }
        }
        if (i_up == n || i_low == n || m_up - m_low <= kKktTol) break;
        if (iter + 1 == kMaxIterations) {
            throw NoConvergence("SMO did not reach KKT tolerance within " +
                                std::to_string(kMaxIterations) + " iterations");
        }

        std::size_t i = i_up, j = i_low;
        double quad = kernel(i, i) + kernel(j, j) - 2.0 * y[i] * y[j] * kernel(i, j);
        if (quad <= 0.0) quad = 1e-12;
        double step = (m_up - m_low) / quad;
        // Box constraints along the direction alpha_i += y_i t, alpha_j -= y_j t.
        step = std::min(step, y[i] > 0 ? c - alpha[i] : alpha[i]);
        step = std::min(step, y[j] > 0 ? alpha[j] : c - alpha[j]);
        if (step <= 0.0) break;

        alpha[i] += y[i] * step;
        alpha[j] -= y[j] * step;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += step * y[t] * (kernel(t, i) - kernel(t, j));
        }
    }

    // Bias from free support vectors, midpoint of the KKT bounds otherwise.
    double sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0 && alpha[t] < c) {
            sum += -y[t] * grad[t];
            ++free_count;
        }
    }
    BinarySolution solution;
    solution.alpha = std::move(alpha);
    solution.bias = free_count > 0 ? sum / static_cast<double>(free_count) : 0.5 * (m_up + m_low);
    return solution;
}

}  // namespace

SvmModel svm_train(const GramMatrix& gram, const std::vector<int>& labels, double c) {
    if (!(c > 0.0)) throw Error("svm_train: C must be positive");
    if (labels.size() != gram.n) throw BadMatrix("svm_train: label count mismatch");

    SvmModel model;
    {
        std::set<int> unique(labels.begin(), labels.end());
        model.class_labels.assign(unique.begin(), unique.end());
    }
    if (model.class_labels.size() < 2) {
        throw SingleClass("svm_train: need at least two classes");
    }

    // PSD check; shift-regularize degenerate inputs instead of failing.
    GramMatrix working = gram;
    {
        std::vector<double> eigs = sym_eigenvalues(gram.entries, gram.n);
        double max_eig = eigs.empty() ? 0.0 : eigs.back();
        double min_eig = eigs.empty() ? 0.0 : eigs.front();
        if (min_eig < -1e-6 * std::max(0.0, max_eig)) {
            model.shift_applied = true;
            model.shift_amount = std::abs(min_eig) + 1e-10;
            for (std::size_t i = 0; i < gram.n; ++i) {
                working.entries[i * gram.n + i] += model.shift_amount;
            }
        }
    }

    for (std::size_t a = 0; a < model.class_labels.size(); ++a) {
        for (std::size_t b = a + 1; b < model.class_labels.size(); ++b) {
            int pos = model.class_labels[a];  // smaller label -> y = +1
            int neg = model.class_labels[b];
            std::vector<std::size_t> idx;
            std::vector<double> y;
            for (std::size_t t = 0; t < labels.size(); ++t) {
                if (labels[t] == pos || labels[t] == neg) {
                    idx.push_back(t);
                    y.push_back(labels[t] == pos ? 1.0 : -1.0);
                }
            }
            BinarySolution solution = solve_binary(working, idx, y, c);

            SvmModel::Binary binary;
            binary.positive_label = pos;
            binary.negative_label = neg;
            binary.coefficients.assign(gram.n, 0.0);
            for (std::size_t t = 0; t < idx.size(); ++t) {
                if (solution.alpha[t] > 0.0) {
                    binary.coefficients[idx[t]] = solution.alpha[t] * y[t];
                    binary.support_indices.push_back(idx[t]);
                }
            }
            binary.bias = solution.bias;
            model.binaries.push_back(std::move(binary));
        }
    }
    return model;
}

int svm_predict(const SvmModel& model, const std::vector<double>& kernel_row) {
    std::map<int, int> votes;
    for (const auto& binary : model.binaries) {
        double f = binary.bias;
        for (std::size_t i : binary.support_indices) {
            f += binary.coefficients[i] * kernel_row[i];
        }
        votes[f >= 0.0 ? binary.positive_label : binary.negative_label] += 1;
    }
    int best_label = model.class_labels.front();
    int best_votes = -1;
    for (int label : model.class_labels) {  // ascending: ties go to the smallest
        auto it = votes.find(label);
        int v = it == votes.end() ? 0 : it->second;
        if (v > best_votes) {
            best_votes = v;
            best_label = label;
        }
    }
    return best_label;
}

std::vector<std::size_t> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                          std::uint64_t seed) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    Rng rng(seed, 0x666F6C64);  // fold-assignment stream
    std::vector<std::size_t> fold_of(labels.size(), 0);
    std::size_t next_fold = 0;  // continues across classes to balance fold sizes
    for (auto& [label, members] : by_class) {
        // Fisher-Yates with the counter-based generator.
        for (std::size_t i = members.size(); i > 1; --i) {
            std::size_t j = rng.next_below(i);
            std::swap(members[i - 1], members[j]);
        }
        for (std::size_t m : members) {
            fold_of[m] = next_fold;
            next_fold = (next_fold + 1) % folds;
        }
    }
    return fold_of;
}

CvResult cross_validate(const std::vector<PersistenceDiagram>& diagrams,
                        const std::vector<int>& labels, KernelFamily family,
                        const std::vector<double>& c_grid, const std::vector<double>& sigma_grid,
                        std::size_t folds, std::uint64_t seed, std::size_t threads) {
    const std::size_t n = diagrams.size();
    if (labels.size() != n) throw BadMatrix("cross_validate: label count mismatch");
    if (folds < 2) throw Error("cross_validate: folds must be >= 2");
    if (c_grid.empty()) throw Error("cross_validate: empty C grid");
    const bool scaled = family == KernelFamily::pssk;
    if (scaled && sigma_grid.empty()) throw Error("cross_validate: empty sigma grid");
    if (folds > n) throw TooFewItems("cross_validate: more folds than items");
    if (folds < n) {  // leave-one-out is accepted as degenerate stratification
        std::map<int, std::size_t> counts;
        for (int l : labels) ++counts[l];
        for (const auto& [label, count] : counts) {
            if (count < folds) {
                throw TooFewItems("cross_validate: class " + std::to_string(label) + " has " +
                                  std::to_string(count) + " items for " + std::to_string(folds) +
                                  " folds");
            }
        }
    }

    const std::vector<std::size_t> fold_of = stratified_folds(labels, folds, seed);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> sigmas = scaled ? sigma_grid : std::vector<double>{nan};

    CvResult result;
    double best_accuracy = -1.0;
    result.best_sigma = nan;

    for (double sigma : sigmas) {
        KernelSpec kernel{family, scaled ? sigma : 1.0};
        GramMatrix gram = gram_matrix(diagrams, kernel, threads);

        for (double c : c_grid) {
            std::vector<double> accuracies;
            accuracies.reserve(folds);
            for (std::size_t fold = 0; fold < folds; ++fold) {
                std::vector<std::size_t> train_idx;
                std::vector<std::size_t> test_idx;
                for (std::size_t i = 0; i < n; ++i) {
                    (fold_of[i] == fold ? test_idx : train_idx).push_back(i);
                }
                if (test_idx.empty()) {
                    accuracies.push_back(1.0);
                    continue;
                }
                // Slice the precomputed Gram for this fold.
                const std::size_t t = train_idx.size();
                GramMatrix sub{t, std::vector<double>(t * t), {}};
                for (std::size_t i = 0; i < t; ++i) {
                    sub.item_ids.push_back(std::to_string(train_idx[i]));
                    for (std::size_t j = 0; j < t; ++j) {
                        sub.entries[i * t + j] = gram.at(train_idx[i], train_idx[j]);
                    }
                }
                std::vector<int> train_labels;
                train_labels.reserve(t);
                for (std::size_t i : train_idx) train_labels.push_back(labels[i]);

                SvmModel model = svm_train(sub, train_labels, c);
                std::size_t correct = 0;
                std::vector<double> row(t);
                for (std::size_t q : test_idx) {
                    for (std::size_t j = 0; j < t; ++j) row[j] = gram.at(q, train_idx[j]);
                    if (svm_predict(model, row) == labels[q]) ++correct;
                }
                accuracies.push_back(static_cast<double>(correct) /
                                     static_cast<double>(test_idx.size()));
            }
            double mean = 0.0;
            for (double a : accuracies) mean += a;
            mean /= static_cast<double>(accuracies.size());
            result.curve.push_back({scaled ? sigma : nan, c, mean});
            // Strictly-better keeps the first grid point on ties; the grids
            // are iterated in ascending (sigma, C) order with C preferred.
            bool better = mean > best_accuracy + 1e-15;
            if (!better && std::abs(mean - best_accuracy) <= 1e-15 && best_accuracy >= 0.0) {
                better = c < result.best_c ||
                         (c == result.best_c && scaled && sigma < result.best_sigma);
            }
            if (better) {
                best_accuracy = mean;
                result.best_c = c;
                result.best_sigma = scaled ? sigma : nan;
                result.fold_accuracies = std::move(accuracies);
            }
        }
    }
    return result;
}

}  // namespace pssk
