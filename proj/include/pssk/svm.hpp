#pragma once

#include <cstdint>
#include <vector>

#include "pssk/gram.hpp"

namespace pssk {

// Soft-margin C-SVM with a precomputed kernel, trained by SMO on the
// maximal-KKT-violation working pair. Multiclass is one-vs-one with majority
// vote, ties broken by the smallest class label.
struct SvmModel {
    struct Binary {
        int positive_label = 0;  // smaller label of the pair, mapped to y=+1
        int negative_label = 0;
        std::vector<double> coefficients;     // alpha_i * y_i per training item
        std::vector<std::size_t> support_indices;
        double bias = 0.0;
    };

    std::vector<int> class_labels;  // sorted unique training labels
    std::vector<Binary> binaries;   // one per unordered label pair
    bool shift_applied = false;     // Gram was regularized before training
    double shift_amount = 0.0;
};

SvmModel svm_train(const GramMatrix& gram, const std::vector<int>& labels, double c);

// Predicts from one row of kernel values against the training items.
int svm_predict(const SvmModel& model, const std::vector<double>& kernel_row);

struct CvResult {
    double best_c = 0.0;
    double best_sigma = 0.0;  // NaN for the landscape kernel
    std::vector<double> fold_accuracies;  // for the best parameter combination

    struct CurvePoint {
        double sigma;  // NaN for the landscape kernel
        double c;
        double mean_accuracy;
    };
    std::vector<CurvePoint> curve;
};

// Stratified k-fold cross-validation over the (C, sigma) grid; the Gram
// matrix is computed once per sigma and sliced per fold. Deterministic under
// `seed`; ties prefer smaller C, then smaller sigma.
CvResult cross_validate(const std::vector<PersistenceDiagram>& diagrams,
                        const std::vector<int>& labels, KernelFamily family,
                        const std::vector<double>& c_grid, const std::vector<double>& sigma_grid,
                        std::size_t folds, std::uint64_t seed, std::size_t threads = 1);

// Fold assignment used by cross_validate: classes are shuffled independently
// and dealt round-robin, so folds are stratified and seed-deterministic.
std::vector<std::size_t> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                          std::uint64_t seed);

}  // namespace pssk
