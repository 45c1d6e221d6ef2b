#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pssk/diagram.hpp"
#include "pssk/scale_space.hpp"

namespace pssk {

enum class KernelFamily { pssk, landscape };

// Kernel selector for Gram construction: the scale-space kernel at a given
// sigma, or the (scale-free) landscape kernel.
struct KernelSpec {
    KernelFamily family = KernelFamily::pssk;
    double sigma = 1.0;

    double operator()(const PersistenceDiagram& f, const PersistenceDiagram& g) const;
};

// Symmetric matrix of pairwise kernel values; each unordered pair is computed
// once and mirrored, so entries(i,j) == entries(j,i) exactly.
struct GramMatrix {
    std::size_t n = 0;
    std::vector<double> entries;       // row-major, n x n
    std::vector<std::string> item_ids;

    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

GramMatrix gram_matrix(const std::vector<PersistenceDiagram>& diagrams, const KernelSpec& kernel,
                       std::size_t threads = 1);

struct DefinitenessReport {
    std::vector<double> eigenvalues;  // ascending
    std::size_t n_positive = 0;       // eigenvalues above the scaled tolerance
    std::size_t n_negative = 0;       // eigenvalues below minus the scaled tolerance
    bool psd = false;
    bool cnd = false;                 // negative definite on the sum-zero subspace
};

// Eigen-analysis of a symmetric matrix with relative tolerance `tol`: psd is
// min eigenvalue >= -tol*max(1,|max eigenvalue|); cnd is checked on the
// (n-1)-dimensional subspace {c : sum c_i = 0} via a Householder basis.
DefinitenessReport definiteness_check(const std::vector<double>& matrix, std::size_t n, double tol);
DefinitenessReport definiteness_check(const GramMatrix& m, double tol);

// Line-oriented text form: `eigenvalue <i> <value>` rows, then counts and the
// psd/cnd verdicts.
std::string definiteness_report_text(const DefinitenessReport& report);

// Counterexample search: samples sets of random diagrams (up to 6 points
// each, coordinates uniform in [0,1]^2) until the Gram matrix of pairwise
// d_{W,p} distances has at least two positive and two negative eigenvalues
// beyond 1e-6 relative tolerance and exp(-xi d) has a negative eigenvalue for
// some xi in {xi, 2 xi, 4 xi, ...} (up to 2^12 xi).
struct IndefinitenessWitness {
    std::vector<PersistenceDiagram> diagrams;
    std::vector<double> distance_matrix;      // row-major d_{W,p} Gram
    std::vector<double> distance_eigenvalues; // ascending
    DefinitenessReport report_minus_d;        // of -d_{W,p}
    DefinitenessReport report_exp;            // of exp(-xi_used * d_{W,p})
    double xi_used = 0.0;
    std::size_t trial = 0;                    // 0-based trial that produced the witness
};

IndefinitenessWitness indefiniteness_search(double p, double xi, std::size_t n_items,
                                            std::uint64_t seed, std::size_t max_trials);

// libsvm precomputed-kernel layout: line i is
//   `<label_i> 0:<i+1> 1:<G(i,1)> ... n:<G(i,n)>`
std::string export_gram(const GramMatrix& g, const std::vector<int>& labels);

// Inverse of export_gram; returns labels through the out-parameter.
GramMatrix parse_gram_export(const std::string& text, std::vector<int>& labels);

}  // namespace pssk
