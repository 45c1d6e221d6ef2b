#include "pssk/gram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "pssk/errors.hpp"
#include "pssk/io.hpp"
#include "pssk/jacobi.hpp"
#include "pssk/landscape.hpp"
#include "pssk/matching.hpp"
#include "pssk/rng.hpp"

namespace pssk {

double KernelSpec::operator()(const PersistenceDiagram& f, const PersistenceDiagram& g) const {
    if (family == KernelFamily::pssk) return pssk_eval(f, g, {sigma});
    return landscape_kernel(f, g);
}

GramMatrix gram_matrix(const std::vector<PersistenceDiagram>& diagrams, const KernelSpec& kernel,
                       std::size_t threads) {
    if (kernel.family == KernelFamily::pssk && !(kernel.sigma > 0.0)) {
        throw NonPositiveScale("gram_matrix: sigma must be positive");
    }
    const std::size_t n = diagrams.size();
    GramMatrix g{n, std::vector<double>(n * n, 0.0), {}};
    g.item_ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) g.item_ids.push_back(std::to_string(i));

    // Flattened upper triangle including the diagonal; every entry is
    // independent, so any partition computes identical values.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            auto [i, j] = pairs[k];
            double value = kernel(diagrams[i], diagrams[j]);
            g.entries[i * n + j] = value;
            g.entries[j * n + i] = value;
        }
    };

    threads = std::max<std::size_t>(1, threads);
    if (threads == 1 || pairs.size() < 2 * threads) {
        work(0, pairs.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (pairs.size() + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            std::size_t begin = t * chunk;
            std::size_t end = std::min(pairs.size(), begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return g;
}

namespace {

std::size_t count_above(const std::vector<double>& eigs, double threshold) {
    std::size_t count = 0;
    for (double e : eigs) {
        if (e > threshold) ++count;
    }
    return count;
}

}  // namespace

DefinitenessReport definiteness_check(const std::vector<double>& matrix, std::size_t n, double tol) {
    if (!(tol > 0.0)) throw Error("definiteness_check: tol must be positive");
    DefinitenessReport report;
    report.eigenvalues = sym_eigenvalues(matrix, n);
    if (n == 0) {
        report.psd = report.cnd = true;
        return report;
    }
    double max_abs = 0.0;
    for (double e : report.eigenvalues) max_abs = std::max(max_abs, std::abs(e));
    const double threshold = tol * std::max(1.0, max_abs);
    report.n_positive = count_above(report.eigenvalues, threshold);
    for (double e : report.eigenvalues) {
        if (e < -threshold) ++report.n_negative;
    }
    report.psd = report.eigenvalues.front() >= -threshold;

    if (n == 1) {
        report.cnd = true;  // sum-zero subspace is trivial
        return report;
    }
    // Householder reflector mapping e_1 to the normalized all-ones vector;
    // its columns 2..n span {c : sum c_i = 0} orthonormally.
    std::vector<double> u(n, 1.0 / std::sqrt(static_cast<double>(n)));
    u[0] -= 1.0;
    double unorm = 0.0;
    for (double v : u) unorm += v * v;
    unorm = std::sqrt(unorm);
    for (double& v : u) v /= unorm;
    // B(i, a) = H(i, a+1) = delta - 2 u_i u_{a+1}
    auto basis = [&u](std::size_t i, std::size_t a) {
        double h = -2.0 * u[i] * u[a + 1];
        if (i == a + 1) h += 1.0;
        return h;
    };
    const std::size_t m = n - 1;
    std::vector<double> projected(m * m, 0.0);
    std::vector<double> mb(n, 0.0);
    for (std::size_t b = 0; b < m; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += matrix[i * n + j] * basis(j, b);
            mb[i] = s;
        }
        for (std::size_t a = 0; a < m; ++a) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += basis(i, a) * mb[i];
            projected[a * m + b] = s;
        }
    }
    // Symmetrize roundoff before the eigen solve.
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            double v = 0.5 * (projected[a * m + b] + projected[b * m + a]);
            projected[a * m + b] = projected[b * m + a] = v;
        }
    }
    std::vector<double> proj_eigs = sym_eigenvalues(projected, m);
    double proj_max_abs = 0.0;
    for (double e : proj_eigs) proj_max_abs = std::max(proj_max_abs, std::abs(e));
    report.cnd = proj_eigs.back() <= tol * std::max(1.0, proj_max_abs);
    return report;
}

DefinitenessReport definiteness_check(const GramMatrix& m, double tol) {
    return definiteness_check(m.entries, m.n, tol);
}

std::string definiteness_report_text(const DefinitenessReport& report) {
    std::ostringstream out;
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
        out << "eigenvalue " << i << " " << format_real(report.eigenvalues[i]) << "\n";
    }
    out << "n_positive " << report.n_positive << "\n";
    out << "n_negative " << report.n_negative << "\n";
    out << "psd " << (report.psd ? "true" : "false") << "\n";
    out << "cnd " << (report.cnd ? "true" : "false") << "\n";
    return out.str();
}

namespace {

PersistenceDiagram sample_diagram(Rng& rng, std::size_t max_points) {
    std::size_t count = 1 + rng.next_below(max_points);
    std::vector<DiagramPoint> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double a = rng.next_double();
        double b = rng.next_double();
        points.push_back({std::min(a, b), std::max(a, b)});
    }
    return PersistenceDiagram(std::move(points));
}

}  // namespace

IndefinitenessWitness indefiniteness_search(double p, double xi, std::size_t n_items,
                                            std::uint64_t seed, std::size_t max_trials) {
    if (!(xi > 0.0)) throw Error("indefiniteness_search: xi must be positive");
    if (n_items < 4) throw TooFewItems("indefiniteness_search: need at least 4 items");
    constexpr double kTol = 1e-6;

    Rng rng(seed);
    for (std::size_t trial = 0; trial < max_trials; ++trial) {
        Rng trial_rng = rng.split(trial);
        std::vector<PersistenceDiagram> diagrams;
        diagrams.reserve(n_items);
        for (std::size_t i = 0; i < n_items; ++i) diagrams.push_back(sample_diagram(trial_rng, 6));

        std::vector<double> dist(n_items * n_items, 0.0);
        for (std::size_t i = 0; i < n_items; ++i) {
            for (std::size_t j = i + 1; j < n_items; ++j) {
                double d = wasserstein_distance(diagrams[i], diagrams[j], p);
                dist[i * n_items + j] = d;
                dist[j * n_items + i] = d;
            }
        }

        std::vector<double> eigs = sym_eigenvalues(dist, n_items);
        double max_abs = 0.0;
        for (double e : eigs) max_abs = std::max(max_abs, std::abs(e));
        const double threshold = kTol * max_abs;
        std::size_t n_pos = 0, n_neg = 0;
        for (double e : eigs) {
            if (e > threshold) ++n_pos;
            if (e < -threshold) ++n_neg;
        }
        if (n_pos < 2 || n_neg < 2) continue;

        // A non-c.n.d. distance Gram certifies that exp(-xi d) fails positive
        // definiteness for some xi; scan a descending geometric ladder for a
        // concrete one (small xi approaches J - xi d, which exposes it).
        for (int k = 0; k <= 12; ++k) {
            double xi_used = xi / static_cast<double>(1 << k);
            std::vector<double> expgram(n_items * n_items);
            for (std::size_t idx = 0; idx < dist.size(); ++idx) {
                expgram[idx] = std::exp(-xi_used * dist[idx]);
            }
            std::vector<double> exp_eigs = sym_eigenvalues(expgram, n_items);
            double exp_max = 0.0;
            for (double e : exp_eigs) exp_max = std::max(exp_max, std::abs(e));
            if (exp_eigs.front() < -kTol * exp_max) {
                IndefinitenessWitness witness;
                witness.diagrams = std::move(diagrams);
                witness.distance_matrix = dist;
                witness.distance_eigenvalues = std::move(eigs);
                std::vector<double> minus_d(dist.size());
                for (std::size_t idx = 0; idx < dist.size(); ++idx) minus_d[idx] = -dist[idx];
                witness.report_minus_d = definiteness_check(minus_d, n_items, kTol);
                witness.report_exp = definiteness_check(expgram, n_items, kTol);
                witness.xi_used = xi_used;
                witness.trial = trial;
                return witness;
            }
        }
    }
    throw SearchExhausted("indefiniteness_search: no witness within " + std::to_string(max_trials) +
                          " trials");
}

std::string export_gram(const GramMatrix& g, const std::vector<int>& labels) {
    if (labels.size() != g.n) throw BadMatrix("export_gram: label count mismatch");
    std::ostringstream out;
    for (std::size_t i = 0; i < g.n; ++i) {
        out << labels[i] << " 0:" << (i + 1);
        for (std::size_t j = 0; j < g.n; ++j) {
            out << " " << (j + 1) << ":" << format_real(g.at(i, j));
        }
        out << "\n";
    }
    return out.str();
}

GramMatrix parse_gram_export(const std::string& text, std::vector<int>& labels) {
    labels.clear();
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        int label;
        if (!(fields >> label)) throw MalformedLine("precomputed-kernel line without label");
        labels.push_back(label);
        std::vector<double> row;
        std::string item;
        while (fields >> item) {
            auto colon = item.find(':');
            if (colon == std::string::npos) throw MalformedLine("expected index:value, got " + item);
            std::size_t index = std::stoul(item.substr(0, colon));
            double value = std::stod(item.substr(colon + 1));
            if (index == 0) continue;  // query id slot
            if (index != row.size() + 1) throw MalformedLine("non-contiguous kernel indices");
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    GramMatrix g;
    g.n = rows.size();
    g.entries.reserve(g.n * g.n);
    for (const auto& row : rows) {
        if (row.size() != g.n) throw MalformedLine("precomputed-kernel row length mismatch");
        g.entries.insert(g.entries.end(), row.begin(), row.end());
    }
    for (std::size_t i = 0; i < g.n; ++i) g.item_ids.push_back(std::to_string(i));
    return g;
}

}  // namespace pssk
