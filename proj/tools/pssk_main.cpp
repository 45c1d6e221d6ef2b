// Command-line surface for persistence computation, the scale-space and
// landscape kernels, matching distances, and the learning/retrieval harness.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pssk/diagram.hpp"
#include "pssk/errors.hpp"
#include "pssk/filtration.hpp"
#include "pssk/gram.hpp"
#include "pssk/io.hpp"
#include "pssk/landscape.hpp"
#include "pssk/matching.hpp"
#include "pssk/persistence.hpp"
#include "pssk/retrieval.hpp"
#include "pssk/scale_space.hpp"
#include "pssk/svm.hpp"

namespace {

int g_precision = 17;

std::string real(double v) { return pssk::format_real(v, g_precision); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw pssk::Error("cannot open output file: " + path);
    out << content;
    if (!out.good()) throw pssk::Error("error writing file: " + path);
}

double parse_exponent(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw pssk::BadExponent("cannot parse exponent '" + text + "'");
    }
}

// Inserts a _dim<k> suffix before the extension.
std::string with_dim_suffix(const std::string& path, int dim) {
    auto slash = path.find_last_of('/');
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + "_dim" + std::to_string(dim);
    }
    return path.substr(0, dot) + "_dim" + std::to_string(dim) + path.substr(dot);
}

std::vector<pssk::PersistenceDiagram> diagrams_of_collection(
    const std::vector<pssk::CollectionEntry>& entries, std::vector<int>& labels) {
    std::vector<pssk::PersistenceDiagram> diagrams;
    diagrams.reserve(entries.size());
    labels.clear();
    for (const auto& entry : entries) {
        diagrams.push_back(pssk::load_diagram(entry.path));
        labels.push_back(entry.label);
    }
    return diagrams;
}

pssk::KernelSpec kernel_spec(const std::string& name, double sigma) {
    if (name == "pssk") return {pssk::KernelFamily::pssk, sigma};
    if (name == "landscape") return {pssk::KernelFamily::landscape, sigma};
    throw pssk::Error("unknown kernel '" + name + "'");
}

std::string measures_table(const pssk::RetrievalMeasures& m) {
    auto cell = [](const std::optional<double>& v) {
        return v ? real(*v) : std::string("undefined");
    };
    std::ostringstream out;
    out << "NN " << real(m.nn) << "\n";
    out << "T1 " << cell(m.t1) << "\n";
    out << "T2 " << cell(m.t2) << "\n";
    out << "EM " << cell(m.em) << "\n";
    out << "DCG " << cell(m.dcg) << "\n";
    return out.str();
}

std::string curve_csv(const pssk::CvResult& result) {
    std::ostringstream out;
    out << "sigma,c,mean_accuracy\n";
    for (const auto& point : result.curve) {
        out << (std::isnan(point.sigma) ? "-" : real(point.sigma)) << "," << real(point.c) << ","
            << real(point.mean_accuracy) << "\n";
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistence diagrams, scale-space/landscape kernels, and learning harness"};
    app.require_subcommand(1);
    app.add_option("--precision", g_precision, "significant digits for printed numbers")
        ->capture_default_str();
    std::size_t threads = 1;
    app.add_option("--threads", threads, "worker threads for Gram computation")
        ->capture_default_str();

    // diagram ----------------------------------------------------------------
    auto* diagram_cmd =
        app.add_subcommand("diagram", "compute persistence diagrams of a scalar field");
    std::string dg_input, dg_kind = "signal1d", dg_values, dg_out;
    int dg_dim = -1;
    diagram_cmd->add_option("--input", dg_input, "input file")->required();
    diagram_cmd->add_option("--kind", dg_kind, "signal1d | image | mesh")
        ->check(CLI::IsMember({"signal1d", "image", "mesh"}));
    diagram_cmd->add_option("--values", dg_values, "per-vertex values file (mesh)");
    diagram_cmd->add_option("--out", dg_out, "output diagram path")->required();
    diagram_cmd->add_option("--dim", dg_dim, "write only this homology dimension");
    diagram_cmd->callback([&]() {
        pssk::FilteredComplex complex;
        if (dg_kind == "signal1d") {
            complex = pssk::build_path_filtration(pssk::load_signal1d(dg_input));
        } else if (dg_kind == "image") {
            complex = pssk::build_cubical_filtration(pssk::load_image(dg_input));
        } else {
            if (dg_values.empty()) throw pssk::Error("mesh input needs --values");
            complex = pssk::build_lower_star_filtration(pssk::load_mesh(dg_input, dg_values));
        }
        auto diagrams = pssk::compute_persistence(complex);
        // Images and meshes report dimensions 0 and 1 even when the complex
        // happens to have no 2-cells (e.g. a single-row image).
        if (dg_kind != "signal1d" && diagrams.size() < 2) {
            diagrams.emplace_back(std::vector<pssk::DiagramPoint>{}, 1);
        }
        if (dg_dim >= 0) {
            if (static_cast<std::size_t>(dg_dim) >= diagrams.size()) {
                throw pssk::Error("dimension " + std::to_string(dg_dim) + " not computed");
            }
            pssk::save_diagram(diagrams[dg_dim], dg_out);
        } else if (diagrams.size() == 1) {
            pssk::save_diagram(diagrams[0], dg_out);
        } else {
            for (std::size_t d = 0; d < diagrams.size(); ++d) {
                pssk::save_diagram(diagrams[d], with_dim_suffix(dg_out, static_cast<int>(d)));
            }
        }
    });

    // kernel -----------------------------------------------------------------
    auto* kernel_cmd = app.add_subcommand("kernel", "pairwise kernel value of two diagrams");
    std::string kn_a, kn_b, kn_kernel = "pssk";
    double kn_sigma = 1.0;
    kernel_cmd->add_option("--a", kn_a, "first diagram")->required();
    kernel_cmd->add_option("--b", kn_b, "second diagram")->required();
    kernel_cmd->add_option("--kernel", kn_kernel, "pssk | landscape")
        ->check(CLI::IsMember({"pssk", "landscape"}));
    kernel_cmd->add_option("--sigma", kn_sigma, "scale for the pssk kernel")
        ->capture_default_str();
    kernel_cmd->callback([&]() {
        auto a = pssk::load_diagram(kn_a);
        auto b = pssk::load_diagram(kn_b);
        std::cout << real(kernel_spec(kn_kernel, kn_sigma)(a, b)) << "\n";
    });

    // distance ---------------------------------------------------------------
    auto* distance_cmd = app.add_subcommand("distance", "distance between two diagrams");
    std::string ds_a, ds_b, ds_p, ds_metric;
    double ds_sigma = 1.0;
    distance_cmd->add_option("--a", ds_a, "first diagram")->required();
    distance_cmd->add_option("--b", ds_b, "second diagram")->required();
    auto* p_opt = distance_cmd->add_option("--p", ds_p, "Wasserstein exponent (>= 1 or inf)");
    auto* metric_opt = distance_cmd->add_option("--metric", ds_metric,
                                                "kernel-induced pseudometric: pssk | landscape")
                           ->check(CLI::IsMember({"pssk", "landscape"}));
    distance_cmd->add_option("--sigma", ds_sigma, "scale for --metric pssk")
        ->capture_default_str();
    p_opt->excludes(metric_opt);
    metric_opt->excludes(p_opt);
    distance_cmd->callback([&]() {
        auto a = pssk::load_diagram(ds_a);
        auto b = pssk::load_diagram(ds_b);
        double value;
        if (!ds_p.empty()) {
            value = pssk::wasserstein_distance(a, b, parse_exponent(ds_p));
        } else if (ds_metric == "pssk") {
            value = pssk::pssk_distance(a, b, {ds_sigma});
        } else if (ds_metric == "landscape") {
            value = pssk::landscape_distance(a, b);
        } else {
            throw CLI::ValidationError("distance", "need either --p or --metric");
        }
        std::cout << real(value) << "\n";
    });

    // gram -------------------------------------------------------------------
    auto* gram_cmd = app.add_subcommand("gram", "Gram matrix of a diagram collection");
    std::string gm_list, gm_kernel = "pssk", gm_out, gm_export;
    double gm_sigma = 1.0;
    gram_cmd->add_option("--list", gm_list, "collection manifest: `<label> <path>` per line")
        ->required();
    gram_cmd->add_option("--kernel", gm_kernel, "pssk | landscape")
        ->check(CLI::IsMember({"pssk", "landscape"}));
    gram_cmd->add_option("--sigma", gm_sigma, "scale for the pssk kernel")->capture_default_str();
    gram_cmd->add_option("--out", gm_out, "Gram CSV output path");
    gram_cmd->add_option("--export", gm_export, "precomputed-kernel export path");
    gram_cmd->callback([&]() {
        std::vector<int> labels;
        auto diagrams = diagrams_of_collection(pssk::load_collection(gm_list), labels);
        pssk::GramMatrix gram =
            pssk::gram_matrix(diagrams, kernel_spec(gm_kernel, gm_sigma), threads);
        if (gm_out.empty() && gm_export.empty()) {
            throw CLI::ValidationError("gram", "need --out and/or --export");
        }
        if (!gm_out.empty()) {
            std::ostringstream out;
            pssk::write_matrix_csv(gram.item_ids, gram.entries, out, g_precision);
            write_text_file(gm_out, out.str());
        }
        if (!gm_export.empty()) {
            write_text_file(gm_export, pssk::export_gram(gram, labels));
        }
    });

    // landscape --------------------------------------------------------------
    auto* landscape_cmd = app.add_subcommand("landscape", "landscape layers of a diagram");
    std::string ls_input, ls_out;
    landscape_cmd->add_option("--input", ls_input, "diagram file")->required();
    landscape_cmd->add_option("--out", ls_out, "layer CSV output path")->required();
    landscape_cmd->callback([&]() {
        pssk::Landscape l = pssk::build_landscape(pssk::load_diagram(ls_input));
        write_text_file(ls_out, pssk::landscape_to_csv(l));
    });

    // feature-map ------------------------------------------------------------
    auto* raster_cmd = app.add_subcommand("feature-map", "rasterized feature map of a diagram");
    std::string fm_input, fm_out, fm_format = "pgm";
    double fm_sigma = 1.0, fm_xmin = 0.0, fm_xmax = 1.0, fm_ymin = 0.0, fm_ymax = 1.0;
    std::size_t fm_nx = 64, fm_ny = 64;
    raster_cmd->add_option("--input", fm_input, "diagram file")->required();
    raster_cmd->add_option("--sigma", fm_sigma, "diffusion scale")->required();
    raster_cmd->add_option("--xmin", fm_xmin, "")->capture_default_str();
    raster_cmd->add_option("--xmax", fm_xmax, "")->capture_default_str();
    raster_cmd->add_option("--ymin", fm_ymin, "")->capture_default_str();
    raster_cmd->add_option("--ymax", fm_ymax, "")->capture_default_str();
    raster_cmd->add_option("--nx", fm_nx, "grid columns")->capture_default_str();
    raster_cmd->add_option("--ny", fm_ny, "grid rows; row 0 of the output is ymax")
        ->capture_default_str();
    raster_cmd->add_option("--format", fm_format, "pgm (min-max scaled) or csv (raw values)")
        ->check(CLI::IsMember({"pgm", "csv"}));
    raster_cmd->add_option("--out", fm_out, "output path")->required();
    raster_cmd->callback([&]() {
        pssk::GrayscaleImage img =
            pssk::feature_map_raster(pssk::load_diagram(fm_input), {fm_sigma}, fm_xmin, fm_xmax,
                                     fm_ymin, fm_ymax, fm_nx, fm_ny);
        std::ostringstream out;
        if (fm_format == "pgm") {
            pssk::write_pgm(img, out);
        } else {
            pssk::write_csv_image(img, out);
        }
        write_text_file(fm_out, out.str());
    });

    // definiteness -----------------------------------------------------------
    auto* def_cmd = app.add_subcommand("definiteness", "eigen-analysis of a Gram or distance matrix");
    std::string df_matrix, df_p = "1", df_prefix;
    double df_tol = 1e-8, df_xi = 1.0;
    bool df_search = false;
    std::size_t df_items = 6, df_trials = 1000;
    std::uint64_t df_seed = 1;
    def_cmd->add_option("--matrix", df_matrix, "square matrix CSV with a header row of ids");
    def_cmd->add_option("--tol", df_tol, "relative eigenvalue tolerance")->capture_default_str();
    def_cmd->add_flag("--search", df_search, "search for a Wasserstein indefiniteness witness");
    def_cmd->add_option("--p", df_p, "Wasserstein exponent for --search")->capture_default_str();
    def_cmd->add_option("--xi", df_xi, "base exponential-kernel bandwidth for --search")
        ->capture_default_str();
    def_cmd->add_option("--items", df_items, "diagrams per trial")->capture_default_str();
    def_cmd->add_option("--seed", df_seed, "search seed")->capture_default_str();
    def_cmd->add_option("--max-trials", df_trials, "trial budget")->capture_default_str();
    def_cmd->add_option("--out-prefix", df_prefix, "write witness diagrams to <prefix><i>.dgm");
    def_cmd->callback([&]() {
        if (df_search) {
            pssk::IndefinitenessWitness witness = pssk::indefiniteness_search(
                parse_exponent(df_p), df_xi, df_items, df_seed, df_trials);
            std::cout << "trial " << witness.trial << "\n";
            std::cout << "xi " << real(witness.xi_used) << "\n";
            for (std::size_t i = 0; i < witness.distance_eigenvalues.size(); ++i) {
                std::cout << "distance_eigenvalue " << i << " "
                          << real(witness.distance_eigenvalues[i]) << "\n";
            }
            std::cout << "[-d gram]\n" << pssk::definiteness_report_text(witness.report_minus_d);
            std::cout << "[exp(-xi d) gram]\n" << pssk::definiteness_report_text(witness.report_exp);
            if (!df_prefix.empty()) {
                for (std::size_t i = 0; i < witness.diagrams.size(); ++i) {
                    pssk::save_diagram(witness.diagrams[i], df_prefix + std::to_string(i) + ".dgm");
                }
            }
        } else {
            if (df_matrix.empty()) {
                throw CLI::ValidationError("definiteness", "need --matrix or --search");
            }
            pssk::LabeledMatrix m = pssk::load_matrix_csv(df_matrix);
            std::cout << pssk::definiteness_report_text(
                pssk::definiteness_check(m.entries, m.ids.size(), df_tol));
        }
    });

    // classify ---------------------------------------------------------------
    auto* classify_cmd =
        app.add_subcommand("classify", "cross-validated SVM on a labeled diagram collection");
    std::string cl_list, cl_eval, cl_kernel = "pssk", cl_curve;
    std::vector<double> cl_cgrid{1.0}, cl_sgrid{1.0};
    std::size_t cl_folds = 10;
    std::uint64_t cl_seed = 1;
    classify_cmd->add_option("--list", cl_list, "training manifest")->required();
    classify_cmd->add_option("--eval", cl_eval, "held-out manifest to predict");
    classify_cmd->add_option("--kernel", cl_kernel, "pssk | landscape")
        ->check(CLI::IsMember({"pssk", "landscape"}));
    classify_cmd->add_option("--c-grid", cl_cgrid, "soft-margin C grid")
        ->delimiter(',')
        ->capture_default_str();
    classify_cmd->add_option("--sigma-grid", cl_sgrid, "scale grid (pssk only)")
        ->delimiter(',')
        ->capture_default_str();
    classify_cmd->add_option("--folds", cl_folds, "cross-validation folds")->capture_default_str();
    classify_cmd->add_option("--seed", cl_seed, "fold-assignment seed")->capture_default_str();
    classify_cmd->add_option("--curve", cl_curve, "write the (sigma, C) accuracy curve CSV here");
    classify_cmd->callback([&]() {
        std::vector<int> labels;
        auto diagrams = diagrams_of_collection(pssk::load_collection(cl_list), labels);
        pssk::KernelFamily family =
            cl_kernel == "pssk" ? pssk::KernelFamily::pssk : pssk::KernelFamily::landscape;
        pssk::CvResult result = pssk::cross_validate(diagrams, labels, family, cl_cgrid, cl_sgrid,
                                                     cl_folds, cl_seed, threads);
        std::cout << "best_c " << real(result.best_c) << "\n";
        std::cout << "best_sigma "
                  << (std::isnan(result.best_sigma) ? "-" : real(result.best_sigma)) << "\n";
        double mean = 0.0;
        for (std::size_t f = 0; f < result.fold_accuracies.size(); ++f) {
            std::cout << "fold " << f << " " << real(result.fold_accuracies[f]) << "\n";
            mean += result.fold_accuracies[f];
        }
        mean /= static_cast<double>(result.fold_accuracies.size());
        std::cout << "mean_accuracy " << real(mean) << "\n";
        if (!cl_curve.empty()) write_text_file(cl_curve, curve_csv(result));

        if (!cl_eval.empty()) {
            std::vector<int> eval_labels;
            auto eval_diagrams =
                diagrams_of_collection(pssk::load_collection(cl_eval), eval_labels);
            double sigma = std::isnan(result.best_sigma) ? 1.0 : result.best_sigma;
            pssk::KernelSpec spec{family, sigma};
            pssk::GramMatrix gram = pssk::gram_matrix(diagrams, spec, threads);
            pssk::SvmModel model = pssk::svm_train(gram, labels, result.best_c);
            if (model.shift_applied) {
                std::cerr << "warning: Gram regularized by +" << real(model.shift_amount)
                          << " on the diagonal\n";
            }
            std::size_t correct = 0;
            for (std::size_t q = 0; q < eval_diagrams.size(); ++q) {
                std::vector<double> row(diagrams.size());
                for (std::size_t j = 0; j < diagrams.size(); ++j) {
                    row[j] = spec(eval_diagrams[q], diagrams[j]);
                }
                int predicted = pssk::svm_predict(model, row);
                if (predicted == eval_labels[q]) ++correct;
                std::cout << "predict " << q << " " << predicted << "\n";
            }
            std::cout << "eval_accuracy "
                      << real(static_cast<double>(correct) /
                              static_cast<double>(std::max<std::size_t>(1, eval_diagrams.size())))
                      << "\n";
        }
    });

    // retrieval ----------------------------------------------------------
    auto* retrieval_cmd =
        app.add_subcommand("retrieval", "retrieval measures of a distance matrix");
    std::string rt_matrix, rt_labels;
    retrieval_cmd->add_option("--matrix", rt_matrix, "distance matrix CSV")->required();
    retrieval_cmd->add_option("--labels", rt_labels, "one integer label per line")->required();
    retrieval_cmd->callback([&]() {
        pssk::LabeledMatrix m = pssk::load_matrix_csv(rt_matrix);
        std::vector<int> labels = pssk::load_labels(rt_labels);
        std::cout << measures_table(pssk::retrieval_eval(m.entries, m.ids.size(), labels));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
