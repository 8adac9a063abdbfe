#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csst/datagen.hpp"
#include "csst/errors.hpp"
#include "csst/index.hpp"
#include "csst/io.hpp"
#include "csst/som.hpp"
#include "csst/umatrix.hpp"

namespace {

namespace fs = std::filesystem;

struct GenPeaksArgs {
    int n = 49;
    std::string out;
};

struct GenGaussArgs {
    int n = 500;
    double sep = 10.0;
    double bridge = 0.0;
    std::int64_t seed = 1;
    std::string out;
};

struct TrainArgs {
    std::string data;
    std::string out_dir;
    int rows = 30;
    int cols = 30;
    int rough_epochs = 20;
    int fine_epochs = 30;
    double sigma_start = 0.0; // 0 = max(rows, cols) / 4
    double sigma_end = 0.5;
};

struct AnalyzeArgs {
    std::string data;
    std::string codebook;
    std::string out_dir;
    int k = 10;
    std::int64_t min_support = 10;
    int m = 16;
    std::vector<int> regions;
};

void write_manifest(const fs::path& path, const nlohmann::json& doc) {
    csst::atomic_write_text(path, doc.dump(2) + "\n");
}

void run_gen_peaks(const GenPeaksArgs& args) {
    const csst::Dataset dataset = csst::gen_peaks(args.n);
    csst::write_dataset_csv(dataset, args.out);
    nlohmann::json manifest;
    manifest["command"] = "gen peaks";
    manifest["n"] = args.n;
    manifest["out"] = args.out;
    write_manifest(args.out + ".manifest.json", manifest);
}

void run_gen_gauss(const GenGaussArgs& args) {
    const csst::Dataset dataset = csst::gen_gaussian_pair(
        args.n, args.sep, args.bridge, static_cast<std::uint64_t>(args.seed));
    csst::write_dataset_csv(dataset, args.out);
    nlohmann::json manifest;
    manifest["command"] = "gen gauss";
    manifest["n"] = args.n;
    manifest["sep"] = args.sep;
    manifest["bridge"] = args.bridge;
    manifest["seed"] = args.seed;
    manifest["out"] = args.out;
    write_manifest(args.out + ".manifest.json", manifest);
}

void run_train(const TrainArgs& args) {
    const csst::Dataset dataset = csst::read_dataset_csv(args.data);

    csst::TrainSchedule schedule = csst::default_schedule(args.rows, args.cols);
    schedule.rough_epochs = args.rough_epochs;
    schedule.fine_epochs = args.fine_epochs;
    if (args.sigma_start > 0.0) schedule.sigma_start = args.sigma_start;
    schedule.sigma_end = args.sigma_end;

    const csst::Codebook initial = csst::init_codebook_linear(dataset, args.rows, args.cols);
    const double qe_before = csst::quantization_error(initial, dataset);
    const csst::Codebook trained = csst::train_batch(initial, dataset, schedule);
    const double qe_after = csst::quantization_error(trained, dataset);
    const csst::UMatrix umatrix = csst::compute_umatrix(trained);

    const fs::path out_dir(args.out_dir);
    fs::create_directories(out_dir);
    csst::write_codebook_json(trained, out_dir / "codebook.json");
    csst::write_values_csv(umatrix, out_dir / "umatrix.csv");
    csst::write_pgm_heatmap(umatrix, out_dir / "umatrix.pgm", false);

    nlohmann::json manifest;
    manifest["command"] = "train";
    manifest["data"] = args.data;
    manifest["rows"] = args.rows;
    manifest["cols"] = args.cols;
    manifest["rough_epochs"] = schedule.rough_epochs;
    manifest["fine_epochs"] = schedule.fine_epochs;
    manifest["sigma_start"] = schedule.sigma_start;
    manifest["sigma_end"] = schedule.sigma_end;
    manifest["out_dir"] = args.out_dir;
    manifest["quantization_error_before"] = qe_before;
    manifest["quantization_error_after"] = qe_after;
    write_manifest(out_dir / "train_manifest.json", manifest);
}

void run_analyze(const AnalyzeArgs& args) {
    const csst::Dataset dataset = csst::read_dataset_csv(args.data);
    const csst::Codebook codebook = csst::read_codebook_json(args.codebook);
    const csst::Assignment assignment = csst::assign_all(codebook, dataset);

    const std::vector<int> regions =
        args.regions.empty() ? csst::select_regions(assignment, args.m) : args.regions;

    const csst::LabeledMatrix euclid = csst::euclidean_matrix(codebook, regions);
    const csst::LabeledMatrix index =
        csst::csst_matrix(dataset, assignment, codebook, regions, args.k, args.min_support);

    const fs::path out_dir(args.out_dir);
    fs::create_directories(out_dir);
    csst::write_matrix_csv(euclid, out_dir / "euclid.csv");
    csst::write_matrix_csv(index, out_dir / "csst.csv");

    // Heatmaps render absent pairs as 0.
    const auto to_dense = [](const csst::LabeledMatrix& m) {
        csst::Matrix dense(m.size(), m.size());
        for (std::size_t a = 0; a < m.size(); ++a) {
            for (std::size_t b = 0; b < m.size(); ++b) {
                dense(a, b) = m.at(a, b).value_or(0.0);
            }
        }
        return dense;
    };
    csst::write_pgm_heatmap(to_dense(euclid), out_dir / "euclid.pgm", false);
    csst::write_pgm_heatmap(to_dense(index), out_dir / "csst.pgm", false);

    nlohmann::json manifest;
    manifest["command"] = "analyze";
    manifest["data"] = args.data;
    manifest["codebook"] = args.codebook;
    manifest["k"] = args.k;
    manifest["min_support"] = args.min_support;
    manifest["m"] = args.m;
    manifest["regions"] = regions;
    manifest["out_dir"] = args.out_dir;
    write_manifest(out_dir / "analyze_manifest.json", manifest);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSST index pipeline: synthetic data, SOM training, U-matrix and "
                 "region-connectivity matrices"};
    app.require_subcommand(1);

    GenPeaksArgs peaks_args;
    GenGaussArgs gauss_args;
    TrainArgs train_args;
    AnalyzeArgs analyze_args;
    std::string regions_csv;

    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
    gen->require_subcommand(1);

    auto* peaks = gen->add_subcommand("peaks", "Peaks benchmark surface on a square grid");
    peaks->add_option("--n", peaks_args.n, "Grid points per axis")->capture_default_str();
    peaks->add_option("--out", peaks_args.out, "Output CSV path")->required();

    auto* gauss = gen->add_subcommand("gauss", "Two Gaussian clusters with an optional bridge");
    gauss->add_option("--n", gauss_args.n, "Points per cluster")->capture_default_str();
    gauss->add_option("--sep", gauss_args.sep, "Center separation")->capture_default_str();
    gauss->add_option("--bridge", gauss_args.bridge, "Fraction of points moved onto the bridge")
        ->capture_default_str();
    gauss->add_option("--seed", gauss_args.seed, "RNG seed")->capture_default_str();
    gauss->add_option("--out", gauss_args.out, "Output CSV path")->required();

    auto* train = app.add_subcommand("train", "Train a SOM and export codebook + U-matrix");
    train->add_option("--data", train_args.data, "Input dataset CSV")->required();
    train->add_option("--rows", train_args.rows, "Grid rows")->capture_default_str();
    train->add_option("--cols", train_args.cols, "Grid cols")->capture_default_str();
    train->add_option("--rough-epochs", train_args.rough_epochs, "Rough phase epochs")
        ->capture_default_str();
    train->add_option("--fine-epochs", train_args.fine_epochs, "Fine phase epochs")
        ->capture_default_str();
    train->add_option("--sigma-start", train_args.sigma_start,
                      "Initial neighborhood radius (0 = max(rows,cols)/4)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    train->add_option("--sigma-end", train_args.sigma_end, "Final neighborhood radius")
        ->capture_default_str();
    train->add_option("--out-dir", train_args.out_dir, "Output directory")->required();

    auto* analyze =
        app.add_subcommand("analyze", "Euclidean and CSST index matrices over selected regions");
    analyze->add_option("--data", analyze_args.data, "Input dataset CSV")->required();
    analyze->add_option("--codebook", analyze_args.codebook, "Trained codebook JSON")->required();
    analyze->add_option("--k", analyze_args.k, "Sub-regions per pair axis")->capture_default_str();
    analyze->add_option("--min-support", analyze_args.min_support,
                        "Minimum projected vectors per pair")
        ->capture_default_str();
    analyze->add_option("--m", analyze_args.m, "Number of auto-selected regions")
        ->capture_default_str();
    analyze->add_option("--regions", regions_csv,
                        "Comma-separated neuron indices overriding auto-selection");
    analyze->add_option("--out-dir", analyze_args.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!regions_csv.empty()) {
        std::size_t start = 0;
        while (start <= regions_csv.size()) {
            const std::size_t pos = std::min(regions_csv.find(',', start), regions_csv.size());
            try {
                analyze_args.regions.push_back(std::stoi(regions_csv.substr(start, pos - start)));
            } catch (const std::exception&) {
                std::cerr << "error: --regions expects comma-separated integers\n";
                return 2;
            }
            start = pos + 1;
        }
        for (std::size_t a = 0; a < analyze_args.regions.size(); ++a) {
            for (std::size_t b = a + 1; b < analyze_args.regions.size(); ++b) {
                if (analyze_args.regions[a] == analyze_args.regions[b]) {
                    std::cerr << "error: --regions contains duplicate index "
                              << analyze_args.regions[a] << "\n";
                    return 2;
                }
            }
        }
    }

    try {
        if (peaks->parsed()) {
            run_gen_peaks(peaks_args);
        } else if (gauss->parsed()) {
            run_gen_gauss(gauss_args);
        } else if (train->parsed()) {
            run_train(train_args);
        } else if (analyze->parsed()) {
            run_analyze(analyze_args);
        }
    } catch (const csst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
