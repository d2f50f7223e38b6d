#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "entsim/dataset.hpp"
#include "entsim/mlp.hpp"

namespace entsim {

struct MisclassifiedRecord {
    GenParams params;
    int label = 0;
    double output = 0.0;
};

struct ExperimentReport {
    std::string experiment_id;
    Task task = Task::Classify;
    std::vector<int> hidden;  // hidden layer widths
    TrainConfig cfg;
    Family train_family = Family::Psi1;
    Channel train_channel = Channel::None;
    Family eval_family = Family::Psi1;
    Channel eval_channel = Channel::None;
    double entangled_fraction = 0.0;  // of the evaluation set

    std::map<int, double> per_k_metric;  // k -> accuracy or R^2
    std::map<int, std::vector<MisclassifiedRecord>> misclassified;
    std::vector<GenParams> entangled_params;  // evaluation-set entangled instances
    std::map<int, std::vector<std::pair<double, double>>> predicted_vs_actual;
};

/// Full layer-dimension list (k, hidden..., 1) for a feature-subset run.
std::vector<int> arch_dims(int feature_count, const std::vector<int>& hidden);

/// Per-run seed for feature count k under an experiment seed.
std::uint64_t run_seed(std::uint64_t experiment_seed, int k);

/// Trains one classifier per feature count on the first k features of
/// `train`, reports held-out accuracy on `test` plus misclassification
/// records and the test set's entangled-instance parameters.
ExperimentReport run_classification_experiment(const Dataset& train, const Dataset& test,
                                               const std::vector<int>& feature_counts,
                                               const std::vector<int>& hidden,
                                               const TrainConfig& cfg);

/// Regression counterpart; records R^2 per feature count and
/// predicted-vs-actual concurrence pairs for k = 4.
ExperimentReport run_regression_experiment(const Dataset& train, const Dataset& test,
                                           const std::vector<int>& feature_counts,
                                           const std::vector<int>& hidden,
                                           const TrainConfig& cfg);

/// Trains on an 80/20 split of `model_train` (split seeded by cfg.seed) and
/// returns the accuracy over every sample of `eval`.
double run_cross_evaluation(const Dataset& model_train, const Dataset& eval, int k,
                            const std::vector<int>& hidden, const TrainConfig& cfg);

std::vector<MisclassifiedRecord> misclassified(const MlpModel& m, const Dataset& data,
                                               int feature_count, double threshold = 0.5);

enum class HistAxis { P, Theta, PByThetaBand };

struct Histogram {
    std::string label;
    double lo = 0.0, hi = 1.0;
    std::vector<long> misclassified_counts;
    std::vector<long> entangled_counts;

    /// Center of the fullest misclassified bin.
    double misclassified_mode() const;
};

/// Bins the report's misclassification records (and the evaluation set's
/// entangled instances) for feature count k. Axis P and Theta yield one
/// histogram; PByThetaBand yields four histograms over p for theta in
/// [0,pi/8), [pi/8,pi/4), [pi/4,3pi/8), [3pi/8,pi/2). Empty record sets
/// produce all-zero bins.
std::vector<Histogram> histogram_misclassified(const ExperimentReport& report, int k,
                                               HistAxis axis, int bins);

void write_histogram_csv(const std::vector<Histogram>& hists,
                         const std::filesystem::path& path);

void write_report_json(const ExperimentReport& report, const std::filesystem::path& path);
ExperimentReport read_report_json(const std::filesystem::path& path);

}  // namespace entsim
