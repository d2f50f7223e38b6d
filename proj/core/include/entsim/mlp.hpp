#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace entsim {

enum class Activation { ReLU, Sigmoid, Identity };
enum class Loss { BinaryCrossEntropy, MeanSquaredError };
enum class Task { Classify, Regress };

struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w;  // out x in, row-major
    std::vector<double> b;  // out
    Activation act = Activation::ReLU;
};

/// Dense feed-forward network. Classification models end in Sigmoid with
/// binary cross-entropy; regression models end in Identity with MSE.
struct MlpModel {
    std::vector<Layer> layers;
    Loss loss = Loss::BinaryCrossEntropy;
    int input_dim = 0;

    int parameter_count() const;
};

struct TrainConfig {
    int batch_size = 32;
    int epochs = 200;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
    bool shuffle = true;
};

struct MetricReport {
    std::optional<double> accuracy;  // filled by classification evaluation
    std::optional<double> r2;        // filled by regression evaluation
    std::vector<double> loss_curve;  // mean per-sample training loss per epoch
};

/// Flat row-major feature matrix with one target per row.
struct TrainingSet {
    std::vector<double> x;
    std::vector<double> y;
    int n = 0;
    int dim = 0;

    std::span<const double> row(int i) const {
        return {x.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
};

/// Per-layer gradient buffers matching a model's shape.
struct Gradients {
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> b;
};

/// Glorot-uniform weights (uniform in +-sqrt(6/(fan_in+fan_out))), zero
/// biases, deterministic per seed. layer_dims runs input..output and must
/// end in 1.
MlpModel init_model(const std::vector<int>& layer_dims, Task task, std::uint64_t seed);

double forward(const MlpModel& m, std::span<const double> x);

std::vector<double> predict(const MlpModel& m, const TrainingSet& data);

/// Loss of a single sample at the current weights.
double sample_loss(const MlpModel& m, std::span<const double> x, double y);

/// Analytic backprop gradients of the single-sample loss.
Gradients compute_gradients(const MlpModel& m, std::span<const double> x, double y);

/// Mini-batch SGD with per-batch mean gradients and a seeded epoch shuffle.
/// Mutates the model in place; throws std::runtime_error on divergence
/// (non-finite loss), reporting the epoch and learning rate.
MetricReport train(MlpModel& m, const TrainingSet& data, const TrainConfig& cfg);

/// Fraction of samples whose thresholded output matches the 0/1 target.
double accuracy(const MlpModel& m, const TrainingSet& data, double threshold = 0.5);

/// 1 - SS_res/SS_tot; throws std::invalid_argument when truth has zero
/// variance or the lengths differ.
double r_squared(std::span<const double> pred, std::span<const double> truth);

/// Binary model format, 8-byte magic "ENTSMLP1", little-endian fields.
void save_model(const MlpModel& m, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace entsim
