#include "entsim/mlp.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "entsim/rng.hpp"

namespace entsim {

namespace {

// Fixed-association 4-way unrolled dot product; deterministic and fast.
double dot(const double* a, const double* b, int n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    double s = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double activate(double z, Activation act) {
    switch (act) {
        case Activation::ReLU: return z > 0.0 ? z : 0.0;
        case Activation::Sigmoid: return sigmoid(z);
        case Activation::Identity: return z;
    }
    return z;
}

// Derivative expressed through the activation value a = act(z).
double activation_deriv(double a, Activation act) {
    switch (act) {
        case Activation::ReLU: return a > 0.0 ? 1.0 : 0.0;
        case Activation::Sigmoid: return a * (1.0 - a);
        case Activation::Identity: return 1.0;
    }
    return 1.0;
}

constexpr double kBceClamp = 1e-12;

double loss_value(Loss loss, double yhat, double y) {
    if (loss == Loss::BinaryCrossEntropy) {
        const double p = std::min(std::max(yhat, kBceClamp), 1.0 - kBceClamp);
        return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }
    const double d = yhat - y;
    return d * d;
}

// Activations for every layer, a[0] being the input copy.
struct Workspace {
    std::vector<std::vector<double>> a;
    std::vector<std::vector<double>> delta;

    void resize(const MlpModel& m) {
        a.resize(m.layers.size() + 1);
        delta.resize(m.layers.size());
        a[0].resize(m.input_dim);
        for (std::size_t l = 0; l < m.layers.size(); ++l) {
            a[l + 1].resize(m.layers[l].out);
            delta[l].resize(m.layers[l].out);
        }
    }
};

double forward_ws(const MlpModel& m, std::span<const double> x, Workspace& ws) {
    std::copy(x.begin(), x.end(), ws.a[0].begin());
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const Layer& layer = m.layers[l];
        const std::vector<double>& in = ws.a[l];
        std::vector<double>& out = ws.a[l + 1];
        for (int j = 0; j < layer.out; ++j) {
            const double z = dot(layer.w.data() + static_cast<std::size_t>(j) * layer.in,
                                 in.data(), layer.in) +
                             layer.b[j];
            out[j] = activate(z, layer.act);
        }
    }
    return ws.a.back()[0];
}

// Backward pass for one sample; gradients are accumulated, not overwritten.
void backward_ws(const MlpModel& m, double yhat, double y, Workspace& ws, Gradients& g) {
    const int last = static_cast<int>(m.layers.size()) - 1;

    // Fused loss/output-activation delta. For Sigmoid+BCE the clamped-log
    // terms cancel to yhat - y exactly; MSE differentiates through the
    // output activation.
    if (m.loss == Loss::BinaryCrossEntropy) {
        ws.delta[last][0] = yhat - y;
    } else {
        ws.delta[last][0] =
            2.0 * (yhat - y) * activation_deriv(yhat, m.layers[last].act);
    }

    for (int l = last; l >= 0; --l) {
        const Layer& layer = m.layers[l];
        const std::vector<double>& in = ws.a[l];
        const std::vector<double>& delta = ws.delta[l];

        double* gw = g.w[l].data();
        double* gb = g.b[l].data();
        for (int j = 0; j < layer.out; ++j) {
            const double d = delta[j];
            if (d == 0.0) continue;
            double* row = gw + static_cast<std::size_t>(j) * layer.in;
            const double* a = in.data();
            for (int i = 0; i < layer.in; ++i) row[i] += d * a[i];
            gb[j] += d;
        }

        if (l > 0) {
            std::vector<double>& dprev = ws.delta[l - 1];
            std::fill(dprev.begin(), dprev.end(), 0.0);
            for (int j = 0; j < layer.out; ++j) {
                const double d = delta[j];
                if (d == 0.0) continue;
                const double* row = layer.w.data() + static_cast<std::size_t>(j) * layer.in;
                for (int i = 0; i < layer.in; ++i) dprev[i] += row[i] * d;
            }
            const std::vector<double>& aprev = ws.a[l];
            for (int i = 0; i < m.layers[l - 1].out; ++i)
                dprev[i] *= activation_deriv(aprev[i], m.layers[l - 1].act);
        }
    }
}

Gradients make_gradients(const MlpModel& m) {
    Gradients g;
    g.w.resize(m.layers.size());
    g.b.resize(m.layers.size());
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        g.w[l].assign(m.layers[l].w.size(), 0.0);
        g.b[l].assign(m.layers[l].b.size(), 0.0);
    }
    return g;
}

void zero_gradients(Gradients& g) {
    for (auto& v : g.w) std::fill(v.begin(), v.end(), 0.0);
    for (auto& v : g.b) std::fill(v.begin(), v.end(), 0.0);
}

void check_input(const MlpModel& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.input_dim)
        throw std::invalid_argument("mlp: input length does not match input_dim");
}

}  // namespace

int MlpModel::parameter_count() const {
    int n = 0;
    for (const Layer& l : layers) n += l.in * l.out + l.out;
    return n;
}

MlpModel init_model(const std::vector<int>& layer_dims, Task task, std::uint64_t seed) {
    if (layer_dims.size() < 2)
        throw std::invalid_argument("init_model: need at least input and output dims");
    for (int d : layer_dims)
        if (d < 1) throw std::invalid_argument("init_model: layer dims must be positive");
    if (layer_dims.back() != 1)
        throw std::invalid_argument("init_model: final dim must be 1");

    MlpModel m;
    m.input_dim = layer_dims.front();
    m.loss = task == Task::Classify ? Loss::BinaryCrossEntropy : Loss::MeanSquaredError;

    Rng rng = Rng::substream(seed, 0);
    const std::size_t n_layers = layer_dims.size() - 1;
    for (std::size_t l = 0; l < n_layers; ++l) {
        Layer layer;
        layer.in = layer_dims[l];
        layer.out = layer_dims[l + 1];
        const bool output_layer = (l == n_layers - 1);
        layer.act = output_layer
                        ? (task == Task::Classify ? Activation::Sigmoid : Activation::Identity)
                        : Activation::ReLU;
        const double limit = std::sqrt(6.0 / (layer.in + layer.out));
        layer.w.resize(static_cast<std::size_t>(layer.in) * layer.out);
        for (double& w : layer.w) w = rng.uniform(-limit, limit);
        layer.b.assign(layer.out, 0.0);
        m.layers.push_back(std::move(layer));
    }
    return m;
}

double forward(const MlpModel& m, std::span<const double> x) {
    check_input(m, x);
    Workspace ws;
    ws.resize(m);
    return forward_ws(m, x, ws);
}

std::vector<double> predict(const MlpModel& m, const TrainingSet& data) {
    if (data.dim != m.input_dim)
        throw std::invalid_argument("predict: dataset width does not match input_dim");
    Workspace ws;
    ws.resize(m);
    std::vector<double> out(data.n);
    for (int i = 0; i < data.n; ++i) out[i] = forward_ws(m, data.row(i), ws);
    return out;
}

double sample_loss(const MlpModel& m, std::span<const double> x, double y) {
    return loss_value(m.loss, forward(m, x), y);
}

Gradients compute_gradients(const MlpModel& m, std::span<const double> x, double y) {
    check_input(m, x);
    Workspace ws;
    ws.resize(m);
    Gradients g = make_gradients(m);
    const double yhat = forward_ws(m, x, ws);
    backward_ws(m, yhat, y, ws, g);
    return g;
}

MetricReport train(MlpModel& m, const TrainingSet& data, const TrainConfig& cfg) {
    if (data.n < 1) throw std::invalid_argument("train: empty dataset");
    if (data.dim != m.input_dim)
        throw std::invalid_argument("train: dataset width does not match input_dim");
    if (cfg.batch_size < 1 || cfg.epochs < 1 || !(cfg.learning_rate > 0.0))
        throw std::invalid_argument("train: invalid config");
    if (m.loss == Loss::BinaryCrossEntropy) {
        if (m.layers.back().act != Activation::Sigmoid)
            throw std::invalid_argument("train: BCE model must end in Sigmoid");
        for (double y : data.y)
            if (y != 0.0 && y != 1.0)
                throw std::invalid_argument("train: classification labels must be 0/1");
    }

    Workspace ws;
    ws.resize(m);
    Gradients g = make_gradients(m);
    Rng shuffle_rng = Rng::substream(cfg.seed, 1);

    std::vector<int> order(data.n);
    std::iota(order.begin(), order.end(), 0);

    MetricReport report;
    report.loss_curve.reserve(cfg.epochs);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (cfg.shuffle) shuffle_rng.shuffle(order);

        double loss_sum = 0.0;
        for (int start = 0; start < data.n; start += cfg.batch_size) {
            const int end = std::min(start + cfg.batch_size, data.n);
            zero_gradients(g);
            for (int k = start; k < end; ++k) {
                const int i = order[k];
                const double yhat = forward_ws(m, data.row(i), ws);
                loss_sum += loss_value(m.loss, yhat, data.y[i]);
                backward_ws(m, yhat, data.y[i], ws, g);
            }
            const double step = cfg.learning_rate / (end - start);
            for (std::size_t l = 0; l < m.layers.size(); ++l) {
                Layer& layer = m.layers[l];
                const double* gw = g.w[l].data();
                for (std::size_t i = 0; i < layer.w.size(); ++i) layer.w[i] -= step * gw[i];
                const double* gb = g.b[l].data();
                for (std::size_t i = 0; i < layer.b.size(); ++i) layer.b[i] -= step * gb[i];
            }
        }

        const double epoch_loss = loss_sum / data.n;
        if (!std::isfinite(epoch_loss))
            throw std::runtime_error("train: loss diverged at epoch " +
                                     std::to_string(epoch + 1) + " (learning rate " +
                                     std::to_string(cfg.learning_rate) + ")");
        report.loss_curve.push_back(epoch_loss);
    }
    return report;
}

double accuracy(const MlpModel& m, const TrainingSet& data, double threshold) {
    if (data.n < 1) throw std::invalid_argument("accuracy: empty dataset");
    Workspace ws;
    ws.resize(m);
    int correct = 0;
    for (int i = 0; i < data.n; ++i) {
        const int predicted = forward_ws(m, data.row(i), ws) >= threshold ? 1 : 0;
        if (predicted == static_cast<int>(data.y[i])) ++correct;
    }
    return static_cast<double>(correct) / data.n;
}

double r_squared(std::span<const double> pred, std::span<const double> truth) {
    if (pred.size() != truth.size() || truth.empty())
        throw std::invalid_argument("r_squared: length mismatch or empty input");
    double mean = 0.0;
    for (double y : truth) mean += y;
    mean /= static_cast<double>(truth.size());

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ss_res += (pred[i] - truth[i]) * (pred[i] - truth[i]);
        ss_tot += (truth[i] - mean) * (truth[i] - mean);
    }
    if (ss_tot == 0.0)
        throw std::invalid_argument("r_squared: truth has zero variance");
    return 1.0 - ss_res / ss_tot;
}

namespace {

constexpr char kModelMagic[8] = {'E', 'N', 'T', 'S', 'M', 'L', 'P', '1'};

void write_u32(std::ofstream& f, std::uint32_t v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::ifstream& f) {
    std::uint32_t v = 0;
    f.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!f) throw std::runtime_error("load_model: truncated file");
    return v;
}

}  // namespace

void save_model(const MlpModel& m, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_model: cannot open " + path.string());
    f.write(kModelMagic, sizeof kModelMagic);
    write_u32(f, m.loss == Loss::BinaryCrossEntropy ? 0u : 1u);
    write_u32(f, static_cast<std::uint32_t>(m.input_dim));
    write_u32(f, static_cast<std::uint32_t>(m.layers.size()));
    for (const Layer& l : m.layers) {
        write_u32(f, static_cast<std::uint32_t>(l.in));
        write_u32(f, static_cast<std::uint32_t>(l.out));
        write_u32(f, static_cast<std::uint32_t>(l.act));
        f.write(reinterpret_cast<const char*>(l.w.data()),
                static_cast<std::streamsize>(l.w.size() * sizeof(double)));
        f.write(reinterpret_cast<const char*>(l.b.data()),
                static_cast<std::streamsize>(l.b.size() * sizeof(double)));
    }
    if (!f) throw std::runtime_error("save_model: write failed for " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_model: cannot open " + path.string());

    char magic[8];
    f.read(magic, sizeof magic);
    if (!f || std::memcmp(magic, kModelMagic, sizeof magic) != 0)
        throw std::runtime_error("load_model: bad magic (not an ENTSMLP1 file)");

    MlpModel m;
    const std::uint32_t loss = read_u32(f);
    if (loss > 1) throw std::runtime_error("load_model: unknown loss tag");
    m.loss = loss == 0 ? Loss::BinaryCrossEntropy : Loss::MeanSquaredError;
    m.input_dim = static_cast<int>(read_u32(f));

    const std::uint32_t n_layers = read_u32(f);
    if (n_layers == 0 || n_layers > 64)
        throw std::runtime_error("load_model: implausible layer count");

    int expect_in = m.input_dim;
    for (std::uint32_t l = 0; l < n_layers; ++l) {
        Layer layer;
        layer.in = static_cast<int>(read_u32(f));
        layer.out = static_cast<int>(read_u32(f));
        const std::uint32_t act = read_u32(f);
        if (act > 2) throw std::runtime_error("load_model: unknown activation tag");
        layer.act = static_cast<Activation>(act);
        if (layer.in != expect_in || layer.in < 1 || layer.out < 1)
            throw std::runtime_error("load_model: layer dims do not chain");
        layer.w.resize(static_cast<std::size_t>(layer.in) * layer.out);
        layer.b.resize(layer.out);
        f.read(reinterpret_cast<char*>(layer.w.data()),
               static_cast<std::streamsize>(layer.w.size() * sizeof(double)));
        f.read(reinterpret_cast<char*>(layer.b.data()),
               static_cast<std::streamsize>(layer.b.size() * sizeof(double)));
        if (!f) throw std::runtime_error("load_model: truncated file");
        expect_in = layer.out;
        m.layers.push_back(std::move(layer));
    }
    if (expect_in != 1) throw std::runtime_error("load_model: final layer dim must be 1");
    return m;
}

}  // namespace entsim
