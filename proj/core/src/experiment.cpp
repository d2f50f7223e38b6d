#include "entsim/experiment.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "entsim/rng.hpp"

namespace entsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

std::string task_name(Task t) { return t == Task::Classify ? "classify" : "regress"; }

Task task_from_name(const std::string& s) {
    if (s == "classify") return Task::Classify;
    if (s == "regress") return Task::Regress;
    throw std::invalid_argument("unknown task '" + s + "'");
}

ordered_json params_to_json(const GenParams& g) {
    ordered_json j;
    j["family"] = family_name(g.family);
    j["seed_index"] = g.seed_index;
    j["p"] = g.noise_p;
    j["theta"] = g.theta;
    j["phi"] = g.phi;
    j["alpha"] = g.alpha;
    j["beta"] = g.beta;
    j["gamma"] = g.gamma;
    j["phi1"] = g.phi1;
    j["phi2"] = g.phi2;
    j["phi3"] = g.phi3;
    return j;
}

GenParams params_from_json(const json& j) {
    GenParams g;
    g.family = family_from_name(j.at("family"));
    g.seed_index = j.at("seed_index");
    g.noise_p = j.at("p");
    g.theta = j.at("theta");
    g.phi = j.at("phi");
    g.alpha = j.at("alpha");
    g.beta = j.at("beta");
    g.gamma = j.at("gamma");
    g.phi1 = j.at("phi1");
    g.phi2 = j.at("phi2");
    g.phi3 = j.at("phi3");
    return g;
}

ExperimentReport make_report(Task task, const Dataset& train, const Dataset& test,
                             const std::vector<int>& hidden, const TrainConfig& cfg) {
    ExperimentReport rep;
    rep.task = task;
    rep.hidden = hidden;
    rep.cfg = cfg;
    rep.train_family = train.family;
    rep.train_channel = train.channel;
    rep.eval_family = test.family;
    rep.eval_channel = test.channel;
    rep.entangled_fraction = test.entangled_fraction();
    rep.experiment_id = task_name(task) + ":" + family_name(train.family) + "+" +
                        channel_name(train.channel) + "->" + family_name(test.family) +
                        "+" + channel_name(test.channel);
    for (const LabeledSample& s : test.samples)
        if (s.entangled) rep.entangled_params.push_back(s.params);
    return rep;
}

}  // namespace

std::vector<int> arch_dims(int feature_count, const std::vector<int>& hidden) {
    std::vector<int> dims;
    dims.push_back(feature_count);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(1);
    return dims;
}

std::uint64_t run_seed(std::uint64_t experiment_seed, int k) {
    std::uint64_t sm = experiment_seed + static_cast<std::uint64_t>(k) * 0x9E3779B97F4A7C15ULL;
    return splitmix64_next(sm);
}

ExperimentReport run_classification_experiment(const Dataset& train, const Dataset& test,
                                               const std::vector<int>& feature_counts,
                                               const std::vector<int>& hidden,
                                               const TrainConfig& cfg) {
    ExperimentReport rep = make_report(Task::Classify, train, test, hidden, cfg);
    for (int k : feature_counts) {
        const std::uint64_t seed = run_seed(cfg.seed, k);
        MlpModel model = init_model(arch_dims(k, hidden), Task::Classify, seed);
        TrainConfig run_cfg = cfg;
        run_cfg.seed = seed;
        const TrainingSet ts = to_training_set(train, k, Task::Classify);
        entsim::train(model, ts, run_cfg);

        const TrainingSet es = to_training_set(test, k, Task::Classify);
        rep.per_k_metric[k] = accuracy(model, es, 0.5);
        rep.misclassified[k] = misclassified(model, test, k, 0.5);
    }
    return rep;
}

ExperimentReport run_regression_experiment(const Dataset& train, const Dataset& test,
                                           const std::vector<int>& feature_counts,
                                           const std::vector<int>& hidden,
                                           const TrainConfig& cfg) {
    ExperimentReport rep = make_report(Task::Regress, train, test, hidden, cfg);
    for (int k : feature_counts) {
        const std::uint64_t seed = run_seed(cfg.seed, k);
        MlpModel model = init_model(arch_dims(k, hidden), Task::Regress, seed);
        TrainConfig run_cfg = cfg;
        run_cfg.seed = seed;
        const TrainingSet ts = to_training_set(train, k, Task::Regress);
        entsim::train(model, ts, run_cfg);

        const TrainingSet es = to_training_set(test, k, Task::Regress);
        const std::vector<double> pred = predict(model, es);
        rep.per_k_metric[k] = r_squared(pred, es.y);
        if (k == 4) {
            auto& pairs = rep.predicted_vs_actual[4];
            pairs.reserve(pred.size());
            for (std::size_t i = 0; i < pred.size(); ++i)
                pairs.emplace_back(pred[i], es.y[i]);
        }
    }
    return rep;
}

double run_cross_evaluation(const Dataset& model_train, const Dataset& eval, int k,
                            const std::vector<int>& hidden, const TrainConfig& cfg) {
    const auto [tr, held_out] = split_dataset(model_train, 0.2, cfg.seed);
    (void)held_out;
    const std::uint64_t seed = run_seed(cfg.seed, k);
    MlpModel model = init_model(arch_dims(k, hidden), Task::Classify, seed);
    TrainConfig run_cfg = cfg;
    run_cfg.seed = seed;
    entsim::train(model, to_training_set(tr, k, Task::Classify), run_cfg);
    return accuracy(model, to_training_set(eval, k, Task::Classify), 0.5);
}

std::vector<MisclassifiedRecord> misclassified(const MlpModel& m, const Dataset& data,
                                               int feature_count, double threshold) {
    const TrainingSet ts = to_training_set(data, feature_count, Task::Classify);
    const std::vector<double> outputs = predict(m, ts);
    std::vector<MisclassifiedRecord> records;
    for (int i = 0; i < ts.n; ++i) {
        const int predicted = outputs[i] >= threshold ? 1 : 0;
        const int label = data.samples[i].entangled;
        if (predicted != label)
            records.push_back({data.samples[i].params, label, outputs[i]});
    }
    return records;
}

double Histogram::misclassified_mode() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < misclassified_counts.size(); ++i)
        if (misclassified_counts[i] > misclassified_counts[best]) best = i;
    const double width = (hi - lo) / static_cast<double>(misclassified_counts.size());
    return lo + (static_cast<double>(best) + 0.5) * width;
}

namespace {

int bin_index(double v, double lo, double hi, int bins) {
    const int i = static_cast<int>((v - lo) / (hi - lo) * bins);
    return std::min(std::max(i, 0), bins - 1);
}

Histogram bin_records(const std::string& label, double lo, double hi, int bins,
                      const std::vector<double>& miss_values,
                      const std::vector<double>& ent_values) {
    Histogram h;
    h.label = label;
    h.lo = lo;
    h.hi = hi;
    h.misclassified_counts.assign(bins, 0);
    h.entangled_counts.assign(bins, 0);
    for (double v : miss_values) ++h.misclassified_counts[bin_index(v, lo, hi, bins)];
    for (double v : ent_values) ++h.entangled_counts[bin_index(v, lo, hi, bins)];
    return h;
}

}  // namespace

std::vector<Histogram> histogram_misclassified(const ExperimentReport& report, int k,
                                               HistAxis axis, int bins) {
    if (bins < 1) throw std::invalid_argument("histogram_misclassified: bins must be >= 1");
    const auto it = report.misclassified.find(k);
    if (it == report.misclassified.end())
        throw std::invalid_argument("histogram_misclassified: report has no records for k=" +
                                    std::to_string(k));
    const std::vector<MisclassifiedRecord>& records = it->second;

    std::vector<Histogram> out;
    if (axis == HistAxis::P || axis == HistAxis::Theta) {
        const bool over_p = axis == HistAxis::P;
        std::vector<double> miss, ent;
        for (const MisclassifiedRecord& r : records)
            miss.push_back(over_p ? r.params.noise_p : r.params.theta);
        for (const GenParams& g : report.entangled_params)
            ent.push_back(over_p ? g.noise_p : g.theta);
        out.push_back(bin_records(over_p ? "p" : "theta", 0.0,
                                  over_p ? 1.0 : 2.0 * kPi, bins, miss, ent));
        return out;
    }

    const double edges[5] = {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0, kPi / 2.0};
    const char* names[4] = {"theta[0,pi/8)", "theta[pi/8,pi/4)", "theta[pi/4,3pi/8)",
                            "theta[3pi/8,pi/2)"};
    for (int b = 0; b < 4; ++b) {
        std::vector<double> miss, ent;
        for (const MisclassifiedRecord& r : records)
            if (r.params.theta >= edges[b] && r.params.theta < edges[b + 1])
                miss.push_back(r.params.noise_p);
        for (const GenParams& g : report.entangled_params)
            if (g.theta >= edges[b] && g.theta < edges[b + 1]) ent.push_back(g.noise_p);
        out.push_back(bin_records(names[b], 0.0, 1.0, bins, miss, ent));
    }
    return out;
}

void write_histogram_csv(const std::vector<Histogram>& hists,
                         const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_histogram_csv: cannot open " + path.string());
    out << "axis,bin_low,bin_high,misclassified,entangled\n";
    for (const Histogram& h : hists) {
        const int bins = static_cast<int>(h.misclassified_counts.size());
        const double width = (h.hi - h.lo) / bins;
        for (int i = 0; i < bins; ++i) {
            char lo[32], hi[32];
            std::snprintf(lo, sizeof lo, "%.6g", h.lo + i * width);
            std::snprintf(hi, sizeof hi, "%.6g", h.lo + (i + 1) * width);
            out << h.label << ',' << lo << ',' << hi << ','
                << h.misclassified_counts[i] << ',' << h.entangled_counts[i] << '\n';
        }
    }
    if (!out) throw std::runtime_error("write_histogram_csv: write failed");
}

void write_report_json(const ExperimentReport& report, const std::filesystem::path& path) {
    ordered_json j;
    j["schema"] = "entsim-report-v1";
    j["experiment_id"] = report.experiment_id;
    j["task"] = task_name(report.task);
    j["hidden"] = report.hidden;
    j["config"] = {{"batch_size", report.cfg.batch_size},
                   {"epochs", report.cfg.epochs},
                   {"learning_rate", report.cfg.learning_rate},
                   {"seed", report.cfg.seed},
                   {"shuffle", report.cfg.shuffle}};
    j["train"] = {{"family", family_name(report.train_family)},
                  {"channel", channel_name(report.train_channel)}};
    j["eval"] = {{"family", family_name(report.eval_family)},
                 {"channel", channel_name(report.eval_channel)}};
    j["entangled_fraction"] = report.entangled_fraction;

    ordered_json metrics = ordered_json::object();
    for (const auto& [k, v] : report.per_k_metric) metrics[std::to_string(k)] = v;
    j["per_k_metric"] = metrics;

    ordered_json miss = ordered_json::object();
    for (const auto& [k, records] : report.misclassified) {
        ordered_json arr = ordered_json::array();
        for (const MisclassifiedRecord& r : records) {
            ordered_json rec = params_to_json(r.params);
            rec["label"] = r.label;
            rec["output"] = r.output;
            arr.push_back(std::move(rec));
        }
        miss[std::to_string(k)] = std::move(arr);
    }
    j["misclassified"] = std::move(miss);

    ordered_json ent = ordered_json::array();
    for (const GenParams& g : report.entangled_params) ent.push_back(params_to_json(g));
    j["entangled_params"] = std::move(ent);

    ordered_json pva = ordered_json::object();
    for (const auto& [k, pairs] : report.predicted_vs_actual) {
        ordered_json arr = ordered_json::array();
        for (const auto& [pred, actual] : pairs) arr.push_back({pred, actual});
        pva[std::to_string(k)] = std::move(arr);
    }
    j["predicted_vs_actual"] = std::move(pva);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_report_json: cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write_report_json: write failed");
}

ExperimentReport read_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_report_json: cannot open " + path.string());
    json j = json::parse(in);
    if (j.at("schema") != "entsim-report-v1")
        throw std::runtime_error("read_report_json: unknown schema in " + path.string());

    ExperimentReport rep;
    rep.experiment_id = j.at("experiment_id");
    rep.task = task_from_name(j.at("task"));
    rep.hidden = j.at("hidden").get<std::vector<int>>();
    const json& cfg = j.at("config");
    rep.cfg.batch_size = cfg.at("batch_size");
    rep.cfg.epochs = cfg.at("epochs");
    rep.cfg.learning_rate = cfg.at("learning_rate");
    rep.cfg.seed = cfg.at("seed");
    rep.cfg.shuffle = cfg.at("shuffle");
    rep.train_family = family_from_name(j.at("train").at("family"));
    rep.train_channel = channel_from_name(j.at("train").at("channel"));
    rep.eval_family = family_from_name(j.at("eval").at("family"));
    rep.eval_channel = channel_from_name(j.at("eval").at("channel"));
    rep.entangled_fraction = j.at("entangled_fraction");

    for (const auto& [key, value] : j.at("per_k_metric").items())
        rep.per_k_metric[std::stoi(key)] = value;

    for (const auto& [key, arr] : j.at("misclassified").items()) {
        std::vector<MisclassifiedRecord>& records = rep.misclassified[std::stoi(key)];
        for (const json& rec : arr)
            records.push_back({params_from_json(rec), rec.at("label"), rec.at("output")});
    }

    for (const json& g : j.at("entangled_params"))
        rep.entangled_params.push_back(params_from_json(g));

    for (const auto& [key, arr] : j.at("predicted_vs_actual").items()) {
        auto& pairs = rep.predicted_vs_actual[std::stoi(key)];
        for (const json& pa : arr) pairs.emplace_back(pa.at(0), pa.at(1));
    }
    return rep;
}

}  // namespace entsim
