// entsim command line: dataset generation, model training and the
// experiment harness for two-qubit entanglement classification/regression
// under dephasing and depolarizing noise.

#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entsim/channels.hpp"
#include "entsim/dataset.hpp"
#include "entsim/experiment.hpp"
#include "entsim/mlp.hpp"
#include "entsim/states.hpp"

namespace {

using namespace entsim;

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stoi(cur));
    if (out.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_k_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(s.substr(0, dots));
        const int hi = std::stoi(s.substr(dots + 2));
        if (lo < 1 || hi > 15 || lo > hi)
            throw CLI::ValidationError("--k-range must lie within 1..15");
        std::vector<int> ks;
        for (int k = lo; k <= hi; ++k) ks.push_back(k);
        return ks;
    }
    return parse_int_list(s, "--k-range");
}

Task parse_task(const std::string& s) {
    if (s == "classify") return Task::Classify;
    if (s == "regress") return Task::Regress;
    throw CLI::ValidationError("--task must be classify or regress");
}

double default_lr(Task task) { return task == Task::Classify ? 0.05 : 0.01; }

std::vector<int> default_hidden(Task task) {
    return task == Task::Classify ? std::vector<int>{15} : std::vector<int>{100, 50, 50};
}

TrainConfig make_config(int batch, int epochs, double lr, std::uint64_t seed, Task task) {
    TrainConfig cfg;
    cfg.batch_size = batch;
    cfg.epochs = epochs;
    cfg.learning_rate = lr > 0.0 ? lr : default_lr(task);
    cfg.seed = seed;
    return cfg;
}

int cmd_gen(const std::string& family, const std::string& channel, int n,
            std::uint64_t seed, const std::string& out, double concentration) {
    BuildOptions opts;
    opts.eig_concentration = concentration;
    const Dataset ds = build_dataset(family_from_name(family), channel_from_name(channel),
                                     n, seed, opts);
    export_dataset(ds, out);
    std::printf("wrote %s+%s n=%d seed=%llu entangled_fraction=%.4f -> %s\n",
                family.c_str(), channel.c_str(), n, (unsigned long long)seed,
                ds.entangled_fraction(), out.c_str());
    return 0;
}

int cmd_calibrate(double target, int samples, std::uint64_t seed) {
    Rng rng(seed);
    const double conc = calibrate_entanglement_rate(target, samples, rng);

    int entangled = 0;
    std::uint64_t check_state = seed + 0x714C4D;
    const std::uint64_t check_seed = splitmix64_next(check_state);
    for (int i = 0; i < samples; ++i) {
        Rng r = Rng::substream(check_seed, static_cast<std::uint64_t>(i));
        if (ppt_label(random_mixed_qr(r, conc)).entangled) ++entangled;
    }
    std::printf("eig_concentration=%.10g achieved_rate=%.4f target=%.4f samples=%d\n",
                conc, static_cast<double>(entangled) / samples, target, samples);
    return 0;
}

int cmd_train(const std::string& data, const std::string& task_s, int features,
              const std::string& arch, double lr, int epochs, int batch,
              std::uint64_t seed, double test_fraction, const std::string& model_out) {
    const Task task = parse_task(task_s);
    const Dataset full = import_dataset(data);
    const std::vector<int> hidden =
        arch.empty() ? default_hidden(task) : parse_int_list(arch, "--arch");
    const TrainConfig cfg = make_config(batch, epochs, lr, seed, task);

    MlpModel model = init_model(arch_dims(features, hidden), task, run_seed(cfg.seed, features));
    TrainConfig run_cfg = cfg;
    run_cfg.seed = run_seed(cfg.seed, features);

    if (test_fraction > 0.0) {
        const auto [tr, te] = split_dataset(full, test_fraction, cfg.seed);
        const MetricReport rep =
            train(model, to_training_set(tr, features, task), run_cfg);
        const TrainingSet es = to_training_set(te, features, task);
        if (task == Task::Classify)
            std::printf("final_train_loss=%.6f held_out_accuracy=%.4f\n",
                        rep.loss_curve.back(), accuracy(model, es, 0.5));
        else
            std::printf("final_train_loss=%.6f held_out_r2=%.4f\n",
                        rep.loss_curve.back(), r_squared(predict(model, es), es.y));
    } else {
        const MetricReport rep = train(model, to_training_set(full, features, task), run_cfg);
        std::printf("final_train_loss=%.6f (no held-out split)\n", rep.loss_curve.back());
    }

    if (!model_out.empty()) {
        save_model(model, model_out);
        std::printf("model -> %s\n", model_out.c_str());
    }
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data, double threshold) {
    const MlpModel model = load_model(model_path);
    const Dataset ds = import_dataset(data);
    const Task task =
        model.loss == Loss::BinaryCrossEntropy ? Task::Classify : Task::Regress;
    const TrainingSet ts = to_training_set(ds, model.input_dim, task);
    if (task == Task::Classify)
        std::printf("accuracy=%.4f n=%d threshold=%.3f\n", accuracy(model, ts, threshold),
                    ts.n, threshold);
    else
        std::printf("r2=%.4f n=%d\n", r_squared(predict(model, ts), ts.y), ts.n);
    return 0;
}

int cmd_sweep(const std::string& data, const std::string& task_s, const std::string& k_range,
              std::string arch, double lr, int epochs, int batch,
              std::uint64_t seed, const std::string& preset,
              const std::string& report_path) {
    const Task task = parse_task(task_s);
    if (!preset.empty()) {
        if (preset != "large")
            throw CLI::ValidationError("--preset: only 'large' is defined");
        // the wide-hidden-layer comparison; pair with a 10^6-sample dataset
        if (arch.empty()) arch = "100";
    }
    const Dataset full = import_dataset(data);
    const auto [tr, te] = split_dataset(full, 0.2, seed);
    const std::vector<int> ks = parse_k_range(k_range);
    const std::vector<int> hidden =
        arch.empty() ? default_hidden(task) : parse_int_list(arch, "--arch");
    const TrainConfig cfg = make_config(batch, epochs, lr, seed, task);

    const ExperimentReport rep =
        task == Task::Classify
            ? run_classification_experiment(tr, te, ks, hidden, cfg)
            : run_regression_experiment(tr, te, ks, hidden, cfg);
    for (const auto& [k, metric] : rep.per_k_metric)
        std::printf("k=%-2d %s=%.4f\n", k,
                    task == Task::Classify ? "accuracy" : "r2", metric);
    write_report_json(rep, report_path);
    std::printf("report -> %s\n", report_path.c_str());
    return 0;
}

int cmd_cross(const std::string& train_data, const std::string& eval_data, int features,
              const std::string& arch, double lr, int epochs, int batch,
              std::uint64_t seed, const std::string& report_path) {
    const Dataset a = import_dataset(train_data);
    const Dataset b = import_dataset(eval_data);
    const std::vector<int> hidden =
        arch.empty() ? default_hidden(Task::Classify) : parse_int_list(arch, "--arch");
    const TrainConfig cfg = make_config(batch, epochs, lr, seed, Task::Classify);

    const auto [tr, held_out] = split_dataset(a, 0.2, cfg.seed);
    (void)held_out;
    const ExperimentReport rep =
        run_classification_experiment(tr, b, {features}, hidden, cfg);
    std::printf("cross accuracy=%.4f (train %s+%s, eval %s+%s, k=%d)\n",
                rep.per_k_metric.at(features), family_name(a.family).c_str(),
                channel_name(a.channel).c_str(), family_name(b.family).c_str(),
                channel_name(b.channel).c_str(), features);
    if (!report_path.empty()) {
        write_report_json(rep, report_path);
        std::printf("report -> %s\n", report_path.c_str());
    }
    return 0;
}

int cmd_hist(const std::string& report_path, const std::string& axis_s, int bins, int k,
             const std::string& out) {
    const ExperimentReport rep = read_report_json(report_path);
    if (k == 0) {
        if (rep.misclassified.size() != 1)
            throw CLI::ValidationError(
                "--k required: report holds records for several feature counts");
        k = rep.misclassified.begin()->first;
    }
    HistAxis axis;
    if (axis_s == "p")
        axis = HistAxis::P;
    else if (axis_s == "theta")
        axis = HistAxis::Theta;
    else if (axis_s == "p-by-theta")
        axis = HistAxis::PByThetaBand;
    else
        throw CLI::ValidationError("--axis must be p, theta or p-by-theta");

    const std::vector<Histogram> hists = histogram_misclassified(rep, k, axis, bins);
    write_histogram_csv(hists, out);
    std::printf("histogram (k=%d, axis=%s, bins=%d) -> %s\n", k, axis_s.c_str(), bins,
                out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit entanglement datasets, channels and classifiers"};
    app.require_subcommand(1);

    // gen
    std::string family, channel = "none", out;
    int n = 50000;
    std::uint64_t seed = 1;
    double concentration = kDefaultEigConcentration;
    auto* gen = app.add_subcommand("gen", "generate a labeled dataset");
    gen->add_option("--family", family, "psi1|psi2|psi3|mixed")->required();
    gen->add_option("--channel", channel, "dephase|depolarize|none");
    gen->add_option("--n", n, "sample count")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "dataset seed");
    gen->add_option("--out", out, "output CSV path")->required();
    gen->add_option("--eig-concentration", concentration,
                    "eigenvalue concentration for mixed states");

    // calibrate
    double target_rate = 0.42;
    int cal_samples = 100000;
    std::uint64_t cal_seed = 1;
    auto* cal = app.add_subcommand("calibrate",
                                   "find the mixed-state eigenvalue concentration "
                                   "matching a target entangled rate");
    cal->add_option("--target-rate", target_rate, "target entangled fraction");
    cal->add_option("--samples", cal_samples, "draws per bisection step")
        ->check(CLI::PositiveNumber);
    cal->add_option("--seed", cal_seed, "rng seed");

    // train
    std::string t_data, t_task = "classify", t_arch, t_model_out;
    int t_features = 15, t_epochs = 200, t_batch = 32;
    double t_lr = 0.0, t_test_fraction = 0.2;
    std::uint64_t t_seed = 1;
    auto* tr = app.add_subcommand("train", "train one model on a dataset file");
    tr->add_option("--data", t_data, "dataset CSV")->required();
    tr->add_option("--task", t_task, "classify|regress");
    tr->add_option("--features", t_features, "use the first K features")
        ->check(CLI::Range(1, 15));
    tr->add_option("--arch", t_arch, "hidden layer widths, e.g. 15 or 100,50,50");
    tr->add_option("--lr", t_lr, "learning rate (default 0.05 classify / 0.01 regress)");
    tr->add_option("--epochs", t_epochs, "training epochs")->check(CLI::PositiveNumber);
    tr->add_option("--batch", t_batch, "mini-batch size")->check(CLI::PositiveNumber);
    tr->add_option("--seed", t_seed, "experiment seed");
    tr->add_option("--test-fraction", t_test_fraction,
                   "held-out fraction (0 trains on the full file)");
    tr->add_option("--model-out", t_model_out, "write trained model here");

    // eval
    std::string e_model, e_data;
    double e_threshold = 0.5;
    auto* ev = app.add_subcommand("eval", "evaluate a saved model on a dataset file");
    ev->add_option("--model", e_model, "model file")->required();
    ev->add_option("--data", e_data, "dataset CSV")->required();
    ev->add_option("--threshold", e_threshold, "classification threshold");

    // sweep
    std::string s_data, s_task = "classify", s_krange = "1..15", s_arch, s_report,
                s_preset;
    int s_epochs = 200, s_batch = 32;
    double s_lr = 0.0;
    std::uint64_t s_seed = 1;
    auto* sw = app.add_subcommand("sweep", "train across feature-count prefixes");
    sw->add_option("--data", s_data, "dataset CSV")->required();
    sw->add_option("--task", s_task, "classify|regress");
    sw->add_option("--k-range", s_krange, "e.g. 1..15 or 4,9,15");
    sw->add_option("--arch", s_arch, "hidden layer widths");
    sw->add_option("--lr", s_lr, "learning rate");
    sw->add_option("--epochs", s_epochs, "training epochs")->check(CLI::PositiveNumber);
    sw->add_option("--batch", s_batch, "mini-batch size")->check(CLI::PositiveNumber);
    sw->add_option("--seed", s_seed, "experiment seed");
    sw->add_option("--preset", s_preset, "'large': the 100-node hidden layer comparison");
    sw->add_option("--report", s_report, "output report JSON")->required();

    // cross
    std::string c_train, c_eval, c_arch, c_report;
    int c_features = 15, c_epochs = 200, c_batch = 32;
    double c_lr = 0.0;
    std::uint64_t c_seed = 1;
    auto* cr = app.add_subcommand("cross", "train on one dataset, evaluate on another");
    cr->add_option("--train-data", c_train, "training dataset CSV")->required();
    cr->add_option("--eval-data", c_eval, "evaluation dataset CSV")->required();
    cr->add_option("--features", c_features, "feature count")->check(CLI::Range(1, 15));
    cr->add_option("--arch", c_arch, "hidden layer widths");
    cr->add_option("--lr", c_lr, "learning rate");
    cr->add_option("--epochs", c_epochs, "training epochs")->check(CLI::PositiveNumber);
    cr->add_option("--batch", c_batch, "mini-batch size")->check(CLI::PositiveNumber);
    cr->add_option("--seed", c_seed, "experiment seed");
    cr->add_option("--report", c_report, "output report JSON");

    // hist
    std::string h_report, h_axis = "p", h_out;
    int h_bins = 50, h_k = 0;
    auto* hi = app.add_subcommand("hist", "bin misclassified/entangled instances");
    hi->add_option("--report", h_report, "report JSON from sweep/cross")->required();
    hi->add_option("--axis", h_axis, "p|theta|p-by-theta");
    hi->add_option("--bins", h_bins, "bin count")->check(CLI::PositiveNumber);
    hi->add_option("--k", h_k, "feature count (defaults to the report's only k)");
    hi->add_option("--out", h_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(family, channel, n, seed, out, concentration);
        if (cal->parsed()) return cmd_calibrate(target_rate, cal_samples, cal_seed);
        if (tr->parsed())
            return cmd_train(t_data, t_task, t_features, t_arch, t_lr, t_epochs, t_batch,
                             t_seed, t_test_fraction, t_model_out);
        if (ev->parsed()) return cmd_eval(e_model, e_data, e_threshold);
        if (sw->parsed())
            return cmd_sweep(s_data, s_task, s_krange, s_arch, s_lr, s_epochs, s_batch,
                             s_seed, s_preset, s_report);
        if (cr->parsed())
            return cmd_cross(c_train, c_eval, c_features, c_arch, c_lr, c_epochs, c_batch,
                             c_seed, c_report);
        if (hi->parsed()) return cmd_hist(h_report, h_axis, h_bins, h_k, h_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
