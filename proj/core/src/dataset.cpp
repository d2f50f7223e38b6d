#include "entsim/dataset.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "entsim/channels.hpp"

namespace entsim {

namespace {

using nlohmann::ordered_json;

constexpr std::array<const char*, 28> kColumns = {
    "family", "seed_index", "p",    "theta", "phi",  "alpha", "beta",
    "gamma",  "phi1",       "phi2", "phi3",  "f1",   "f2",    "f3",
    "f4",     "f5",         "f6",   "f7",    "f8",   "f9",    "f10",
    "f11",    "f12",        "f13",  "f14",   "f15",  "entangled", "concurrence"};

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool uses_theta_phi(Family f) { return f == Family::Psi1 || f == Family::Psi2; }
bool uses_hyperspherical(Family f) { return f == Family::Psi3; }
bool uses_noise(Family f, Channel c) { return f != Family::MixedQR && c != Channel::None; }

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    return csv.string() + ".meta.json";
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Psi1: return "psi1";
        case Family::Psi2: return "psi2";
        case Family::Psi3: return "psi3";
        case Family::MixedQR: return "mixed";
    }
    throw std::invalid_argument("family_name: bad tag");
}

Family family_from_name(const std::string& s) {
    if (s == "psi1") return Family::Psi1;
    if (s == "psi2") return Family::Psi2;
    if (s == "psi3") return Family::Psi3;
    if (s == "mixed") return Family::MixedQR;
    throw std::invalid_argument("unknown family '" + s + "'");
}

std::string channel_name(Channel c) {
    switch (c) {
        case Channel::None: return "none";
        case Channel::DephaseGlobal: return "dephase";
        case Channel::Depolarize: return "depolarize";
    }
    throw std::invalid_argument("channel_name: bad tag");
}

Channel channel_from_name(const std::string& s) {
    if (s == "none") return Channel::None;
    if (s == "dephase") return Channel::DephaseGlobal;
    if (s == "depolarize") return Channel::Depolarize;
    throw std::invalid_argument("unknown channel '" + s + "'");
}

double Dataset::entangled_fraction() const {
    if (samples.empty()) return 0.0;
    long n = 0;
    for (const LabeledSample& s : samples) n += s.entangled;
    return static_cast<double>(n) / static_cast<double>(samples.size());
}

Dataset build_dataset(Family family, Channel channel, int n, std::uint64_t seed,
                      const BuildOptions& opts) {
    const bool valid =
        (family == Family::Psi1 && (channel == Channel::Depolarize ||
                                    channel == Channel::DephaseGlobal)) ||
        (family == Family::Psi2 && channel == Channel::DephaseGlobal) ||
        (family == Family::Psi3 && channel == Channel::DephaseGlobal) ||
        (family == Family::MixedQR && channel == Channel::None);
    if (!valid)
        throw std::invalid_argument("build_dataset: unsupported family/channel pairing " +
                                    family_name(family) + "/" + channel_name(channel));
    if (n < 1) throw std::invalid_argument("build_dataset: n must be >= 1");

    Dataset ds;
    ds.family = family;
    ds.channel = channel;
    ds.seed = seed;
    if (family == Family::MixedQR) ds.eig_concentration = opts.eig_concentration;
    ds.samples.reserve(n);

    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
        GenParams gp;
        gp.family = family;
        gp.seed_index = static_cast<std::uint64_t>(i);

        DensityOperator rho = [&]() -> DensityOperator {
            switch (family) {
                case Family::Psi1:
                case Family::Psi2: {
                    gp.theta = rng.angle();
                    gp.phi = rng.angle();
                    gp.noise_p = rng.uniform();
                    const PureState psi = family == Family::Psi1
                                              ? make_psi1(gp.theta, gp.phi)
                                              : make_psi2(gp.theta, gp.phi);
                    const DensityOperator pure = pure_to_density(psi);
                    const NoiseStrength p(gp.noise_p);
                    return channel == Channel::Depolarize
                               ? depolarize(pure, p)
                               : dephase_global_closed_form(pure, p);
                }
                case Family::Psi3: {
                    gp.alpha = rng.angle();
                    gp.beta = rng.angle();
                    gp.gamma = rng.angle();
                    gp.phi1 = rng.angle();
                    gp.phi2 = rng.angle();
                    gp.phi3 = rng.angle();
                    gp.noise_p = rng.uniform();
                    const DensityOperator pure = pure_to_density(
                        make_psi3(gp.alpha, gp.beta, gp.gamma, gp.phi1, gp.phi2, gp.phi3));
                    return dephase_global_closed_form(pure, NoiseStrength(gp.noise_p));
                }
                case Family::MixedQR:
                    return random_mixed_qr(rng, opts.eig_concentration);
            }
            throw std::logic_error("build_dataset: unreachable");
        }();

        LabeledSample sample;
        sample.features = extract_features(rho);
        sample.entangled = ppt_label(rho).entangled ? 1 : 0;
        sample.concurrence = concurrence(rho);
        sample.params = gp;
        ds.samples.push_back(std::move(sample));
    }
    return ds;
}

void export_dataset(const Dataset& ds, const std::filesystem::path& csv_path) {
    if (ds.samples.empty()) throw std::invalid_argument("export_dataset: empty dataset");

    std::string csv;
    csv.reserve(ds.samples.size() * 420 + 256);
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) csv += ',';
        csv += kColumns[i];
    }
    csv += '\n';

    const bool tp = uses_theta_phi(ds.family);
    const bool hs = uses_hyperspherical(ds.family);
    const bool np = uses_noise(ds.family, ds.channel);

    for (const LabeledSample& s : ds.samples) {
        const GenParams& g = s.params;
        csv += family_name(ds.family);
        csv += ',';
        csv += std::to_string(g.seed_index);
        csv += ',';
        if (np) csv += fmt_double(g.noise_p);
        csv += ',';
        if (tp) csv += fmt_double(g.theta);
        csv += ',';
        if (tp) csv += fmt_double(g.phi);
        csv += ',';
        if (hs) csv += fmt_double(g.alpha);
        csv += ',';
        if (hs) csv += fmt_double(g.beta);
        csv += ',';
        if (hs) csv += fmt_double(g.gamma);
        csv += ',';
        if (hs) csv += fmt_double(g.phi1);
        csv += ',';
        if (hs) csv += fmt_double(g.phi2);
        csv += ',';
        if (hs) csv += fmt_double(g.phi3);
        for (double f : s.features.f) {
            csv += ',';
            csv += fmt_double(f);
        }
        csv += ',';
        csv += std::to_string(s.entangled);
        csv += ',';
        csv += fmt_double(s.concurrence);
        csv += '\n';
    }

    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("export_dataset: cannot open " + csv_path.string());
    out << csv;
    if (!out) throw std::runtime_error("export_dataset: write failed");
    out.close();

    ordered_json meta;
    meta["generator_version"] = ds.generator_version;
    meta["family"] = family_name(ds.family);
    meta["channel"] = channel_name(ds.channel);
    meta["n"] = ds.samples.size();
    meta["seed"] = ds.seed;
    if (ds.family == Family::MixedQR) meta["eig_concentration"] = ds.eig_concentration;
    meta["entangled_fraction"] = ds.entangled_fraction();
    meta["csv_fnv1a64"] = hex64(fnv1a64(csv));

    std::ofstream ms(sidecar_path(csv_path), std::ios::binary);
    if (!ms) throw std::runtime_error("export_dataset: cannot open sidecar for " +
                                      csv_path.string());
    ms << meta.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const char* col, std::size_t lineno) {
    if (s.empty()) return 0.0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw std::runtime_error("import_dataset: malformed " + std::string(col) +
                                 " value on line " + std::to_string(lineno));
    return v;
}

}  // namespace

Dataset import_dataset(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw std::runtime_error("import_dataset: cannot open " + csv_path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string csv = buf.str();

    Dataset ds;
    bool have_sidecar = false;
    const auto meta_path = sidecar_path(csv_path);
    if (std::filesystem::exists(meta_path)) {
        have_sidecar = true;
        std::ifstream ms(meta_path);
        nlohmann::json meta = nlohmann::json::parse(ms);
        const std::string version = meta.at("generator_version");
        if (version != kGeneratorVersion)
            throw std::runtime_error("import_dataset: generator_version mismatch, file has '" +
                                     version + "', expected '" + kGeneratorVersion + "'");
        if (meta.at("csv_fnv1a64") != hex64(fnv1a64(csv)))
            throw std::runtime_error("import_dataset: checksum failure for " +
                                     csv_path.string());
        ds.channel = channel_from_name(meta.at("channel"));
        ds.seed = meta.at("seed");
        if (meta.contains("eig_concentration"))
            ds.eig_concentration = meta.at("eig_concentration");
    }

    std::istringstream lines(csv);
    std::string line;
    if (!std::getline(lines, line))
        throw std::runtime_error("import_dataset: empty file " + csv_path.string());

    const std::vector<std::string> header = split_line(line);
    for (const char* expected : kColumns) {
        bool found = false;
        for (const std::string& h : header)
            if (h == expected) {
                found = true;
                break;
            }
        if (!found)
            throw std::runtime_error("import_dataset: schema error, missing column '" +
                                     std::string(expected) + "'");
    }
    if (header.size() != kColumns.size())
        throw std::runtime_error("import_dataset: schema error, expected " +
                                 std::to_string(kColumns.size()) + " columns, found " +
                                 std::to_string(header.size()));
    for (std::size_t i = 0; i < kColumns.size(); ++i)
        if (header[i] != kColumns[i])
            throw std::runtime_error("import_dataset: schema error, column " +
                                     std::to_string(i + 1) + " is '" + header[i] +
                                     "', expected '" + kColumns[i] + "'");

    std::size_t lineno = 1;
    bool first_row = true;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> cell = split_line(line);
        if (cell.size() != kColumns.size())
            throw std::runtime_error("import_dataset: malformed row on line " +
                                     std::to_string(lineno) + " (" +
                                     std::to_string(cell.size()) + " fields)");

        const Family fam = family_from_name(cell[0]);
        if (first_row) {
            ds.family = fam;
            first_row = false;
        } else if (fam != ds.family) {
            throw std::runtime_error("import_dataset: mixed families on line " +
                                     std::to_string(lineno));
        }

        LabeledSample s;
        s.params.family = fam;
        s.params.seed_index = std::strtoull(cell[1].c_str(), nullptr, 10);
        s.params.noise_p = parse_double(cell[2], "p", lineno);
        s.params.theta = parse_double(cell[3], "theta", lineno);
        s.params.phi = parse_double(cell[4], "phi", lineno);
        s.params.alpha = parse_double(cell[5], "alpha", lineno);
        s.params.beta = parse_double(cell[6], "beta", lineno);
        s.params.gamma = parse_double(cell[7], "gamma", lineno);
        s.params.phi1 = parse_double(cell[8], "phi1", lineno);
        s.params.phi2 = parse_double(cell[9], "phi2", lineno);
        s.params.phi3 = parse_double(cell[10], "phi3", lineno);
        for (int f = 0; f < 15; ++f)
            s.features.f[f] = parse_double(cell[11 + f], kColumns[11 + f], lineno);
        if (cell[26] != "0" && cell[26] != "1")
            throw std::runtime_error("import_dataset: entangled flag must be 0/1 on line " +
                                     std::to_string(lineno));
        s.entangled = cell[26] == "1" ? 1 : 0;
        s.concurrence = parse_double(cell[27], "concurrence", lineno);
        ds.samples.push_back(std::move(s));
    }

    if (ds.samples.empty())
        throw std::runtime_error("import_dataset: no data rows in " + csv_path.string());
    // Channel provenance lives in the sidecar; without one, psi2/psi3 admit
    // only the dephasing channel while psi1 stays marked None (unknown).
    if (!have_sidecar && (ds.family == Family::Psi2 || ds.family == Family::Psi3))
        ds.channel = Channel::DephaseGlobal;
    return ds;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double test_fraction,
                                          std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("split_dataset: test_fraction must be in (0,1)");
    const int n = static_cast<int>(ds.samples.size());
    const int n_test = static_cast<int>(std::lround(n * test_fraction));
    if (n_test < 1 || n_test >= n)
        throw std::invalid_argument("split_dataset: degenerate split");

    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    Rng rng = Rng::substream(seed, 0x73706C6974ULL);  // "split" domain
    rng.shuffle(idx);

    Dataset train = ds, test = ds;
    train.samples.clear();
    test.samples.clear();
    train.samples.reserve(n - n_test);
    test.samples.reserve(n_test);
    for (int i = 0; i < n - n_test; ++i) train.samples.push_back(ds.samples[idx[i]]);
    for (int i = n - n_test; i < n; ++i) test.samples.push_back(ds.samples[idx[i]]);
    return {std::move(train), std::move(test)};
}

TrainingSet to_training_set(const Dataset& ds, int feature_count, Task task) {
    if (feature_count < 1 || feature_count > 15)
        throw std::invalid_argument("to_training_set: feature_count must be in 1..15");
    TrainingSet ts;
    ts.n = static_cast<int>(ds.samples.size());
    ts.dim = feature_count;
    ts.x.reserve(static_cast<std::size_t>(ts.n) * feature_count);
    ts.y.reserve(ts.n);
    for (const LabeledSample& s : ds.samples) {
        for (int i = 0; i < feature_count; ++i) ts.x.push_back(s.features.f[i]);
        ts.y.push_back(task == Task::Classify ? static_cast<double>(s.entangled)
                                              : s.concurrence);
    }
    return ts;
}

}  // namespace entsim
