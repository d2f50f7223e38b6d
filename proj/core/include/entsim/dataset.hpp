#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "entsim/mlp.hpp"
#include "entsim/states.hpp"
#include "entsim/tomography.hpp"

namespace entsim {

enum class Channel { None, DephaseGlobal, Depolarize };

std::string family_name(Family f);
Family family_from_name(const std::string& s);
std::string channel_name(Channel c);
Channel channel_from_name(const std::string& s);

struct LabeledSample {
    FeatureVector features;
    int entangled = 0;          // PPT label
    double concurrence = 0.0;
    GenParams params;
};

inline constexpr const char* kGeneratorVersion = "entsim-dataset-v1";

struct Dataset {
    Family family = Family::Psi1;
    Channel channel = Channel::None;
    std::vector<LabeledSample> samples;
    std::uint64_t seed = 0;
    std::string generator_version = kGeneratorVersion;
    double eig_concentration = 0.0;  // MixedQR only

    double entangled_fraction() const;
};

struct BuildOptions {
    double eig_concentration = kDefaultEigConcentration;
};

/// Valid pairings: (Psi1, Depolarize), (Psi1, DephaseGlobal),
/// (Psi2, DephaseGlobal), (Psi3, DephaseGlobal), (MixedQR, None).
/// Sample i draws all of its randomness from Rng::substream(seed, i).
Dataset build_dataset(Family family, Channel channel, int n, std::uint64_t seed,
                      const BuildOptions& opts = {});

/// CSV with fixed header
///   family,seed_index,p,theta,phi,alpha,beta,gamma,phi1,phi2,phi3,
///   f1..f15,entangled,concurrence
/// (parameter columns a family does not use stay empty) plus a JSON sidecar
/// at <path>.meta.json carrying generator_version, seed, channel,
/// entangled_fraction and an FNV-1a checksum of the CSV bytes.
void export_dataset(const Dataset& ds, const std::filesystem::path& csv_path);

/// Inverse of export_dataset. Verifies the sidecar version and checksum when
/// the sidecar is present; throws on schema or row errors, naming the
/// offending column or line.
Dataset import_dataset(const std::filesystem::path& csv_path);

/// Seeded-shuffle split; the second dataset holds round(n * test_fraction)
/// samples.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double test_fraction,
                                          std::uint64_t seed);

/// First `feature_count` features as inputs; targets are the 0/1 entangled
/// flag (Classify) or the concurrence (Regress).
TrainingSet to_training_set(const Dataset& ds, int feature_count, Task task);

}  // namespace entsim
