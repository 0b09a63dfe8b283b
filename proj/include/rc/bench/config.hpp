#pragma once

#include "rc/augment.hpp"
#include "rc/pipeline.hpp"
#include "rc/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rc::bench {

enum class ExperimentKind { narma, mc, ipc, grid };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& s);

/// One model + augmentation combination, e.g. "Delay-Pass through-ESN".
struct VariantSpec {
    std::string name;
    ModelKind model = ModelKind::esn;
    ReservoirConfig reservoir;
    AugmentConfig augment;
    std::optional<std::size_t> washout;

    /// Builds the pipeline with reservoir seed `seed`.
    Pipeline pipeline(std::uint64_t seed, std::size_t steps_per_cycle) const;
};

/// Name in the Delay-Pass through-Clustering-<model> convention.
std::string default_variant_name(ModelKind model, const AugmentConfig& augment);

struct IpcSettings {
    std::vector<std::size_t> lengths{200, 1000, 2500, 5000, 7500, 10000, 20000};
    int max_degree = 6;
    std::size_t max_tau = 15;
    std::vector<std::size_t> delays{5, 10, 15};
    std::optional<double> input_low;  // defaults per model, see ipc_input_support
    std::optional<double> input_high;
};

struct GridSettings {
    std::size_t t = 10; // NARMA delay scored by the grid search
    std::map<std::string, std::vector<double>> params;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::narma;
    std::vector<VariantSpec> variants;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::size_t t_max = 15;
    std::size_t n_train = 2000;
    std::size_t n_test = 2000;
    double lambda = 1e-6;
    IpcSettings ipc;
    GridSettings grid;
    std::size_t threads = 1;
    std::size_t steps_per_cycle = 512;
    std::string out_dir; // empty: nothing written

    /// Throws ConfigError on the first invalid parameter.
    void validate() const;
};

/// Command-line values that override the file.
struct Overrides {
    std::optional<std::string> model;
    std::optional<std::size_t> delay;
    std::optional<double> decay;
    bool pass_through = false;
    std::optional<std::size_t> clusters;
    std::optional<std::vector<std::uint64_t>> seeds;
    std::optional<std::string> out_dir;
    std::optional<double> lambda;
    std::optional<std::size_t> n_train;
    std::optional<std::size_t> n_test;
    std::optional<std::size_t> threads;
};

/// Parses the JSON config text. Unknown keys are rejected with ConfigError.
ExperimentSpec parse_spec(const std::string& json_text, ExperimentKind kind, const Overrides& overrides = {});
ExperimentSpec load_spec(const std::string& path, ExperimentKind kind, const Overrides& overrides = {});

/// Parses "1,2,3".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

} // namespace rc::bench
