#include "rc/bench/config.hpp"

#include "rc/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace rc::bench {

using nlohmann::json;

std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::narma: return "narma";
    case ExperimentKind::mc: return "mc";
    case ExperimentKind::ipc: return "ipc";
    case ExperimentKind::grid: return "grid";
    }
    return "?";
}

ExperimentKind experiment_from_string(const std::string& s) {
    if (s == "narma") return ExperimentKind::narma;
    if (s == "mc") return ExperimentKind::mc;
    if (s == "ipc") return ExperimentKind::ipc;
    if (s == "grid") return ExperimentKind::grid;
    throw ConfigError("unknown experiment '" + s + "'");
}

Pipeline VariantSpec::pipeline(std::uint64_t seed, std::size_t steps_per_cycle) const {
    ReservoirConfig cfg = reservoir;
    cfg.seed = seed;
    Pipeline p(model, cfg, augment, washout.value_or(Pipeline::npos));
    p.steps_per_cycle = steps_per_cycle;
    return p;
}

std::string default_variant_name(ModelKind model, const AugmentConfig& augment) {
    std::string name;
    if (augment.delay_active()) name += "Delay-";
    if (augment.pass_through && model != ModelKind::linear) name += "Pass through-";
    if (augment.clustered()) name += "Clustering-";
    switch (model) {
    case ModelKind::esn: return name + "ESN";
    case ModelKind::cbm: return name + (name.empty() ? "CBM-RC" : "CBM");
    case ModelKind::linear: return name + "Pass through";
    }
    return name;
}

namespace {

const std::set<std::string> kVariantKeys = {"model", "n_in", "n_rec", "alpha_in", "alpha_rec", "beta_rec",
                                            "alpha_i", "t_c", "delay", "decay", "pass_through", "clusters",
                                            "wiring", "washout"};
const std::set<std::string> kTopKeys = {"description", "defaults", "variants", "seeds", "t_max", "train", "test",
                                        "lambda", "ipc", "grid", "threads", "steps_per_cycle", "out"};
const std::set<std::string> kIpcKeys = {"lengths", "max_degree", "max_tau", "delays", "input_low", "input_high"};
const std::set<std::string> kGridKeys = {"T", "params"};
const std::set<std::string> kGridParams = {"alpha_in", "alpha_rec", "beta_rec", "alpha_i", "t_c",
                                           "delay", "decay", "clusters"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "' in " + where + ": " + e.what());
    }
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError("'" + key + "' in " + where + " must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

// Applies every variant key present in obj.
void apply_variant_keys(const json& obj, const std::string& where, VariantSpec& v, std::optional<Wiring>& wiring) {
    reject_unknown(obj, [&] {
        auto keys = kVariantKeys;
        if (where != "defaults") keys.insert("name");
        return keys;
    }(), where);
    if (obj.contains("name")) v.name = get<std::string>(obj, "name", where);
    if (obj.contains("model")) {
        try {
            v.model = model_from_string(get<std::string>(obj, "model", where));
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
    if (obj.contains("n_in")) v.reservoir.n_in = get_count(obj, "n_in", where);
    if (obj.contains("n_rec")) v.reservoir.n_rec = get_count(obj, "n_rec", where);
    if (obj.contains("alpha_in")) v.reservoir.alpha_in = get<double>(obj, "alpha_in", where);
    if (obj.contains("alpha_rec")) v.reservoir.alpha_rec = get<double>(obj, "alpha_rec", where);
    if (obj.contains("beta_rec")) v.reservoir.beta_rec = get<double>(obj, "beta_rec", where);
    if (obj.contains("alpha_i")) v.reservoir.alpha_i = get<double>(obj, "alpha_i", where);
    if (obj.contains("t_c")) v.reservoir.t_c = get<double>(obj, "t_c", where);
    if (obj.contains("delay")) v.augment.d = get_count(obj, "delay", where);
    if (obj.contains("decay")) v.augment.a = get<double>(obj, "decay", where);
    if (obj.contains("pass_through")) v.augment.pass_through = get<bool>(obj, "pass_through", where);
    if (obj.contains("clusters")) v.augment.m = get_count(obj, "clusters", where);
    if (obj.contains("washout")) v.washout = get_count(obj, "washout", where);
    if (obj.contains("wiring")) {
        try {
            wiring = wiring_from_string(get<std::string>(obj, "wiring", where));
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
}

void apply_overrides(VariantSpec& v, const Overrides& o) {
    if (o.model) {
        try {
            v.model = model_from_string(*o.model);
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
    if (o.delay) v.augment.d = *o.delay;
    if (o.decay) v.augment.a = *o.decay;
    if (o.pass_through) v.augment.pass_through = true;
    if (o.clusters) v.augment.m = *o.clusters;
}

} // namespace

void ExperimentSpec::validate() const {
    if (variants.empty()) throw ConfigError("no variants to run");
    if (seeds.empty()) throw ConfigError("seed list is empty");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (steps_per_cycle < 2 || steps_per_cycle % 2 != 0) throw ConfigError("steps_per_cycle must be even and >= 2");
    if (n_train < 2 || n_test < 2) throw ConfigError("train and test lengths must be >= 2");
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    std::set<std::string> names;
    for (const auto& v : variants) {
        if (!names.insert(v.name).second) throw ConfigError("duplicate variant name '" + v.name + "'");
        try {
            v.reservoir.validate();
            v.augment.validate(v.reservoir.n_in, v.reservoir.n_rec);
        } catch (const Error& e) {
            throw ConfigError("variant '" + v.name + "': " + e.what());
        }
    }
    if (kind == ExperimentKind::ipc) {
        std::set<std::size_t> distinct(ipc.lengths.begin(), ipc.lengths.end());
        if (distinct.size() < 3) throw ConfigError("ipc.lengths needs at least 3 distinct values");
        if (*distinct.begin() < 4) throw ConfigError("ipc.lengths must be >= 4");
        if (ipc.max_degree < 1 || ipc.max_degree > 6) throw ConfigError("ipc.max_degree must lie in 1..6");
        if (ipc.delays.empty()) throw ConfigError("ipc.delays is empty");
        for (std::size_t d : ipc.delays) {
            if (d < 1) throw ConfigError("ipc.delays entries must be >= 1");
        }
        if (ipc.input_low && ipc.input_high && !(*ipc.input_high > *ipc.input_low)) {
            throw ConfigError("ipc.input_low must be below ipc.input_high");
        }
    }
    if (kind == ExperimentKind::grid) {
        if (grid.params.empty()) throw ConfigError("grid.params is empty");
        for (const auto& [key, values] : grid.params) {
            if (!kGridParams.count(key)) throw ConfigError("parameter '" + key + "' cannot be gridded");
            if (values.empty()) throw ConfigError("grid.params." + key + " is empty");
        }
    }
}

ExperimentSpec parse_spec(const std::string& json_text, ExperimentKind kind, const Overrides& overrides) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, kTopKeys, "config");

    ExperimentSpec spec;
    spec.kind = kind;

    VariantSpec base;
    std::optional<Wiring> base_wiring;
    if (root.contains("defaults")) apply_variant_keys(root.at("defaults"), "defaults", base, base_wiring);

    auto finish = [&](VariantSpec v, std::optional<Wiring> wiring) {
        apply_overrides(v, overrides);
        // Delay with clustering splits the delay taps between clusters unless told otherwise.
        v.augment.wiring = wiring.value_or(v.augment.delay_active() && v.augment.clustered() ? Wiring::tap_partitioned
                                                                                             : Wiring::full);
        if (v.name.empty()) v.name = default_variant_name(v.model, v.augment);
        spec.variants.push_back(std::move(v));
    };
    if (root.contains("variants")) {
        const json& list = root.at("variants");
        if (!list.is_array() || list.empty()) throw ConfigError("'variants' must be a non-empty array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            VariantSpec v = base;
            std::optional<Wiring> wiring = base_wiring;
            apply_variant_keys(list[i], "variants[" + std::to_string(i) + "]", v, wiring);
            finish(std::move(v), wiring);
        }
    } else {
        finish(base, base_wiring);
    }

    if (root.contains("seeds")) spec.seeds = get<std::vector<std::uint64_t>>(root, "seeds", "config");
    if (root.contains("t_max")) spec.t_max = get_count(root, "t_max", "config");
    if (root.contains("train")) spec.n_train = get_count(root, "train", "config");
    if (root.contains("test")) spec.n_test = get_count(root, "test", "config");
    if (root.contains("lambda")) spec.lambda = get<double>(root, "lambda", "config");
    if (root.contains("threads")) spec.threads = get_count(root, "threads", "config");
    if (root.contains("steps_per_cycle")) spec.steps_per_cycle = get_count(root, "steps_per_cycle", "config");
    if (root.contains("out")) spec.out_dir = get<std::string>(root, "out", "config");
    if (root.contains("ipc")) {
        const json& ipc = root.at("ipc");
        reject_unknown(ipc, kIpcKeys, "ipc");
        if (ipc.contains("lengths")) spec.ipc.lengths = get<std::vector<std::size_t>>(ipc, "lengths", "ipc");
        if (ipc.contains("max_degree")) spec.ipc.max_degree = get<int>(ipc, "max_degree", "ipc");
        if (ipc.contains("max_tau")) spec.ipc.max_tau = get_count(ipc, "max_tau", "ipc");
        if (ipc.contains("delays")) spec.ipc.delays = get<std::vector<std::size_t>>(ipc, "delays", "ipc");
        if (ipc.contains("input_low")) spec.ipc.input_low = get<double>(ipc, "input_low", "ipc");
        if (ipc.contains("input_high")) spec.ipc.input_high = get<double>(ipc, "input_high", "ipc");
    }
    if (root.contains("grid")) {
        const json& grid = root.at("grid");
        reject_unknown(grid, kGridKeys, "grid");
        if (grid.contains("T")) spec.grid.t = get_count(grid, "T", "grid");
        if (grid.contains("params")) {
            const json& params = grid.at("params");
            if (!params.is_object()) throw ConfigError("grid.params must be an object");
            for (const auto& [key, values] : params.items()) {
                spec.grid.params[key] = get<std::vector<double>>(params, key, "grid.params");
            }
        }
    }

    if (overrides.seeds) spec.seeds = *overrides.seeds;
    if (overrides.out_dir) spec.out_dir = *overrides.out_dir;
    if (overrides.lambda) spec.lambda = *overrides.lambda;
    if (overrides.n_train) spec.n_train = *overrides.n_train;
    if (overrides.n_test) spec.n_test = *overrides.n_test;
    if (overrides.threads) spec.threads = *overrides.threads;

    spec.validate();
    return spec;
}

ExperimentSpec load_spec(const std::string& path, ExperimentKind kind, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_spec(buffer.str(), kind, overrides);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw ConfigError("bad seed '" + item + "' in seed list");
        }
        seeds.push_back(std::stoull(item));
    }
    if (seeds.empty()) throw ConfigError("empty seed list");
    return seeds;
}

} // namespace rc::bench
