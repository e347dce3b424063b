#include "dkde/synthgen.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dkde/rng.hpp"

namespace dkde {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const GeneratorConfig& cfg) {
    ordered_json j;
    j["format"] = "dkde-dataset";
    j["version"] = 1;
    j["seed"] = cfg.seed;
    j["num_batches"] = cfg.num_batches;
    j["mu0"] = cfg.mu0;
    j["gamma0"] = cfg.gamma0;
    j["mu_step"] = cfg.mu_step;
    j["gamma_step"] = cfg.gamma_step;
    j["n_min"] = cfg.n_min;
    j["n_max"] = cfg.n_max;
    j["start_at_origin"] = cfg.start_at_origin;
    return j;
}

const ordered_json& require_field(const ordered_json& j, const char* name, int line) {
    const auto it = j.find(name);
    if (it == j.end()) {
        throw std::runtime_error("line " + std::to_string(line) + ": missing field \"" + name +
                                 "\"");
    }
    return *it;
}

}  // namespace

void GeneratorConfig::validate() const {
    if (num_batches < 1) {
        throw std::domain_error("GeneratorConfig: num_batches must be >= 1");
    }
    if (!(gamma0 > 0.0)) {
        throw std::domain_error("GeneratorConfig: gamma0 must be > 0");
    }
    if (!(mu_step > 0.0) || !(gamma_step > 0.0)) {
        throw std::domain_error("GeneratorConfig: step widths must be > 0");
    }
    if (n_min < 1 || n_max < n_min) {
        throw std::domain_error("GeneratorConfig: need 1 <= n_min <= n_max");
    }
}

Dataset generate(const GeneratorConfig& cfg) {
    cfg.validate();
    SplitRng mu_walk(cfg.seed, 0);
    SplitRng gamma_walk(cfg.seed, 1);
    SplitRng sizes(cfg.seed, 2);
    SplitRng samples(cfg.seed, 3);

    Dataset d{cfg, {}};
    d.batches.reserve(cfg.num_batches);

    double mu = cfg.mu0;
    double gamma = cfg.gamma0;
    for (int t = 1; t <= cfg.num_batches; ++t) {
        if (!(t == 1 && cfg.start_at_origin)) {
            mu += mu_walk.next_symmetric(cfg.mu_step);
            gamma = std::max(gamma + gamma_walk.next_symmetric(cfg.gamma_step), cfg.gamma0);
        }
        const int n = sizes.next_int(cfg.n_min, cfg.n_max);
        std::vector<double> values(n);
        for (double& v : values) {
            v = mu + gamma * samples.next_normal();
        }
        d.batches.emplace_back(t, std::move(values), GaussianParams(mu, gamma));
    }
    return d;
}

void save_dataset(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("save_dataset: cannot open " + path.string());
    }
    out << config_to_json(d.config).dump() << '\n';
    for (const auto& b : d.batches) {
        ordered_json j;
        j["t"] = b.t;
        j["true_mu"] = b.true_params ? b.true_params->mu : 0.0;
        j["true_gamma"] = b.true_params ? b.true_params->sigma : 0.0;
        j["values"] = b.values;
        out << j.dump() << '\n';
    }
    if (!out) {
        throw std::runtime_error("save_dataset: write failed for " + path.string());
    }
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("load_dataset: cannot open " + path.string());
    }
    std::string line;
    int line_no = 0;

    auto parse_line = [&](const std::string& text) {
        try {
            return ordered_json::parse(text);
        } catch (const ordered_json::parse_error& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    };

    if (!std::getline(in, line)) {
        throw std::runtime_error("load_dataset: empty file " + path.string());
    }
    ++line_no;
    const ordered_json header = parse_line(line);
    if (require_field(header, "format", line_no).get<std::string>() != "dkde-dataset") {
        throw std::runtime_error("line 1: not a dkde-dataset file");
    }
    if (require_field(header, "version", line_no).get<int>() != 1) {
        throw std::runtime_error("line 1: unsupported dataset version");
    }

    GeneratorConfig cfg;
    cfg.seed = require_field(header, "seed", line_no).get<std::uint64_t>();
    cfg.num_batches = require_field(header, "num_batches", line_no).get<int>();
    cfg.mu0 = require_field(header, "mu0", line_no).get<double>();
    cfg.gamma0 = require_field(header, "gamma0", line_no).get<double>();
    cfg.mu_step = require_field(header, "mu_step", line_no).get<double>();
    cfg.gamma_step = require_field(header, "gamma_step", line_no).get<double>();
    cfg.n_min = require_field(header, "n_min", line_no).get<int>();
    cfg.n_max = require_field(header, "n_max", line_no).get<int>();
    cfg.start_at_origin = require_field(header, "start_at_origin", line_no).get<bool>();

    Dataset d{cfg, {}};
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const ordered_json j = parse_line(line);
        const auto t = require_field(j, "t", line_no).get<std::int64_t>();
        const auto mu = require_field(j, "true_mu", line_no).get<double>();
        const auto gamma = require_field(j, "true_gamma", line_no).get<double>();
        auto values = require_field(j, "values", line_no).get<std::vector<double>>();
        try {
            d.batches.emplace_back(t, std::move(values), GaussianParams(mu, gamma));
        } catch (const std::domain_error& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return d;
}

}  // namespace dkde
