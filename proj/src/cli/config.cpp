#include "lrv/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lrv::cli {

namespace pt = boost::property_tree;
using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    return std::string(s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1));
}

std::vector<std::string> tokens(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = std::min(s.find(sep, start), s.size());
        if (std::string t = trim(s.substr(start, end - start)); !t.empty()) {
            out.push_back(std::move(t));
        }
        start = end + 1;
    }
    return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::runtime_error(what + ": '" + text + "' is not a valid number");
    }
    return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "yes" || text == "1") {
        return true;
    }
    if (text == "false" || text == "no" || text == "0") {
        return false;
    }
    throw std::runtime_error(what + ": expected true/false, got '" + text + "'");
}

ArmaSpec parse_spec(const std::string& text) {
    const std::vector<std::string> parts = tokens(text, ':');
    if (parts.size() < 2 || parts.size() > 3) {
        throw std::runtime_error("spec '" + text + "' must look like ar:ma or ar:ma:sd");
    }
    const double ar = parse_number<double>(parts[0], "spec ar");
    const double ma = parse_number<double>(parts[1], "spec ma");
    const double sd = parts.size() == 3 ? parse_number<double>(parts[2], "spec sd") : 1.0;
    try {
        return ArmaSpec(ar, ma, sd);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("spec '" + text + "': " + e.what());
    }
}

EstimatorId estimator_named(const std::string& name) {
    const auto id = parse_estimator(name);
    if (!id) {
        throw std::runtime_error("unknown estimator '" + name + "'");
    }
    return *id;
}

SmoothingParam param_named(const std::string& text) {
    const auto p = parse_smoothing_param(text);
    if (!p) {
        throw std::runtime_error("invalid smoothing parameter '" + text + "'");
    }
    return *p;
}

Target target_named(const std::string& name) {
    const auto t = parse_target(name);
    if (!t) {
        throw std::runtime_error("unknown target '" + name + "' (use sigma_sq or sigma_F_sq)");
    }
    return *t;
}

void validated(const ExperimentConfig& cfg) {
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
}

}  // namespace

std::vector<ExperimentConfig> parse_ini_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    std::vector<ExperimentConfig> out;
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            throw std::runtime_error("config: key '" + section + "' is outside any [experiment] section");
        }
        ExperimentConfig cfg;
        cfg.name = section;
        cfg.grid.clear();
        const std::string where = "[" + section + "] ";
        for (const auto& [key, node] : body) {
            const std::string value = trim(node.data());
            if (key == "specs") {
                cfg.specs.clear();
                for (const std::string& s : tokens(value, ',')) {
                    cfg.specs.push_back(parse_spec(s));
                }
            } else if (key == "n") {
                cfg.n = parse_number<std::size_t>(value, where + key);
            } else if (key == "replications") {
                cfg.replications = parse_number<std::size_t>(value, where + key);
            } else if (key == "burn_in") {
                cfg.burn_in = parse_number<std::size_t>(value, where + key);
            } else if (key == "seed") {
                cfg.master_seed = parse_number<std::uint64_t>(value, where + key);
            } else if (key == "overlap_power") {
                cfg.overlap_power = parse_number<double>(value, where + key);
            } else if (key == "target") {
                cfg.target = target_named(value);
            } else if (key == "split_half") {
                cfg.split_half = parse_bool(value, where + key);
            } else if (key == "square_scale_estimators") {
                cfg.square_scale_estimators = parse_bool(value, where + key);
            } else if (key.starts_with("grid.")) {
                const EstimatorId id = estimator_named(key.substr(5));
                for (const std::string& p : tokens(value, ' ')) {
                    cfg.grid.push_back({id, param_named(p)});
                }
            } else {
                throw std::runtime_error("config: " + where + "unknown key '" + key + "'");
            }
        }
        validated(cfg);
        out.push_back(std::move(cfg));
    }
    if (out.empty()) {
        throw std::runtime_error("config defines no experiments");
    }
    return out;
}

json to_json(const ExperimentConfig& cfg) {
    json specs = json::array();
    for (const ArmaSpec& s : cfg.specs) {
        specs.push_back({{"ar", s.ar()}, {"ma", s.ma()}, {"innovation_sd", s.innovation_sd()}});
    }
    // Grid grouped per estimator, in first-appearance order.
    json grid = json::array();
    std::map<EstimatorId, std::size_t> slot;
    for (const GridEntry& e : cfg.grid) {
        auto [it, fresh] = slot.try_emplace(e.estimator, grid.size());
        if (fresh) {
            grid.push_back({{"estimator", std::string(to_string(e.estimator))}, {"params", json::array()}});
        }
        json& params = grid[it->second]["params"];
        if (e.param.is_adaptive()) {
            params.push_back("adaptive");
        } else {
            params.push_back(e.param.value());
        }
    }
    return {
        {"name", cfg.name},
        {"specs", specs},
        {"n", cfg.n},
        {"replications", cfg.replications},
        {"burn_in", cfg.burn_in},
        {"grid", grid},
        {"target", std::string(to_string(cfg.target))},
        {"split_half", cfg.split_half},
        {"square_scale_estimators", cfg.square_scale_estimators},
        {"overlap_power", cfg.overlap_power},
        {"seed", cfg.master_seed},
    };
}

ExperimentConfig experiment_from_json(const json& j) {
    ExperimentConfig cfg;
    try {
        cfg.name = j.value("name", cfg.name);
        if (j.contains("specs")) {
            cfg.specs.clear();
            for (const json& s : j.at("specs")) {
                cfg.specs.emplace_back(s.at("ar").get<double>(), s.at("ma").get<double>(),
                                       s.value("innovation_sd", 1.0));
            }
        }
        cfg.n = j.value("n", cfg.n);
        cfg.replications = j.value("replications", cfg.replications);
        cfg.burn_in = j.value("burn_in", cfg.burn_in);
        cfg.master_seed = j.value("seed", cfg.master_seed);
        cfg.overlap_power = j.value("overlap_power", cfg.overlap_power);
        cfg.split_half = j.value("split_half", cfg.split_half);
        cfg.square_scale_estimators = j.value("square_scale_estimators", cfg.square_scale_estimators);
        if (j.contains("target")) {
            cfg.target = target_named(j.at("target").get<std::string>());
        }
        for (const json& g : j.at("grid")) {
            const EstimatorId id = estimator_named(g.at("estimator").get<std::string>());
            for (const json& p : g.at("params")) {
                if (p.is_string()) {
                    cfg.grid.push_back({id, param_named(p.get<std::string>())});
                } else if (const double v = p.get<double>(); std::isfinite(v) && v > 0.0) {
                    cfg.grid.push_back({id, SmoothingParam(v)});
                } else {
                    throw std::runtime_error("config: smoothing parameters must be positive");
                }
            }
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    validated(cfg);
    return cfg;
}

std::vector<ExperimentConfig> parse_json_config(const json& doc) {
    if (!doc.contains("experiments") || !doc.at("experiments").is_array()) {
        throw std::runtime_error("config: JSON document needs an \"experiments\" array");
    }
    std::vector<ExperimentConfig> out;
    for (const json& e : doc.at("experiments")) {
        out.push_back(experiment_from_json(e));
    }
    if (out.empty()) {
        throw std::runtime_error("config defines no experiments");
    }
    return out;
}

std::vector<ExperimentConfig> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.ends_with(".json")) {
        try {
            return parse_json_config(json::parse(buf.str()));
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path + ": " + e.what());
        }
    }
    return parse_ini_config(buf.str());
}

std::string default_config_text() {
    return R"(# Sigma^2 study: non-overlapping block estimators and the Bartlett-kernel HAC estimator.
[part1]
specs = 0.5:0, 0.1:0, -0.1:0, -0.8:0, 0:0.8, 0:0.1, 0:-0.8, 0:-0.1, 0.5:0.5, -0.5:-0.5, 0:0
n = 500
replications = 1000
burn_in = 1000
seed = 20120601
target = sigma_sq
split_half = false
square_scale_estimators = true
grid.bhat = 1 2 5 10 30 50 100 adaptive
grid.carlstein = 1 2 5 10 30 50 100 adaptive
grid.jde = 2.8 3.5 4.7 7.9 22.4

# Sigma_F^2 study: rank-based estimators, averaged over the two halves of each sample.
[part2]
specs = 0.5:0, 0.1:0, -0.1:0, -0.8:0, 0:0.8, 0:0.1, 0:-0.8, 0:-0.1, 0.5:0.5, -0.5:-0.5, 0:0
n = 500
replications = 1000
burn_in = 1000
seed = 20120601
target = sigma_F_sq
split_half = true
square_scale_estimators = true
grid.dhat = 2 5 10 25 40 50 adaptive
grid.pse = 5 10 25 40 45 adaptive
)";
}

}  // namespace lrv::cli
