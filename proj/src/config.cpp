#include "edisim/config.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "edisim/errors.hpp"

namespace edisim {

using nlohmann::json;

PipelineConfig profile(const std::string& name) {
    PipelineConfig config;
    if (name == "newsela") {
        // uniform exponents, one threshold for every operation
        config.scoring.alpha = 1.0;
        config.scoring.beta = 1.0;
        config.scoring.gamma = 1.0;
        config.scoring.delta = 1.0;
        config.search.thresholds = OpThresholds{1.25, 1.25, 1.25, 1.25};
        return config;
    }
    if (name == "wikilarge") {
        config.scoring.alpha = 0.5;
        config.scoring.beta = 1.0;
        config.scoring.gamma = 0.25;
        config.scoring.delta = 1.0;
        config.search.thresholds.removal = 1.25;
        config.search.thresholds.reordering = 1.25;
        config.search.thresholds.substitution = 0.8;
        config.search.thresholds.extraction = 5.0;
        return config;
    }
    throw ConfigError("unknown profile '" + name + "' (expected newsela or wikilarge)");
}

namespace {

double parse_real(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError(key + ": not a boolean: '" + value + "'");
}

double parse_nonneg(const std::string& key, const std::string& value) {
    double v = parse_real(key, value);
    if (!(v >= 0.0)) throw ConfigError(key + " must be nonnegative, got " + value);
    return v;
}

double parse_positive(const std::string& key, const std::string& value) {
    double v = parse_real(key, value);
    if (!(v > 0.0)) throw ConfigError(key + " must be positive, got " + value);
    return v;
}

std::string trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

std::array<double, 3> parse_lm_weights(const std::string& value) {
    std::vector<double> parts;
    std::string cur;
    for (char c : value + ",") {
        if (c != ',') {
            cur += c;
            continue;
        }
        cur = trim(cur);
        if (!cur.empty()) parts.push_back(parse_real("lm_weights", cur));
        cur.clear();
    }
    if (parts.size() != 3)
        throw ConfigError("lm_weights needs exactly three comma-separated values, got '" + value +
                          "'");
    double sum = parts[0] + parts[1] + parts[2];
    if (parts[0] < 0.0 || parts[1] < 0.0 || parts[2] < 0.0)
        throw ConfigError("lm_weights must be nonnegative, got '" + value + "'");
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("lm_weights must sum to 1, got '" + value + "'");
    if (!(parts[2] > 0.0))
        throw ConfigError("lm_weights needs a positive uniform-stage weight, got '" + value + "'");
    return {parts[0], parts[1], parts[2]};
}

void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value) {
    if (key == "alpha") {
        config.scoring.alpha = parse_nonneg(key, value);
    } else if (key == "beta") {
        config.scoring.beta = parse_nonneg(key, value);
    } else if (key == "gamma") {
        config.scoring.gamma = parse_nonneg(key, value);
    } else if (key == "delta") {
        config.scoring.delta = parse_nonneg(key, value);
    } else if (key == "tau") {
        double v = parse_real(key, value);
        if (v < -1.0 || v > 1.0) throw ConfigError("tau must be in [-1, 1], got " + value);
        config.scoring.tau = v;
    } else if (key == "min_length") {
        int v = parse_int(key, value);
        if (v < 1) throw ConfigError("min_length must be >= 1, got " + value);
        config.scoring.min_length = v;
    } else if (key == "entity_offset") {
        int v = parse_int(key, value);
        if (v < 0) throw ConfigError("entity_offset must be >= 0, got " + value);
        config.scoring.entity_offset = v;
    } else if (key == "r_removal") {
        config.search.thresholds.removal = parse_positive(key, value);
    } else if (key == "r_extraction") {
        config.search.thresholds.extraction = parse_positive(key, value);
    } else if (key == "r_reordering") {
        config.search.thresholds.reordering = parse_positive(key, value);
    } else if (key == "r_substitution") {
        config.search.thresholds.substitution = parse_positive(key, value);
    } else if (key == "r_all") {
        double v = parse_positive(key, value);
        config.search.thresholds = OpThresholds{v, v, v, v};
    } else if (key == "max_iterations") {
        int v = parse_int(key, value);
        if (v < 1) throw ConfigError("max_iterations must be >= 1, got " + value);
        config.search.max_iterations = v;
    } else if (key == "revisit_guard") {
        config.search.revisit_guard = parse_bool(key, value);
    } else if (key == "k_neighbors") {
        int v = parse_int(key, value);
        if (v < 0) throw ConfigError("k_neighbors must be >= 0, got " + value);
        config.edits.substitution.k_neighbors = v;
    } else if (key == "sub_similarity_threshold") {
        double v = parse_real(key, value);
        if (v < -1.0 || v > 1.0)
            throw ConfigError("sub_similarity_threshold must be in [-1, 1], got " + value);
        config.edits.substitution.similarity_threshold = v;
    } else if (key == "phrase_tags") {
        std::set<std::string> tags;
        std::string cur;
        for (char c : value + ",") {
            if (c == ',') {
                std::string tag = trim(cur);
                if (!tag.empty()) tags.insert(tag);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (tags.empty()) throw ConfigError("phrase_tags must name at least one tag");
        config.edits.phrase_tags = std::move(tags);
    } else if (key == "reorder_scope") {
        if (value == "siblings") {
            config.edits.reorder_scope = ReorderScope::siblings;
        } else if (value == "all") {
            config.edits.reorder_scope = ReorderScope::all;
        } else {
            throw ConfigError("reorder_scope must be siblings or all, got '" + value + "'");
        }
    } else if (key == "lm_order") {
        int v = parse_int(key, value);
        if (v < 2 || v > 5) throw ConfigError("lm_order must be in [2, 5], got " + value);
        config.lm_order = v;
    } else if (key == "lm_weights") {
        config.lm_weights = parse_lm_weights(value);
    } else if (key == "sari_delete") {
        if (value == "f1") {
            config.sari_delete = SariDeleteMode::f1;
        } else if (value == "precision") {
            config.sari_delete = SariDeleteMode::precision;
        } else {
            throw ConfigError("sari_delete must be f1 or precision, got '" + value + "'");
        }
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void apply_config_file(PipelineConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        try {
            apply_setting(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::string config_json(const PipelineConfig& config) {
    std::string tags;
    for (const std::string& tag : config.edits.tags()) {
        if (!tags.empty()) tags += ',';
        tags += tag;
    }
    std::set<std::string> ops;
    for (EditKind kind : config.search.enabled_ops) ops.insert(edit_kind_name(kind));
    json j{{"alpha", config.scoring.alpha},
           {"beta", config.scoring.beta},
           {"gamma", config.scoring.gamma},
           {"delta", config.scoring.delta},
           {"tau", config.scoring.tau},
           {"min_length", config.scoring.min_length},
           {"entity_offset", config.scoring.entity_offset},
           {"r_removal", config.search.thresholds.removal},
           {"r_extraction", config.search.thresholds.extraction},
           {"r_reordering", config.search.thresholds.reordering},
           {"r_substitution", config.search.thresholds.substitution},
           {"max_iterations", config.search.max_iterations},
           {"revisit_guard", config.search.revisit_guard},
           {"enabled_ops", ops},
           {"k_neighbors", config.edits.substitution.k_neighbors},
           {"sub_similarity_threshold", config.edits.substitution.similarity_threshold},
           {"phrase_tags", tags},
           {"reorder_scope", config.edits.reorder_scope == ReorderScope::all ? "all" : "siblings"},
           {"lm_order", config.lm_order},
           {"lm_weights", config.lm_weights},
           {"sari_delete", config.sari_delete == SariDeleteMode::precision ? "precision" : "f1"}};
    return j.dump();
}

} // namespace edisim
