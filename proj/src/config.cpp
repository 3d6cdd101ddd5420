#include "textspot/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "textspot/tensor_io.hpp"

namespace textspot {

using nlohmann::json;

void RunConfig::validate() const {
    spot.validate();
    if (loss.alpha < 0.0) throw ConfigError("alpha must be >= 0");
    if (match.reject_threshold < 0.0) throw ConfigError("reject threshold must be >= 0");
}

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");

    static const std::set<std::string> known = {
        "box_threshold", "min_area",       "expand_short",   "expand_long",
        "spot_threshold", "char_threshold", "size_threshold", "confidence_threshold",
        "stride",         "long_side",      "alpha",          "reject_threshold"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw ConfigError("unknown config key: " + key);
        (void)value;
    }

    RunConfig cfg;
    auto get_d = [&](const char* key, double& out) {
        if (j.contains(key)) {
            if (!j[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
            out = j[key].get<double>();
        }
    };
    auto get_i = [&](const char* key, int& out) {
        if (j.contains(key)) {
            if (!j[key].is_number_integer()) {
                throw ConfigError(std::string(key) + " must be an integer");
            }
            out = j[key].get<int>();
        }
    };

    get_d("box_threshold", cfg.spot.box.box_threshold);
    get_i("min_area", cfg.spot.box.min_area);
    get_d("expand_short", cfg.spot.box.expand_short);
    get_d("expand_long", cfg.spot.box.expand_long);
    get_d("spot_threshold", cfg.spot.spot.spot_threshold);
    get_d("char_threshold", cfg.spot.spot.char_threshold);
    get_d("size_threshold", cfg.spot.spot.size_threshold);
    get_d("confidence_threshold", cfg.spot.confidence_threshold);
    get_i("stride", cfg.spot.stride);
    get_i("long_side", cfg.spot.long_side);
    get_d("alpha", cfg.loss.alpha);
    get_d("reject_threshold", cfg.match.reject_threshold);

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

}  // namespace textspot
