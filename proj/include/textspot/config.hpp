#pragma once

#include <string>

#include "textspot/lexicon.hpp"
#include "textspot/losses.hpp"
#include "textspot/pipeline.hpp"

namespace textspot {

// Settings merged from a config file and command-line flags; flags win.
struct RunConfig {
    SpotConfig spot;
    LossConfig loss;
    MatchConfig match;

    void validate() const;
};

// Strict loader: unknown keys and out-of-range values are startup errors.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);

}  // namespace textspot
