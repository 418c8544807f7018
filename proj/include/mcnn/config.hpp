#pragma once

#include "mcnn/templates.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mcnn {

struct Config {
    std::string name;
    NetworkTemplate network;
    // ordered (source, target) layer pairs; empty = default selection
    std::vector<std::pair<int, int>> pairs;
};

// Accepts {d, feedback, control, threshold} or the shorthand {a, a_r, z} / {a, a_r, b, b_r, z}.
LayerTemplate parse_layer(const nlohmann::json& j);
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);

nlohmann::ordered_json layer_to_json(const LayerTemplate& t);

}  // namespace mcnn
