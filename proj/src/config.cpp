#include "mcnn/config.hpp"
#include "mcnn/error.hpp"

#include <fstream>

namespace mcnn {

namespace {

double number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return 0.0;
    if (!j[key].is_number()) throw Error(ErrorKind::Config, std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::vector<double> numbers(const nlohmann::json& j, const char* key, std::size_t n) {
    if (!j.contains(key)) return std::vector<double>(n, 0.0);
    const auto& a = j[key];
    if (!a.is_array()) throw Error(ErrorKind::Config, std::string("field '") + key + "' must be an array");
    std::vector<double> v;
    for (const auto& x : a) {
        if (!x.is_number()) throw Error(ErrorKind::Config, std::string("field '") + key + "' holds a non-number");
        v.push_back(x.get<double>());
    }
    if (v.size() != n)
        throw Error(ErrorKind::Config, std::string("field '") + key + "' needs " + std::to_string(n) + " entries");
    return v;
}

}  // namespace

LayerTemplate parse_layer(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Config, "layer must be an object");
    LayerTemplate t;
    if (j.contains("feedback")) {
        t.d = j.contains("d") ? j["d"].get<int>() : 1;
        if (t.d < 1) throw Error(ErrorKind::Config, "d must be positive");
        const auto n = static_cast<std::size_t>(2 * t.d + 1);
        t.feedback = numbers(j, "feedback", n);
        t.control = numbers(j, "control", n);
        t.threshold = number(j, "threshold");
    } else if (j.contains("a")) {
        for (const char* k : {"a_l", "b_l"})
            if (j.contains(k)) throw Error(ErrorKind::Config, "shorthand has no left neighbour");
        t = LayerTemplate::smcnn(number(j, "a"), number(j, "a_r"), number(j, "b"), number(j, "b_r"),
                                 number(j, "z"));
    } else {
        throw Error(ErrorKind::Config, "layer needs 'feedback' or shorthand 'a'");
    }
    t.validate();
    return t;
}

Config parse_config(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("layers") || !j["layers"].is_array())
        throw Error(ErrorKind::Config, "config needs a 'layers' array");
    Config c;
    if (j.contains("name")) c.name = j["name"].get<std::string>();
    for (const auto& l : j["layers"]) c.network.layers.push_back(parse_layer(l));
    if (j.contains("boundary")) {
        const auto b = j["boundary"].get<std::string>();
        if (b == "reject") c.network.boundary = BoundaryPolicy::Reject;
        else if (b == "include") c.network.boundary = BoundaryPolicy::Include;
        else throw Error(ErrorKind::Config, "boundary must be 'reject' or 'include'");
    }
    if (j.contains("pairs")) {
        for (const auto& p : j["pairs"]) {
            if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::Config, "pairs are [source, target]");
            c.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
        }
    }
    c.network.validate();
    for (auto [i, k] : c.pairs)
        if (i < 1 || k < 1 || i > c.network.size() || k > c.network.size() || i == k)
            throw Error(ErrorKind::Config, "pair refers to an unknown layer");
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
    }
    try {
        return parse_config(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Config, std::string("bad config field: ") + e.what());
    }
}

nlohmann::ordered_json layer_to_json(const LayerTemplate& t) {
    nlohmann::ordered_json j;
    j["d"] = t.d;
    j["feedback"] = t.feedback;
    j["control"] = t.control;
    j["threshold"] = t.threshold;
    return j;
}

}  // namespace mcnn
