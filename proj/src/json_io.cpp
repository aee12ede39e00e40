#include "moco/json_io.hpp"

#include <json.hpp>

namespace moco {

using nlohmann::json;

std::string front_json(const ParetoResult& result, const MocoInstance& inst) {
    json j;
    j["status"] = to_string(result.status);
    j["objectives"] = inst.objectives.size();
    json offsets = json::array();
    for (const auto& f : inst.objectives) offsets.push_back(f.offset);
    j["offsets"] = std::move(offsets);

    json img = json::array();
    for (const ObjectiveVector& y : result.img_front) {
        json row = json::array();
        for (size_t i = 0; i < y.size(); ++i)
            row.push_back(y[i] + inst.objectives[i].offset);
        img.push_back(std::move(row));
    }
    j["img_front"] = std::move(img);

    json arg = json::array();
    for (const Assignment& x : result.arg_front) arg.push_back(to_bitstring(x));
    j["arg_front"] = std::move(arg);

    return j.dump(2) + "\n";
}

std::string stats_json(const ParetoResult& result) {
    json j;
    j["status"] = to_string(result.status);
    j["front_size"] = result.img_front.size();
    j["wall_ms"] = result.stats.wall_ms;
    j["sat_calls"] = result.stats.sat_calls;
    j["cores"] = result.stats.cores;
    j["models"] = result.stats.models;
    j["inner_loops"] = result.stats.inner_loops;
    j["relax_rounds"] = result.stats.relax_rounds;
    j["chain_steps"] = result.stats.chain_steps;
    j["rounds"] = result.stats.rounds;
    return j.dump(2) + "\n";
}

std::vector<ObjectiveVector> parse_front_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("front JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("img_front") || !j["img_front"].is_array())
        throw std::runtime_error("front JSON: missing img_front array");
    std::vector<ObjectiveVector> out;
    for (const auto& row : j["img_front"]) {
        if (!row.is_array()) throw std::runtime_error("front JSON: img_front row not an array");
        ObjectiveVector y;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw std::runtime_error("front JSON: non-integer objective value");
            y.push_back(v.get<int64_t>());
        }
        out.push_back(std::move(y));
    }
    return out;
}

}  // namespace moco
