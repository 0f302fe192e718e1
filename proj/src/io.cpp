#include "lorext/io.hpp"

#include <cstdio>
#include <fstream>

namespace lorext {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) throw InputError(where + ": unknown key '" + key + "'");
    }
}

SpacePtr space_from_json(const json& j) {
    if (j.contains("interval_grid")) {
        require_keys(j, {"interval_grid"}, "space");
        return interval_grid(j.at("interval_grid").get<int>());
    }
    require_keys(j, {"points", "dist", "mass", "kappa"}, "space");
    std::vector<std::string> labels;
    if (j.contains("points")) {
        for (const auto& p : j.at("points")) {
            labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
        }
    }
    auto dist = j.at("dist").get<std::vector<double>>();
    auto mass = j.at("mass").get<std::vector<double>>();
    std::optional<double> kappa;
    if (j.contains("kappa")) kappa = j.at("kappa").get<double>();
    return Space::make(std::move(dist), std::move(mass), kappa, std::move(labels));
}

json space_to_json(const Space& space) {
    if (space.is_interval_grid()) return json{{"interval_grid", space.interval_n()}};
    json j;
    j["points"] = space.labels();
    j["dist"] = space.dist_matrix();
    j["mass"] = space.masses();
    j["kappa"] = space.kappa();
    return j;
}

Sample sample_from_json(const json& j, SpacePtr space) {
    if (!j.is_array()) throw InputError("sample: expected a JSON array");
    return Sample(std::move(space), j.get<std::vector<double>>());
}

Weight weight_from_json(const json& j, SpacePtr space) {
    if (!j.is_array()) throw InputError("weight: expected a JSON array");
    return Weight(std::move(space), j.get<std::vector<double>>());
}

json values_to_json(const std::vector<double>& values) { return json(values); }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace lorext
