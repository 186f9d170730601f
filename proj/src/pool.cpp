#include <fstream>

#include <json.hpp>

#include "lebesgue/widthcurves.hpp"

namespace lebesgue::widthcurves {

using nlohmann::json;

std::vector<ConstantWidthShape> load_pool(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pool file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw std::runtime_error("pool file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw std::runtime_error("pool file must hold a JSON array");
    std::vector<ConstantWidthShape> pool;
    for (const auto &entry : doc) {
        const int n = entry.at("n").get<int>();
        const std::string label = entry.value("label", std::string{});
        if (n == 0) {
            auto c = circle();
            if (!label.empty()) c.label = label;
            pool.push_back(std::move(c));
            continue;
        }
        ReuleauxSpec spec{n, {}};
        for (double d : entry.value("freeAnglesDegrees", std::vector<double>{})) spec.freeAngles.push_back(geom::deg2rad(d));
        auto s = build_reuleaux(spec);
        s.label = label.empty() ? "reuleaux-" + std::to_string(n) : label;
        pool.push_back(std::move(s));
    }
    if (pool.empty()) throw std::runtime_error("pool file " + path + " holds no shapes");
    return pool;
}

void save_pool(const std::vector<ConstantWidthShape> &pool, const std::string &path) {
    json doc = json::array();
    for (const auto &s : pool) {
        json e;
        if (s.kind == ConstantWidthShape::Kind::circle) {
            e["n"] = 0;
        } else {
            if (!s.spec) throw std::runtime_error("shape '" + s.label + "' has no angle spec and cannot be saved");
            e["n"] = s.spec->n;
            std::vector<double> deg;
            for (double a : s.spec->freeAngles) deg.push_back(geom::rad2deg(a));
            e["freeAnglesDegrees"] = deg;
        }
        e["label"] = s.label;
        doc.push_back(e);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pool file " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace lebesgue::widthcurves
