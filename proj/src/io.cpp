#include "mmslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mmslab {

std::string g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(g12(x).c_str(), nullptr);
}

nlohmann::json space_to_json(const MetricMeasureSpace& space) {
    nlohmann::json j;
    j["label"] = space.label();
    j["mass"] = nlohmann::json::array();
    for (Index i = 0; i < space.size(); ++i) j["mass"].push_back(space.mass(i));
    if (space.uniform_step() > 0.0) j["step"] = space.uniform_step();
    if (space.has_coords()) {
        j["metric"] = "euclidean";
        auto coords = nlohmann::json::array();
        for (Index i = 0; i < space.size(); ++i) {
            auto row = nlohmann::json::array();
            for (Index k = 0; k < space.coord_dim(); ++k) row.push_back(space.coords()(i, k));
            coords.push_back(std::move(row));
        }
        j["coords"] = std::move(coords);
    } else {
        auto mat = nlohmann::json::array();
        for (Index i = 0; i < space.size(); ++i) {
            auto row = nlohmann::json::array();
            for (Index k = 0; k < space.size(); ++k) row.push_back(space.dist(i, k));
            mat.push_back(std::move(row));
        }
        j["dist_matrix"] = std::move(mat);
    }
    return j;
}

MetricMeasureSpace space_from_json(const nlohmann::json& j) {
    std::string label = j.value("label", "space");
    Vector mass;
    if (j.contains("mass")) {
        mass.resize(j["mass"].size());
        for (std::size_t i = 0; i < j["mass"].size(); ++i) mass[i] = j["mass"][i];
    }
    MetricMeasureSpace space = [&] {
        if (j.contains("coords")) {
            std::string metric = j.value("metric", "euclidean");
            if (metric != "euclidean")
                throw InputError("unsupported metric '" + metric + "' in space file");
            auto& rows = j["coords"];
            if (rows.empty()) throw InputError("space file has empty coords");
            Matrix coords(rows.size(), rows[0].size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != rows[0].size())
                    throw InputError("space file has ragged coords");
                for (std::size_t k = 0; k < rows[i].size(); ++k) coords(i, k) = rows[i][k];
            }
            return MetricMeasureSpace::from_coords(std::move(coords), std::move(mass), label);
        }
        if (j.contains("dist_matrix")) {
            auto& rows = j["dist_matrix"];
            if (rows.empty()) throw InputError("space file has empty dist_matrix");
            Matrix d(rows.size(), rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != rows.size())
                    throw InputError("space file dist_matrix is not square");
                for (std::size_t k = 0; k < rows.size(); ++k) d(i, k) = rows[i][k];
            }
            return MetricMeasureSpace::from_matrix(std::move(d), std::move(mass), label);
        }
        throw InputError("space file needs either coords or dist_matrix");
    }();
    if (j.contains("step")) space.declare_step(j["step"].get<double>());
    if (auto violation = space.validate())
        throw InputError("invalid space file: " + *violation);
    return space;
}

MetricMeasureSpace load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open space file '" + path + "'");
    nlohmann::json j;
    in >> j;
    return space_from_json(j);
}

void save_space(const MetricMeasureSpace& space, const std::string& path) {
    write_text_file(path, space_to_json(space).dump(1) + "\n");
}

ScalarField field_from_json(const nlohmann::json& j, const MetricMeasureSpace& space) {
    if (!j.contains("values")) throw InputError("function file needs a values array");
    if (static_cast<Index>(j["values"].size()) != space.size())
        throw InputError("function file length does not match the space point count");
    ScalarField f;
    f.label = j.value("label", "f");
    f.values.resize(space.size());
    for (Index i = 0; i < space.size(); ++i) {
        f.values[i] = j["values"][i];
        if (!std::isfinite(f.values[i]))
            throw InputError("function file has a non-finite value");
    }
    return f;
}

ScalarField load_field(const std::string& path, const MetricMeasureSpace& space) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open function file '" + path + "'");
    nlohmann::json j;
    in >> j;
    return field_from_json(j, space);
}

void save_field(const ScalarField& field, const std::string& path) {
    nlohmann::json j;
    j["label"] = field.label;
    j["values"] = nlohmann::json::array();
    for (Index i = 0; i < field.values.size(); ++i) j["values"].push_back(field.values[i]);
    write_text_file(path, j.dump(1) + "\n");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

ScalarField parse_field_spec(const std::string& spec, const MetricMeasureSpace& space) {
    auto pos = spec.find(':');
    std::string kind = pos == std::string::npos ? spec : spec.substr(0, pos);
    std::string arg = pos == std::string::npos ? "" : spec.substr(pos + 1);
    if (kind == "file") return load_field(arg, space);
    if (kind == "coord") return coordinate_field(space, std::stol(arg));
    if (kind == "linear") {
        auto parts = split(arg, ',');
        Vector c(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) c[i] = std::stod(parts[i]);
        return linear_field(space, c);
    }
    if (kind == "dist") return distance_field(space, std::stol(arg));
    if (kind == "const") return constant_field(space, arg.empty() ? 0.0 : std::stod(arg));
    if (kind == "rand") {
        auto parts = split(arg, ':');
        std::uint64_t seed = std::stoull(parts[0]);
        int anchors = parts.size() > 1 ? std::stoi(parts[1]) : 4;
        return random_lipschitz_field(space, seed, anchors);
    }
    if (kind == "cut") {
        double floor = space.uniform_step() > 0.0 ? space.uniform_step()
                                                  : space.min_positive_dist();
        return cut_indicator_field(space, std::stol(arg), 1.5 * floor);
    }
    throw InputError("unknown field spec '" + spec + "'");
}

GeneratorSpec generator_from_json(const nlohmann::json& j) {
    GeneratorSpec spec;
    spec.kind = j.value("kind", "");
    spec.n = j.value("n", 0);
    spec.dim = j.value("dim", 1);
    spec.alpha = j.value("alpha", 0.5);
    spec.level = j.value("level", 2);
    spec.radius = j.value("radius", 4);
    spec.seed = j.value("seed", 1);
    if (j.contains("base"))
        spec.base = std::make_shared<GeneratorSpec>(generator_from_json(j["base"]));
    if (j.contains("side_a"))
        spec.side_a = std::make_shared<GeneratorSpec>(generator_from_json(j["side_a"]));
    if (j.contains("side_b"))
        spec.side_b = std::make_shared<GeneratorSpec>(generator_from_json(j["side_b"]));
    if (j.contains("glue_pairs"))
        for (auto& p : j["glue_pairs"])
            spec.glue_pairs.emplace_back(p[0].get<Index>(), p[1].get<Index>());
    return spec;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file '" + path + "'");
    out << content;
}

}  // namespace mmslab
