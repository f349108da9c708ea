#include "tropint/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tropint {

using json = nlohmann::ordered_json;

namespace {

json vector_to_json(const ZVec& v) {
    json row = json::array();
    for (const auto& x : v) row.push_back(x.str());
    return row;
}

ZVec json_to_zvec(const json& row) {
    // rows may carry rationals; scale to a primitive integer vector
    QVec q;
    for (const auto& entry : row) q.push_back(parse_rational(entry.get<std::string>()));
    return primitive(q);
}

json cycle_to_json(const TropicalCycle& x) {
    PolyhedralComplex::IndexedForm form = x.complex.indexed_form();
    json doc;
    doc["ambient_dim"] = x.ambient_dim();
    json rays = json::array();
    for (const auto& g : form.generators) rays.push_back(vector_to_json(g));
    json lineality = json::array();
    for (const auto& l : form.lineality) lineality.push_back(vector_to_json(l));
    json cells = json::array();
    for (const auto& c : form.cells) cells.push_back(c);
    json weights = json::array();
    for (const auto& w : x.weights) weights.push_back(w.str());
    doc["rays"] = std::move(rays);
    doc["lineality"] = std::move(lineality);
    doc["maximal_cells"] = std::move(cells);
    doc["weights"] = std::move(weights);
    if (x.local_cone.has_value()) {
        // reference the local cone's generators through the pool, appending
        // any that the cells do not use
        std::vector<ZVec> pool = form.generators;
        json idxs = json::array();
        for (const auto& g : x.local_cone->hom_generators()) {
            size_t found = pool.size();
            for (size_t i = 0; i < pool.size(); ++i)
                if (pool[i] == g) {
                    found = i;
                    break;
                }
            if (found == pool.size()) {
                pool.push_back(g);
                doc["rays"].push_back(vector_to_json(g));
            }
            idxs.push_back(found);
        }
        doc["local_cone"] = std::move(idxs);
    }
    return doc;
}

TropicalCycle cycle_from_json(const json& doc) {
    size_t ambient = doc.at("ambient_dim").get<size_t>();
    std::vector<ZVec> pool;
    for (const auto& row : doc.at("rays")) pool.push_back(json_to_zvec(row));
    std::vector<ZVec> lineality;
    if (doc.contains("lineality"))
        for (const auto& row : doc.at("lineality")) lineality.push_back(json_to_zvec(row));
    std::vector<std::vector<size_t>> cells;
    for (const auto& cell : doc.at("maximal_cells")) {
        std::vector<size_t> idx;
        for (const auto& i : cell) idx.push_back(i.get<size_t>());
        std::sort(idx.begin(), idx.end());
        cells.push_back(std::move(idx));
    }
    for (const auto& row : pool)
        if (row.size() != ambient + 1) throw TropError("ray row length does not match ambient_dim");
    TropicalCycle x;
    x.weights.reserve(cells.size());
    if (doc.contains("weights")) {
        for (const auto& w : doc.at("weights")) x.weights.emplace_back(w.get<std::string>());
    } else {
        x.weights.assign(cells.size(), Int(1));
    }
    if (x.weights.size() != cells.size())
        throw TropError("weights are not aligned with maximal_cells");
    if (doc.contains("local_cone")) {
        std::vector<ZVec> gens;
        for (const auto& i : doc.at("local_cone")) gens.push_back(pool.at(i.get<size_t>()));
        x.local_cone = Polyhedron::from_hom_generators(ambient, gens, lineality);
    }
    x.complex = PolyhedralComplex::from_indexed_cells(ambient, std::move(pool),
                                                      std::move(lineality), std::move(cells));
    return x;
}

}  // namespace

std::string write_cycle(const TropicalCycle& x) { return cycle_to_json(x).dump(2) + "\n"; }

TropicalCycle read_cycle(const std::string& text) {
    return cycle_from_json(json::parse(text));
}

std::string write_function(const RationalFunctionOnCycle& f) {
    TropicalCycle shell;
    shell.complex = f.domain();
    shell.weights.assign(f.domain().size(), Int(1));
    json doc = cycle_to_json(shell);
    doc.erase("weights");
    json values = json::array();
    for (const auto& v : f.vertex_values()) values.push_back(rat_to_string(v));
    json slopes = json::array();
    for (const auto& s : f.generator_slopes()) slopes.push_back(rat_to_string(s));
    doc["vertex_values"] = std::move(values);
    doc["ray_slopes"] = std::move(slopes);
    return doc.dump(2) + "\n";
}

RationalFunctionOnCycle read_function(const std::string& text) {
    json doc = json::parse(text);
    json shell = doc;
    shell.erase("vertex_values");
    shell.erase("ray_slopes");
    TropicalCycle cycle = cycle_from_json(shell);
    std::vector<Rat> values, slopes;
    for (const auto& v : doc.at("vertex_values"))
        values.push_back(parse_rational(v.get<std::string>()));
    for (const auto& s : doc.at("ray_slopes"))
        slopes.push_back(parse_rational(s.get<std::string>()));
    return RationalFunctionOnCycle::from_data(cycle.complex, values, slopes);
}

std::string write_matroid(const Matroid& m) {
    json doc;
    doc["n"] = m.ground_size();
    doc["rank"] = m.rank();
    json bases = json::array();
    for (const auto& b : m.bases()) bases.push_back(b);
    doc["bases"] = std::move(bases);
    if (m.realization().has_value()) {
        const QMat& mat = *m.realization();
        json rows = json::array();
        for (size_t i = 0; i < mat.rows(); ++i) {
            json row = json::array();
            for (size_t j = 0; j < mat.cols(); ++j) row.push_back(rat_to_string(mat(i, j)));
            rows.push_back(std::move(row));
        }
        doc["matrix"] = std::move(rows);
    }
    return doc.dump(2) + "\n";
}

Matroid read_matroid(const std::string& text) {
    json doc = json::parse(text);
    if (doc.contains("matrix")) {
        const json& rows = doc.at("matrix");
        size_t r = rows.size();
        size_t c = rows.empty() ? 0 : rows[0].size();
        QMat mat(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                mat(i, j) = parse_rational(rows[i][j].get<std::string>());
        return Matroid::from_matrix(mat);
    }
    size_t n = doc.at("n").get<size_t>();
    std::vector<std::vector<size_t>> bases;
    for (const auto& b : doc.at("bases")) {
        std::vector<size_t> basis;
        for (const auto& e : b) basis.push_back(e.get<size_t>());
        bases.push_back(std::move(basis));
    }
    return Matroid::from_bases(n, bases);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TropError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw TropError("cannot write file: " + path);
    out << content;
}

}  // namespace tropint
