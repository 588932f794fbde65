#pragma once

#include "lipbar/barcode_metrics.hpp"
#include "lipbar/complex.hpp"
#include "lipbar/metric_complex.hpp"
#include "lipbar/piecewise.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace lipbar {

using Json = nlohmann::json;

// Filtration and length values travel through JSON as doubles; doubles are
// binary rationals, so reading them back is exact.  Values produced by exact
// rational computation are emitted as their nearest double.

inline Json complex_to_json(const FilteredComplex& fc) {
    Json cells = Json::array();
    for (const auto& c : fc.cells) {
        Json boundary = Json::array();
        for (auto [fid, coeff] : c.boundary) boundary.push_back({fid, coeff});
        cells.push_back({{"id", c.id},
                         {"dim", c.dim},
                         {"filtration", to_double(c.filtration)},
                         {"boundary", boundary}});
    }
    return Json{{"field", fc.field_char}, {"cells", cells}};
}

inline FilteredComplex complex_from_json(const Json& j) {
    if (!j.contains("cells")) throw Error(ErrorCode::BadInput, "complex JSON: missing 'cells'");
    int field = j.value("field", 2);
    std::vector<Cell> cells;
    for (const auto& cj : j.at("cells")) {
        Cell c;
        c.id = cj.at("id").get<CellId>();
        c.dim = cj.at("dim").get<int>();
        c.filtration = rat_from_double(cj.at("filtration").get<double>());
        for (const auto& b : cj.at("boundary"))
            c.boundary.push_back({b.at(0).get<CellId>(), b.at(1).get<int>()});
        cells.push_back(std::move(c));
    }
    return build_filtered_complex(std::move(cells), field);
}

inline Json barcode_to_json(const Barcode& bc) {
    Json bars = Json::array();
    for (const auto& b : bc.bars) {
        if (b.finite())
            bars.push_back({to_double(b.birth), to_double(*b.death)});
        else
            bars.push_back({to_double(b.birth), nullptr});
    }
    return Json{{"degree", bc.degree}, {"bars", bars}};
}

inline Barcode barcode_from_json(const Json& j) {
    Barcode bc;
    bc.degree = j.at("degree").get<int>();
    for (const auto& b : j.at("bars")) {
        Bar bar;
        bar.birth = rat_from_double(b.at(0).get<double>());
        if (!b.at(1).is_null()) bar.death = rat_from_double(b.at(1).get<double>());
        bc.bars.push_back(std::move(bar));
    }
    bc.sort();
    return bc;
}

inline Json metric_complex_to_json(const MetricComplex& mc) {
    Json edges = Json::array();
    for (const auto& e : mc.edges) edges.push_back({e.u, e.v, to_double(e.length)});
    Json simplices = Json::array();
    for (const auto& s : mc.simplices) simplices.push_back(s);
    return Json{{"vertices", mc.vertex_count}, {"edges", edges}, {"simplices", simplices}};
}

inline MetricComplex metric_complex_from_json(const Json& j) {
    MetricComplex mc;
    mc.vertex_count = j.at("vertices").get<size_t>();
    for (const auto& e : j.at("edges"))
        mc.edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>(),
                            rat_from_double(e.at(2).get<double>())});
    if (j.contains("simplices"))
        for (const auto& s : j.at("simplices"))
            mc.simplices.push_back(s.get<std::vector<Vertex>>());
    mc.finalize();
    return mc;
}

inline Json matching_to_json(const Matching& m) {
    Json pairs = Json::array();
    for (auto [a, b] : m.pairs) pairs.push_back({a, b});
    return Json{{"delta", to_double(m.delta)},
                {"pairs", pairs},
                {"unmatched1", m.unmatched1},
                {"unmatched2", m.unmatched2}};
}

// Piecewise polynomials: {"breaks":[0,...,1], "pieces":[[c0,c1,...],...]}
// with coefficients in ascending powers of t; a bare array of coefficients is
// accepted as a single piece.
inline PiecewisePoly<Rat> piecewise_from_json(const Json& j) {
    if (j.is_array()) {
        std::vector<Rat> coeffs;
        for (const auto& c : j) coeffs.push_back(rat_from_double(c.get<double>()));
        return PiecewisePoly<Rat>(Poly(std::move(coeffs)));
    }
    std::vector<Rat> breaks;
    for (const auto& b : j.at("breaks")) breaks.push_back(rat_from_double(b.get<double>()));
    std::vector<Poly> pieces;
    for (const auto& p : j.at("pieces")) {
        std::vector<Rat> coeffs;
        for (const auto& c : p) coeffs.push_back(rat_from_double(c.get<double>()));
        pieces.push_back(Poly(std::move(coeffs)));
    }
    return PiecewisePoly<Rat>(std::move(breaks), std::move(pieces));
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace lipbar
