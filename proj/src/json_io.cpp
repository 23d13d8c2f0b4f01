#include "fc/json_io.hpp"

#include <sstream>

namespace fc {

std::string morphism_id(const FinCat& c, int m) {
    if (c.is_identity(m)) return "id:" + c.object_label(c.src(m));
    // ids count non-identity morphisms in table order
    int k = 0;
    for (int mm = 0; mm < m; ++mm)
        if (!c.is_identity(mm)) ++k;
    return "m" + std::to_string(k);
}

namespace {

int morphism_from_id(const FinCat& c, const std::string& id) {
    if (id.rfind("id:", 0) == 0) {
        int o = c.find_object(id.substr(3));
        if (o < 0) throw std::invalid_argument("unknown identity id " + id);
        return c.identity(o);
    }
    if (id.rfind("m", 0) == 0) {
        int want = std::stoi(id.substr(1));
        int k = 0;
        for (int m = 0; m < c.morphism_count(); ++m) {
            if (c.is_identity(m)) continue;
            if (k == want) return m;
            ++k;
        }
    }
    throw std::invalid_argument("unknown morphism id " + id);
}

Int int_from_json(const Json& v) {
    if (v.is_number_integer()) return Int((long long)v.get<long long>());
    if (v.is_string()) return Int(v.get<std::string>());
    throw std::invalid_argument("expected integer or integer string");
}

Json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json((long long)v.convert_to<long long>());
    return Json(v.str());
}

Json matrix_to_json(const IntMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMat matrix_from_json(const Json& j, int rows, int cols) {
    IntMat m(rows, cols);
    if ((int)j.size() != rows) throw std::invalid_argument("matrix row count mismatch");
    for (int i = 0; i < rows; ++i) {
        if ((int)j[i].size() != cols) throw std::invalid_argument("matrix col count mismatch");
        for (int c = 0; c < cols; ++c) m.set(i, c, int_from_json(j[i][c]));
    }
    return m;
}

}  // namespace

Json cat_to_json(const FinCat& c) {
    Json j;
    j["objects"] = Json::array();
    for (int o = 0; o < c.object_count(); ++o) j["objects"].push_back(c.object_label(o));
    j["morphisms"] = Json::array();
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m)) continue;
        j["morphisms"].push_back({{"id", morphism_id(c, m)},
                                  {"src", c.object_label(c.src(m))},
                                  {"dst", c.object_label(c.dst(m))},
                                  {"name", c.morph(m).name}});
    }
    j["compose"] = Json::array();
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            if (!c.composable(g, f) || c.is_identity(g) || c.is_identity(f)) continue;
            j["compose"].push_back({morphism_id(c, g), morphism_id(c, f), morphism_id(c, c.compose(g, f))});
        }
    return j;
}

FinCat cat_from_json(const Json& j) {
    FinCat c;
    for (auto& o : j.at("objects")) c.add_object(o.get<std::string>());
    for (auto& m : j.at("morphisms")) {
        int s = c.find_object(m.at("src").get<std::string>());
        int d = c.find_object(m.at("dst").get<std::string>());
        if (s < 0 || d < 0) throw std::invalid_argument("morphism endpoint missing");
        c.add_morphism(s, d, m.value("name", m.at("id").get<std::string>()));
    }
    for (auto& e : j.at("compose")) {
        int g = morphism_from_id(c, e[0].get<std::string>());
        int f = morphism_from_id(c, e[1].get<std::string>());
        int gf = morphism_from_id(c, e[2].get<std::string>());
        c.set_compose(g, f, gf);
    }
    c.finish();
    return c;
}

Json reedy_to_json(const ReedyStructure& r) {
    Json j;
    j["category"] = cat_to_json(r.cat);
    j["degree"] = Json::object();
    for (int o = 0; o < r.cat.object_count(); ++o) j["degree"][r.cat.object_label(o)] = r.degree[o];
    j["direct"] = Json::array();
    j["inverse"] = Json::array();
    for (int m = 0; m < r.cat.morphism_count(); ++m) {
        if (r.cat.is_identity(m)) continue;
        if (r.direct[m]) j["direct"].push_back(morphism_id(r.cat, m));
        if (r.inverse[m]) j["inverse"].push_back(morphism_id(r.cat, m));
    }
    return j;
}

ReedyStructure reedy_from_json(const Json& j) {
    ReedyStructure r;
    r.cat = cat_from_json(j.at("category"));
    r.degree.assign(r.cat.object_count(), 0);
    for (auto& [label, d] : j.at("degree").items()) {
        int o = r.cat.find_object(label);
        if (o < 0) throw std::invalid_argument("degree for unknown object " + label);
        r.degree[o] = d.get<int>();
    }
    r.direct.assign(r.cat.morphism_count(), 0);
    r.inverse.assign(r.cat.morphism_count(), 0);
    for (int m = 0; m < r.cat.morphism_count(); ++m)
        if (r.cat.is_identity(m)) r.direct[m] = r.inverse[m] = 1;
    for (auto& id : j.at("direct")) r.direct[morphism_from_id(r.cat, id.get<std::string>())] = 1;
    for (auto& id : j.at("inverse")) r.inverse[morphism_from_id(r.cat, id.get<std::string>())] = 1;
    return r;
}

Json sset_to_json(const FinSimpSet& s) {
    Json dims = Json::array();
    for (int k = 0; k <= s.dim(); ++k) {
        Json level = Json::array();
        for (int i = 0; i < s.count(k); ++i) {
            Json cell;
            cell["label"] = s.label(k, i);
            if (k > 0) {
                Json faces = Json::array();
                for (int f = 0; f <= k; ++f) {
                    const SimplexRef& r = s.face(k, i, f);
                    faces.push_back({{"dim", r.dim}, {"index", r.index}, {"word", r.word}});
                }
                cell["faces"] = std::move(faces);
            }
            level.push_back(std::move(cell));
        }
        dims.push_back(std::move(level));
    }
    return Json{{"dimensions", dims}};
}

Json complex_to_json(const ChainComplex& c) {
    Json j;
    j["lo"] = c.lo;
    j["hi"] = c.hi();
    j["ranks"] = c.ranks;
    j["d"] = Json::object();
    for (int deg = c.lo + 1; deg <= c.hi(); ++deg)
        if (c.rank_at(deg) > 0 && c.rank_at(deg - 1) > 0) j["d"][std::to_string(deg)] = matrix_to_json(c.diff(deg));
    return j;
}

ChainComplex complex_from_json(const Json& j) {
    ChainComplex c;
    c.lo = j.at("lo").get<int>();
    c.ranks = j.at("ranks").get<std::vector<int>>();
    c.d.resize(c.ranks.size());
    for (size_t i = 0; i < c.ranks.size(); ++i)
        c.d[i] = IntMat(i == 0 ? 0 : c.ranks[i - 1], c.ranks[i]);
    if (j.contains("d"))
        for (auto& [deg_s, mat] : j.at("d").items()) {
            int deg = std::stoi(deg_s);
            if (deg <= c.lo || deg > c.hi()) throw std::invalid_argument("differential outside support");
            c.d[deg - c.lo] = matrix_from_json(mat, c.ranks[deg - 1 - c.lo], c.ranks[deg - c.lo]);
        }
    ValidationReport rep = c.validate();
    if (!rep.ok()) throw std::invalid_argument("complex: " + rep.violations.front());
    return c;
}

Json homology_to_json(const HomologySummary& h) {
    Json j = Json::object();
    for (auto& [deg, g] : h.groups) {
        Json torsion = Json::array();
        for (auto& t : g.second) torsion.push_back(int_to_json(t));
        j[std::to_string(deg)] = {{"betti", g.first}, {"torsion", torsion}};
    }
    return j;
}

Json diagram_to_json(const Diagram& d) {
    Json j;
    j["shape"] = cat_to_json(d.shape);
    j["values"] = Json::array();
    for (auto& v : d.value) j["values"].push_back(complex_to_json(v));
    j["maps"] = Json::object();
    for (int m = 0; m < d.shape.morphism_count(); ++m) {
        if (d.shape.is_identity(m)) continue;
        Json comps = Json::object();
        const ChainMap& f = d.action[m];
        for (auto& [deg, mat] : f.comp) comps[std::to_string(deg)] = matrix_to_json(mat);
        j["maps"][morphism_id(d.shape, m)] = std::move(comps);
    }
    return j;
}

Diagram diagram_from_json(const Json& j) {
    Diagram d;
    d.shape = cat_from_json(j.at("shape"));
    for (auto& v : j.at("values")) d.value.push_back(complex_from_json(v));
    if ((int)d.value.size() != d.shape.object_count()) throw std::invalid_argument("value count mismatch");
    d.action.resize(d.shape.morphism_count());
    for (int m = 0; m < d.shape.morphism_count(); ++m)
        d.action[m] = d.shape.is_identity(m)
                          ? identity_map(d.value[d.shape.src(m)])
                          : ChainMap{d.value[d.shape.src(m)], d.value[d.shape.dst(m)], {}};
    if (j.contains("maps"))
        for (auto& [id, comps] : j.at("maps").items()) {
            int m = morphism_from_id(d.shape, id);
            ChainMap& f = d.action[m];
            for (auto& [deg_s, mat] : comps.items()) {
                int deg = std::stoi(deg_s);
                f.comp[deg] = matrix_from_json(mat, f.dst.rank_at(deg), f.src.rank_at(deg));
            }
        }
    ValidationReport rep = d.validate();
    if (!rep.ok()) throw std::invalid_argument("diagram: " + rep.violations.front());
    return d;
}

Json cartesian_cube_to_json(const Cube& c) {
    Json j = diagram_to_json(c.diag);
    j["kind"] = "cartesian";
    j["puncture"] = cat_to_json(c.j);
    return j;
}

Cube cartesian_cube_from_json(const Json& j) {
    FinCat puncture = cat_from_json(j.at("puncture"));
    Diagram d = diagram_from_json(j);
    return make_cube(puncture, std::move(d));
}

Json cocart_cube_to_json(const CocartCube& c) {
    Json j = diagram_to_json(c.diag);
    j["kind"] = "cocartesian";
    j["n"] = c.n;
    return j;
}

CocartCube cocart_cube_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    Diagram d = diagram_from_json(j);
    return make_cocart_cube(n, std::move(d));
}

}  // namespace fc
