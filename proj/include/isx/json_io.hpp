#pragma once

// Strict JSON serialization of instances and approximations. Every entry is
// a rational written as a string, unknown fields are rejected, and the
// writer emits a canonical form (sorted block keys, fixed field order) so
// that byte identical output is reproducible.

#include "isx/generator.hpp"

#include <json.hpp>

namespace isx {

using json = nlohmann::ordered_json;

struct JsonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace json_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
    throw JsonError(path + ": " + msg);
}

inline const json& get(const json& j, const std::string& path, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

inline void require_object(const json& j, const std::string& path,
                           std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) ok = true;
        if (!ok) fail(path, "unknown field '" + item.key() + "'");
    }
}

inline int get_int(const json& j, const std::string& path, const char* key) {
    const json& v = get(j, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

inline bool get_bool(const json& j, const std::string& path, const char* key) {
    const json& v = get(j, path, key);
    if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

inline std::string get_string(const json& j, const std::string& path, const char* key) {
    const json& v = get(j, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

inline json dims_to_json(const GradedSpace& s, int lo, int hi) {
    json a = json::array();
    for (int i = lo; i <= hi; ++i) a.push_back(s.dim(i));
    return a;
}

inline GradedSpace dims_from_json(const json& v, const std::string& path, int lo, int hi) {
    if (!v.is_array()) fail(path, "expected an array of dimensions");
    if (int(v.size()) != hi - lo + 1)
        fail(path, "expected " + std::to_string(hi - lo + 1) + " entries covering degrees " +
                       std::to_string(lo) + ".." + std::to_string(hi));
    GradedSpace s;
    for (int i = 0; i < int(v.size()); ++i) {
        const json& e = v[std::size_t(i)];
        if (!e.is_number_integer() || e.get<long long>() < 0)
            fail(path + "[" + std::to_string(i) + "]", "expected a nonnegative integer");
        s.set_dim(lo + i, e.get<std::size_t>());
    }
    return s;
}

inline json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat matrix_from_json(const json& v, const std::string& path, std::size_t rows,
                            std::size_t cols) {
    if (!v.is_array()) fail(path, "expected an array of matrix rows");
    if (v.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = v[r];
        const std::string rpath = path + "[" + std::to_string(r) + "]";
        if (!row.is_array()) fail(rpath, "expected an array of entries");
        if (row.size() != cols) fail(rpath, "expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            const json& e = row[c];
            const std::string epath = rpath + "[" + std::to_string(c) + "]";
            if (!e.is_string()) fail(epath, "matrix entries must be rationals written as strings");
            try {
                m(r, c) = parse_rational(e.get<std::string>());
            } catch (const std::invalid_argument& ex) {
                fail(epath, ex.what());
            }
        }
    }
    return m;
}

inline int parse_degree_key(const std::string& key, const std::string& path) {
    if (key.empty()) fail(path, "empty degree key");
    std::size_t pos = key[0] == '-' ? 1 : 0;
    if (pos == key.size()) fail(path, "bad degree key '" + key + "'");
    for (std::size_t i = pos; i < key.size(); ++i)
        if (key[i] < '0' || key[i] > '9') fail(path, "bad degree key '" + key + "'");
    try {
        return std::stoi(key);
    } catch (const std::exception&) {
        fail(path, "degree key out of range '" + key + "'");
    }
}

inline json map_to_json(const GradedMap& m) {
    json out = json::object();
    for (const auto& [deg, blk] : m.stored_blocks())
        if (blk.rows() > 0 && blk.cols() > 0) out[std::to_string(deg)] = matrix_to_json(blk);
    return out;
}

inline void map_from_json(GradedMap& m, const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object keyed by degree");
    for (const auto& item : v.items()) {
        const int deg = parse_degree_key(item.key(), path);
        const std::string bpath = path + "." + item.key();
        const std::size_t rows = m.dst().dim(deg + m.shift()), cols = m.src().dim(deg);
        if (rows == 0 || cols == 0) fail(bpath, "block has empty shape and must be omitted");
        m.set_block(deg, matrix_from_json(item.value(), bpath, rows, cols));
    }
}

inline json pairing_to_json(const GradedPairing& p) {
    json out = json::object();
    for (const auto& [deg, blk] : p.stored_blocks())
        if (blk.rows() > 0 && blk.cols() > 0) out[std::to_string(deg)] = matrix_to_json(blk);
    return out;
}

inline void pairing_from_json(GradedPairing& p, const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object keyed by degree");
    for (const auto& item : v.items()) {
        const int deg = parse_degree_key(item.key(), path);
        const std::string bpath = path + "." + item.key();
        const std::size_t rows = p.left().dim(deg), cols = p.right().dim(p.total() - deg);
        if (rows == 0 || cols == 0) fail(bpath, "block has empty shape and must be omitted");
        p.set_block(deg, matrix_from_json(item.value(), bpath, rows, cols));
    }
}

inline json side_to_json(const TubeSide& s, int lo, int hi) {
    json out = json::object();
    out["absolute_dims"] = dims_to_json(s.absolute, lo, hi);
    out["relative_dims"] = dims_to_json(s.relative, lo, hi);
    out["b_to_p"] = map_to_json(s.b_to_p);
    out["p_to_rel"] = map_to_json(s.p_to_rel);
    out["rel_bdry"] = map_to_json(s.rel_bdry);
    out["D_abs_rel"] = pairing_to_json(s.abs_rel);
    return out;
}

inline TubeSide side_from_json(const json& v, const std::string& path, const GradedSpace& boundary,
                               int lo, int hi, int N) {
    require_object(v, path,
                   {"absolute_dims", "relative_dims", "b_to_p", "p_to_rel", "rel_bdry",
                    "D_abs_rel"});
    TubeSide s;
    s.absolute = dims_from_json(get(v, path, "absolute_dims"), path + ".absolute_dims", lo, hi);
    s.relative = dims_from_json(get(v, path, "relative_dims"), path + ".relative_dims", lo, hi);
    s.b_to_p = GradedMap::zero(boundary, s.absolute, 0);
    s.p_to_rel = GradedMap::zero(s.absolute, s.relative, 0);
    s.rel_bdry = GradedMap::zero(s.relative, boundary, -1);
    s.abs_rel = GradedPairing(s.absolute, s.relative, N);
    map_from_json(s.b_to_p, get(v, path, "b_to_p"), path + ".b_to_p");
    map_from_json(s.p_to_rel, get(v, path, "p_to_rel"), path + ".p_to_rel");
    map_from_json(s.rel_bdry, get(v, path, "rel_bdry"), path + ".rel_bdry");
    pairing_from_json(s.abs_rel, get(v, path, "D_abs_rel"), path + ".D_abs_rel");
    return s;
}

}  // namespace json_detail

inline json instance_to_json(const Instance& inst) {
    using namespace json_detail;
    const TubeDatum& t = inst.tube;
    const int lo = t.min_degree, hi = t.max_degree;
    json out = json::object();
    out["format"] = "isx-instance-v1";
    out["name"] = inst.name;
    out["dimension"] = t.dimension;
    out["witt"] = t.witt;
    out["min_degree"] = lo;
    out["max_degree"] = hi;
    out["boundary"] = json::object();
    out["boundary"]["dims"] = dims_to_json(t.boundary, lo, hi);
    json tube = json::object();
    if (t.witt) {
        tube = side_to_json(t.side_lower, lo, hi);
    } else {
        tube["lower"] = side_to_json(t.side_lower, lo, hi);
        tube["upper"] = side_to_json(t.side_upper, lo, hi);
    }
    tube["D_bdry"] = pairing_to_json(t.bdry_pairing);
    out["tube"] = std::move(tube);
    json comp = json::object();
    comp["dims"] = dims_to_json(inst.global.ambient, lo, hi);
    comp["iota"] = map_to_json(inst.global.include_bdry);
    comp["lefschetz"] = pairing_to_json(inst.global.lefschetz);
    out["complement"] = std::move(comp);
    return out;
}

inline Instance instance_from_json(const json& j) {
    using namespace json_detail;
    const std::string root = "$";
    require_object(j, root,
                   {"format", "name", "dimension", "witt", "min_degree", "max_degree", "boundary",
                    "tube", "complement"});
    if (get_string(j, root, "format") != "isx-instance-v1")
        fail(root + ".format", "unsupported format");
    Instance inst;
    inst.name = get_string(j, root, "name");
    TubeDatum& t = inst.tube;
    t.tube_name = inst.name;
    t.dimension = get_int(j, root, "dimension");
    t.witt = get_bool(j, root, "witt");
    t.min_degree = get_int(j, root, "min_degree");
    t.max_degree = get_int(j, root, "max_degree");
    if (t.min_degree > t.max_degree) fail(root, "min_degree exceeds max_degree");
    const int lo = t.min_degree, hi = t.max_degree, N = t.dimension;

    const json& bd = get(j, root, "boundary");
    require_object(bd, root + ".boundary", {"dims"});
    t.boundary = dims_from_json(get(bd, root + ".boundary", "dims"), root + ".boundary.dims", lo, hi);

    const json& tube = get(j, root, "tube");
    if (t.witt) {
        require_object(tube, root + ".tube",
                       {"absolute_dims", "relative_dims", "b_to_p", "p_to_rel", "rel_bdry",
                        "D_abs_rel", "D_bdry"});
        json side = tube;
        side.erase("D_bdry");
        t.side_lower = side_from_json(side, root + ".tube", t.boundary, lo, hi, N);
        t.side_upper = t.side_lower;
    } else {
        require_object(tube, root + ".tube", {"lower", "upper", "D_bdry"});
        t.side_lower =
            side_from_json(get(tube, root + ".tube", "lower"), root + ".tube.lower", t.boundary,
                           lo, hi, N);
        t.side_upper =
            side_from_json(get(tube, root + ".tube", "upper"), root + ".tube.upper", t.boundary,
                           lo, hi, N);
    }
    t.bdry_pairing = GradedPairing(t.boundary, t.boundary, N - 1);
    pairing_from_json(t.bdry_pairing, get(tube, root + ".tube", "D_bdry"), root + ".tube.D_bdry");

    const json& comp = get(j, root, "complement");
    require_object(comp, root + ".complement", {"dims", "iota", "lefschetz"});
    GlobalDatum& g = inst.global;
    g.ambient = dims_from_json(get(comp, root + ".complement", "dims"),
                               root + ".complement.dims", lo, hi);
    g.include_bdry = GradedMap::zero(t.boundary, g.ambient, 0);
    map_from_json(g.include_bdry, get(comp, root + ".complement", "iota"),
                  root + ".complement.iota");
    ConeModel r;
    try {
        r = cone_model(g.include_bdry);
    } catch (const std::exception& e) {
        fail(root + ".complement.iota", e.what());
    }
    g.lefschetz = GradedPairing(r.H, g.ambient, N);
    pairing_from_json(g.lefschetz, get(comp, root + ".complement", "lefschetz"),
                      root + ".complement.lefschetz");
    return inst;
}

inline json approximation_to_json(const Approximation& a, Perversity pv, int lo, int hi) {
    using namespace json_detail;
    json out = json::object();
    out["format"] = "isx-approximation-v1";
    out["perversity"] = name(pv);
    out["min_degree"] = lo;
    out["max_degree"] = hi;
    out["dims"] = dims_to_json(a.complex.space, lo, hi);
    out["d"] = map_to_json(a.complex.d);
    out["f"] = map_to_json(a.f);
    return out;
}

inline Approximation approximation_from_json(const json& j, const TubeDatum& t, Perversity pv) {
    using namespace json_detail;
    const std::string root = "$";
    require_object(j, root,
                   {"format", "perversity", "min_degree", "max_degree", "dims", "d", "f"});
    if (get_string(j, root, "format") != "isx-approximation-v1")
        fail(root + ".format", "unsupported format");
    if (get_string(j, root, "perversity") != name(pv))
        fail(root + ".perversity", std::string("expected perversity '") + name(pv) + "'");
    const int lo = get_int(j, root, "min_degree"), hi = get_int(j, root, "max_degree");
    if (lo != t.min_degree || hi != t.max_degree)
        fail(root, "degree range does not match the instance");
    Approximation a;
    const GradedSpace as = dims_from_json(get(j, root, "dims"), root + ".dims", lo, hi);
    a.complex.space = as;
    a.complex.d = GradedMap::zero(as, as, -1);
    map_from_json(a.complex.d, get(j, root, "d"), root + ".d");
    a.f = GradedMap::zero(as, t.boundary, 0);
    map_from_json(a.f, get(j, root, "f"), root + ".f");
    return a;
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonError(std::string("$: malformed JSON: ") + e.what());
    }
}

inline std::string serialize_instance(const Instance& inst) {
    return dump_json(instance_to_json(inst));
}

inline Instance parse_instance(const std::string& text) {
    return instance_from_json(parse_json_text(text));
}

}  // namespace isx
