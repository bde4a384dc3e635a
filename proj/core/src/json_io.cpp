#include "grassfold/json_io.hpp"

#include <algorithm>

#include "grassfold/errors.hpp"

namespace grassfold {

namespace {

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw malformed_input(std::string("missing field '") + key + "'", path);
    return j[key];
}

int need_int(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number_integer())
        throw malformed_input(std::string("field '") + key + "' must be an integer",
                              path + "/" + key);
    return v.get<int>();
}

void need_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw malformed_input("expected an array", path);
}

}  // namespace

json to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) throw malformed_input("expected a rational string", path);
    try {
        return rat_parse(j.get<std::string>());
    } catch (malformed_input& e) {
        throw malformed_input(e.what(), path);
    }
}

json to_json(const ExactMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ExactMatrix matrix_from_json(const json& j, const std::string& path) {
    need_array(j, path);
    int rows = int(j.size());
    int cols = rows == 0 ? 0 : int(j[0].size());
    ExactMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        need_array(row, path + "/" + std::to_string(i));
        if (int(row.size()) != cols)
            throw malformed_input("ragged matrix rows", path + "/" + std::to_string(i));
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = rat_from_json(row[c],
                                       path + "/" + std::to_string(i) + "/" + std::to_string(c));
    }
    return m;
}

json to_json(const Configuration& c) {
    json pts = json::array();
    for (const auto& p : c.points) {
        json coords = json::array();
        for (const auto& x : p.coords) coords.push_back(to_json(x));
        pts.push_back(std::move(coords));
    }
    return json{{"schema", "grassfold/configuration-v1"}, {"ambient", c.ambient}, {"points", pts}};
}

Configuration config_from_json(const json& j, const std::string& path) {
    int ambient = need_int(j, "ambient", path);
    const json& pts = need(j, "points", path);
    need_array(pts, path + "/points");
    std::vector<std::vector<Rat>> coords;
    for (size_t i = 0; i < pts.size(); ++i) {
        const json& p = pts[i];
        std::string pp = path + "/points/" + std::to_string(i);
        need_array(p, pp);
        std::vector<Rat> v;
        for (size_t k = 0; k < p.size(); ++k)
            v.push_back(rat_from_json(p[k], pp + "/" + std::to_string(k)));
        coords.push_back(std::move(v));
    }
    try {
        return config_from_coords(ambient, coords);
    } catch (const malformed_input& e) {
        throw malformed_input(e.what(), path + "/points");
    } catch (const degenerate_input& e) {
        throw malformed_input(e.what(), path + "/points");
    }
}

json to_json(const Subspace& s) { return to_json(s.basis); }

Subspace subspace_from_json(const json& j, const std::string& path, int ambient) {
    ExactMatrix m = matrix_from_json(j, path);
    if (m.rows() == 0) return Subspace{ExactMatrix(0, ambient + 1)};
    if (m.cols() != ambient + 1) throw malformed_input("subspace row length mismatch", path);
    return subspace_from_rows(m);
}

json to_json(const LinearConfiguration& h) {
    json subs = json::array();
    for (const auto& s : h.subspaces) subs.push_back(to_json(s));
    return json{
        {"schema", "grassfold/arrangement-v1"}, {"ambient", h.ambient}, {"subspaces", subs}};
}

LinearConfiguration linconf_from_json(const json& j, const std::string& path) {
    int ambient = need_int(j, "ambient", path);
    const json& subs = need(j, "subspaces", path);
    need_array(subs, path + "/subspaces");
    LinearConfiguration h;
    h.ambient = ambient;
    for (size_t i = 0; i < subs.size(); ++i) {
        Subspace s = subspace_from_json(subs[i], path + "/subspaces/" + std::to_string(i), ambient);
        if (!s.empty()) h.insert(s);
    }
    return h;
}

json to_json(const IntersectionPoset& p) {
    json els = json::array();
    for (size_t i = 0; i < p.elements.size(); ++i)
        els.push_back(json{{"id", int(i)}, {"rank", p.rank[i]}, {"basis", to_json(p.elements[i])}});
    json covers = json::array();
    for (auto& [a, b] : p.cover_pairs()) covers.push_back(json::array({a, b}));
    return json{{"schema", "grassfold/poset-v1"}, {"elements", els}, {"covers", covers}};
}

json to_json(const IntPoly& p) {
    json c = json::array();
    for (const auto& v : p.c) c.push_back(v.get_str());
    return c;
}

json to_json(const ElementRef& r) {
    switch (r.kind) {
        case ElementRef::Kind::span:
            return json{{"span", r.span_marks}};
        case ElementRef::Kind::step:
            return json{{"step", r.step_index}};
        case ElementRef::Kind::meet: {
            json args = json::array();
            for (const auto& a : r.meet_args) args.push_back(to_json(a));
            return json{{"meet", args}};
        }
    }
    return json();
}

ElementRef ref_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw malformed_input("expected a reference object", path);
    if (j.contains("span")) {
        const json& s = j["span"];
        need_array(s, path + "/span");
        std::vector<int> marks;
        for (const auto& v : s) {
            if (!v.is_number_integer()) throw malformed_input("span index", path + "/span");
            marks.push_back(v.get<int>());
        }
        return ElementRef::span(std::move(marks));
    }
    if (j.contains("step")) {
        if (!j["step"].is_number_integer()) throw malformed_input("step index", path + "/step");
        return ElementRef::step(j["step"].get<int>());
    }
    if (j.contains("meet")) {
        const json& a = j["meet"];
        need_array(a, path + "/meet");
        std::vector<ElementRef> args;
        for (size_t i = 0; i < a.size(); ++i)
            args.push_back(ref_from_json(a[i], path + "/meet/" + std::to_string(i)));
        return ElementRef::meet_of(std::move(args));
    }
    throw malformed_input("reference must contain span, step or meet", path);
}

json to_json(const DerivationScript& s) {
    json steps = json::array();
    for (const auto& st : s.steps)
        steps.push_back(json{{"base", to_json(st.base)}, {"points", st.points}});
    return steps;
}

DerivationScript script_from_json(const json& j, const std::string& path) {
    need_array(j, path);
    DerivationScript s;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string pp = path + "/" + std::to_string(i);
        ScriptStep st;
        st.base = ref_from_json(need(j[i], "base", pp), pp + "/base");
        const json& pts = need(j[i], "points", pp);
        need_array(pts, pp + "/points");
        for (const auto& v : pts) {
            if (!v.is_number_integer()) throw malformed_input("point index", pp + "/points");
            st.points.push_back(v.get<int>());
        }
        std::sort(st.points.begin(), st.points.end());
        s.steps.push_back(std::move(st));
    }
    return s;
}

json to_json(const MarkedTemplate& t) {
    json els = json::array();
    for (int i = 0; i < t.n_elements; ++i) els.push_back(json{{"id", i}, {"rank", t.rank[i]}});
    json order = json::array();
    for (auto& [a, b] : t.order) order.push_back(json::array({a, b}));
    return json{{"elements", els}, {"order", order}, {"marking", t.marking}, {"code", t.code}};
}

json to_json(const ScriptedTemplate& st) {
    json j{{"schema", "grassfold/template-v1"},
           {"shape", json::array({st.p, st.q})},
           {"template", to_json(st.tmpl)},
           {"witness", to_json(st.witness)}};
    if (st.script) j["script"] = to_json(*st.script);
    if (st.raw_config) j["witness_config"] = to_json(*st.raw_config);
    return j;
}

ScriptedTemplate template_from_json(const json& j, const std::string& path) {
    const json& shape = need(j, "shape", path);
    if (!shape.is_array() || shape.size() != 2)
        throw malformed_input("shape must be [p, q]", path + "/shape");
    int p = shape[0].get<int>(), q = shape[1].get<int>();
    Configuration w = config_from_json(need(j, "witness", path), path + "/witness");
    if (j.contains("script")) {
        DerivationScript s = script_from_json(j["script"], path + "/script");
        try {
            return make_scripted(p, q, s, w);
        } catch (const std::exception& e) {
            throw malformed_input(std::string("template does not replay: ") + e.what(), path);
        }
    }
    if (j.contains("witness_config")) {
        LinearConfiguration h = linconf_from_json(j["witness_config"], path + "/witness_config");
        try {
            return make_raw(p, q, h, w);
        } catch (const std::exception& e) {
            throw malformed_input(std::string("raw template rejected: ") + e.what(), path);
        }
    }
    throw malformed_input("template needs a script or a witness_config", path);
}

json to_json(const GrassPoint& v) {
    return json{{"schema", "grassfold/grasspoint-v1"},
                {"p", v.p},
                {"q", v.q},
                {"matrix", to_json(v.m)}};
}

GrassPoint grasspoint_from_json(const json& j, const std::string& path) {
    int p = need_int(j, "p", path);
    int q = need_int(j, "q", path);
    ExactMatrix m = matrix_from_json(need(j, "matrix", path), path + "/matrix");
    if (m.rows() != p || m.cols() != p + q + 1)
        throw malformed_input("matrix must be p x (p+q+1)", path + "/matrix");
    return GrassPoint{p, q, std::move(m)};
}

json to_json(const FiberStage& st) {
    json center = json::array();
    for (const auto& c : st.center.coords) center.push_back(to_json(c));
    return json{{"center", center},
                {"fiber_points", st.fiber_points},
                {"induced", to_json(st.induced)}};
}

json to_json(const FiberTypeResult& r) {
    json chain = json::array();
    for (const auto& st : r.chain) chain.push_back(to_json(st));
    json j{{"schema", "grassfold/fibertype-v1"}, {"fiber_type", r.ok}, {"chain", chain}};
    if (!r.ok) j["fail_dim"] = r.fail_dim;
    return j;
}

json to_json(const PolyQ& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms)
        terms.push_back(json{{"exp", e}, {"coef", to_json(c)}});
    return json{{"schema", "grassfold/poly-v1"}, {"n", f.n}, {"terms", terms}};
}

PolyQ polyq_from_json(const json& j, const std::string& path) {
    int n = need_int(j, "n", path);
    const json& terms = need(j, "terms", path);
    need_array(terms, path + "/terms");
    std::vector<std::pair<std::vector<unsigned>, Rat>> out;
    for (size_t i = 0; i < terms.size(); ++i) {
        std::string pp = path + "/terms/" + std::to_string(i);
        const json& e = need(terms[i], "exp", pp);
        need_array(e, pp + "/exp");
        std::vector<unsigned> exp;
        for (const auto& v : e) exp.push_back(v.get<unsigned>());
        out.emplace_back(std::move(exp), rat_from_json(need(terms[i], "coef", pp), pp + "/coef"));
    }
    try {
        return poly_make(n, out);
    } catch (malformed_input& e) {
        throw malformed_input(e.what(), path + "/terms");
    }
}

json to_json(const RegionSpec& s) {
    return json{{"schema", "grassfold/regionspec-v1"},
                {"n", s.n},
                {"K", to_json(s.K)},
                {"C", to_json(s.C)}};
}

RegionSpec regionspec_from_json(const json& j, const std::string& path) {
    RegionSpec s;
    s.n = need_int(j, "n", path);
    s.K = rat_from_json(need(j, "K", path), path + "/K");
    s.C = rat_from_json(need(j, "C", path), path + "/C");
    return s;
}

json to_json(const UCertificate& c) {
    json levels = json::array();
    for (const auto& lv : c.levels) {
        json excl = json::array();
        for (const auto& t : lv.excluded) excl.push_back(to_json(t));
        json base = json::array();
        for (const auto& b : lv.base_samples) base.push_back(to_json(b));
        json members = json::array();
        for (const auto& m : lv.member_samples) members.push_back(to_json(m));
        json chain = json::array();
        for (const auto& st : lv.chain) chain.push_back(to_json(st));
        json jl{{"q", lv.q},
                {"trivial", lv.trivial},
                {"excluded", excl},
                {"chain", chain},
                {"poincare", to_json(lv.poincare)},
                {"exponents", lv.exponents},
                {"base_samples", base},
                {"member_samples", members}};
        if (lv.fiber_template) jl["fiber_template"] = to_json(*lv.fiber_template);
        levels.push_back(std::move(jl));
    }
    json faces = json::array();
    for (const auto& fc : c.face_checks)
        faces.push_back(json{{"q", fc.q}, {"i", fc.i}, {"sample", to_json(fc.sample)}});
    return json{{"schema", "grassfold/ucert-v1"},
                {"p", c.p},
                {"seed", c.seed},
                {"budget",
                 json{{"max_q", c.budget.max_q},
                      {"samples", c.budget.samples},
                      {"agree", c.budget.agree},
                      {"height", c.budget.height},
                      {"max_attempts", c.budget.max_attempts}}},
                {"completed", c.completed},
                {"failure_level", c.failure_level},
                {"levels", levels},
                {"face_checks", faces}};
}

UCertificate certificate_from_json(const json& j, const std::string& path) {
    UCertificate c;
    c.p = need_int(j, "p", path);
    c.seed = need(j, "seed", path).get<uint64_t>();
    const json& b = need(j, "budget", path);
    c.budget.max_q = need_int(b, "max_q", path + "/budget");
    c.budget.samples = need_int(b, "samples", path + "/budget");
    c.budget.agree = need_int(b, "agree", path + "/budget");
    c.budget.height = need_int(b, "height", path + "/budget");
    c.budget.max_attempts = need_int(b, "max_attempts", path + "/budget");
    c.completed = need(j, "completed", path).get<bool>();
    c.failure_level = need_int(j, "failure_level", path);
    const json& levels = need(j, "levels", path);
    need_array(levels, path + "/levels");
    for (size_t i = 0; i < levels.size(); ++i) {
        const json& jl = levels[i];
        std::string pp = path + "/levels/" + std::to_string(i);
        ULevel lv;
        lv.q = need_int(jl, "q", pp);
        lv.trivial = need(jl, "trivial", pp).get<bool>();
        const json& excl = need(jl, "excluded", pp);
        need_array(excl, pp + "/excluded");
        for (size_t k = 0; k < excl.size(); ++k)
            lv.excluded.push_back(
                template_from_json(excl[k], pp + "/excluded/" + std::to_string(k)));
        if (jl.contains("fiber_template"))
            lv.fiber_template = template_from_json(jl["fiber_template"], pp + "/fiber_template");
        const json& chain = need(jl, "chain", pp);
        need_array(chain, pp + "/chain");
        for (size_t k = 0; k < chain.size(); ++k) {
            const json& js = chain[k];
            std::string cp = pp + "/chain/" + std::to_string(k);
            FiberStage st;
            const json& center = need(js, "center", cp);
            need_array(center, cp + "/center");
            std::vector<Rat> coords;
            for (size_t t = 0; t < center.size(); ++t)
                coords.push_back(rat_from_json(center[t], cp + "/center/" + std::to_string(t)));
            st.center = make_point(std::move(coords));
            st.fiber_points = need_int(js, "fiber_points", cp);
            const json& ind = need(js, "induced", cp);
            int amb = need_int(ind, "ambient", cp + "/induced");
            const json& subs = need(ind, "subspaces", cp + "/induced");
            need_array(subs, cp + "/induced/subspaces");
            st.induced.ambient = amb;
            for (size_t t = 0; t < subs.size(); ++t)
                st.induced.insert(subspace_from_json(
                    subs[t], cp + "/induced/subspaces/" + std::to_string(t), amb));
            lv.chain.push_back(std::move(st));
        }
        const json& pc = need(jl, "poincare", pp);
        need_array(pc, pp + "/poincare");
        for (const auto& v : pc) lv.poincare.c.push_back(Intz(v.get<std::string>()));
        const json& ex = need(jl, "exponents", pp);
        need_array(ex, pp + "/exponents");
        for (const auto& v : ex) lv.exponents.push_back(v.get<int>());
        const json& bs = need(jl, "base_samples", pp);
        need_array(bs, pp + "/base_samples");
        for (size_t k = 0; k < bs.size(); ++k)
            lv.base_samples.push_back(
                grasspoint_from_json(bs[k], pp + "/base_samples/" + std::to_string(k)));
        const json& ms = need(jl, "member_samples", pp);
        need_array(ms, pp + "/member_samples");
        for (size_t k = 0; k < ms.size(); ++k)
            lv.member_samples.push_back(
                grasspoint_from_json(ms[k], pp + "/member_samples/" + std::to_string(k)));
        c.levels.push_back(std::move(lv));
    }
    const json& faces = need(j, "face_checks", path);
    need_array(faces, path + "/face_checks");
    for (size_t i = 0; i < faces.size(); ++i) {
        std::string pp = path + "/face_checks/" + std::to_string(i);
        FaceCheckRecord fc;
        fc.q = need_int(faces[i], "q", pp);
        fc.i = need_int(faces[i], "i", pp);
        fc.sample = grasspoint_from_json(need(faces[i], "sample", pp), pp + "/sample");
        c.face_checks.push_back(std::move(fc));
    }
    return c;
}

}  // namespace grassfold
