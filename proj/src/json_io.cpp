#include "mxl/json_io.hpp"

#include "mxl/expr.hpp"

#include <cmath>
#include <stdexcept>

namespace mxl {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const GaussRational& c) { return c.to_string(); }

Json to_json(const TrigPoly& p) {
    Json j = Json::object();
    for (const auto& [f, c] : p.coeffs()) j[std::to_string(f)] = to_json(c);
    return j;
}

Json to_json(const LoopPoly& g) {
    Json terms = Json::array();
    for (const auto& [key, c] : g.coeffs())
        for (const auto& [f, coeff] : c.coeffs())
            terms.push_back({{"z", key.first}, {"zbar", key.second}, {"freq", f}, {"c", to_json(coeff)}});
    return {{"terms", terms}};
}

Json to_json(const StructureReport& s) {
    return {{"u_semiholomorphic", s.u_semiholomorphic}, {"ubar_semiholomorphic", s.ubar_semiholomorphic},
            {"v_semiholomorphic", s.v_semiholomorphic}, {"vbar_semiholomorphic", s.vbar_semiholomorphic},
            {"holomorphic", s.holomorphic},           {"u_convenient", s.u_convenient},
            {"v_convenient", s.v_convenient},         {"convenient", s.convenient}};
}

namespace {

Json point(const LatticePoint& p) { return Json::array({p.a, p.b}); }

Json optional_status(const std::optional<Status>& s) { return s ? Json(to_string(*s)) : Json(); }

Json verdicts(const std::vector<FaceVerdict>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
}

}  // namespace

Json to_json(const NewtonData& nd) {
    Json faces = Json::array();
    for (std::size_t i = 0; i < nd.faces.size(); ++i) {
        const Face& f = nd.faces[i];
        Json pts = Json::array();
        for (const auto& p : f.points) pts.push_back(point(p));
        faces.push_back({{"index", i + 1},
                         {"weight", Json::array({f.weight.p1, f.weight.p2})},
                         {"d", f.d},
                         {"k", rational_to_string(f.k)},
                         {"m", f.m},
                         {"s", f.s},
                         {"n", f.n},
                         {"left", point(f.left)},
                         {"right", point(f.right)},
                         {"points", pts}});
    }
    Json vertices = Json::array();
    for (const auto& v : nd.vertices) vertices.push_back({{"point", point(v.point)}, {"extreme", v.extreme}});
    Json support = Json::array();
    for (const auto& p : nd.support) support.push_back(point(p));
    return {{"N", nd.faces.size()}, {"support", support}, {"vertices", vertices}, {"faces", faces}};
}

Json to_json(const Verdict& v) {
    Json j = {{"status", to_string(v.status)},
              {"method", to_string(v.method)},
              {"rigorous", v.rigorous},
              {"tolerance", v.tolerance},
              {"grid", v.grid},
              {"min_value", v.min_value},
              {"margin", v.margin}};
    if (v.witness)
        j["witness"] = {{"u", to_json(v.witness->u)}, {"v", to_json(v.witness->v)}, {"residual", v.witness->residual}};
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json to_json(const FaceVerdict& v) {
    Json face = {{"kind", to_string(v.face.kind)}};
    if (v.face.kind == FaceKind::Vertex)
        face["point"] = point(v.face.point);
    else
        face["index"] = v.face.index + 1;
    return {{"face", face}, {"verdict", to_json(v.verdict)}};
}

Json to_json(const NondegReport& r) {
    Json j = {{"inner_nd", optional_status(r.inner_nd)},
              {"strong_inner_nd", optional_status(r.strong_inner_nd)},
              {"oka_nd", optional_status(r.oka_nd)},
              {"oka_strong_nd", optional_status(r.oka_strong_nd)},
              {"nice", optional_status(r.nice)},
              {"true_polynomial", optional_status(r.true_polynomial)},
              {"weakly_isolated", optional_status(r.weakly_isolated)},
              {"isolated", optional_status(r.isolated)},
              {"convenient", r.convenient},
              {"oka_weak", verdicts(r.oka_weak)},
              {"oka_strong", verdicts(r.oka_strong)},
              {"axis_weak", verdicts(r.axis_weak)},
              {"axis_strong", verdicts(r.axis_strong)},
              {"nice_vertices", verdicts(r.nice_vertices)},
              {"true_faces", verdicts(r.true_faces)}};
    j["notes"] = r.notes;
    return j;
}

Json to_json(const BraidWord& w) {
    return {{"strands", w.strands},
            {"letters", w.letters},
            {"word", w.to_string()},
            {"permutation", w.permutation()},
            {"components", w.components()}};
}

Json to_json(const GeometricBraid& b, bool with_samples) {
    Json j = {{"strands", b.strand_count()},
              {"samples", b.samples()},
              {"permutation", b.permutation},
              {"affine", b.affine},
              {"min_separation", b.min_separation}};
    if (with_samples) {
        Json st = Json::array();
        for (const auto& s : b.strands) {
            Json pts = Json::array();
            for (Complex z : s) pts.push_back(to_json(z));
            st.push_back(pts);
        }
        j["points"] = st;
    }
    return j;
}

Json to_json(const FibrationCertificate& c) {
    Json j = {{"status", to_string(c.status)},
              {"m", c.m},
              {"min_arg_derivative", std::isfinite(c.min_arg_derivative) ? Json(c.min_arg_derivative) : Json()},
              {"fd_error", c.fd_error},
              {"samples", c.samples}};
    if (c.witness_t) j["witness_t"] = *c.witness_t;
    if (c.witness_point) j["witness_point"] = to_json(*c.witness_point);
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json to_json(const LinkDescription& d) {
    Json j = {{"kind", to_string(d.kind)}};
    j["word"] = d.word ? to_json(*d.word) : Json();
    j["axis"] = d.axis;
    j["core_u"] = d.core_u;
    j["core_v"] = d.core_v;
    j["components"] = d.components;
    j["piece_components"] = d.piece_components;
    j["wrapping"] = d.wrapping;
    j["nesting"] = d.nesting;
    return j;
}

Json to_json(const TowerSpec& s) {
    Json levels = Json::array();
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        levels.push_back({{"level", i + 1},
                          {"s", s.s[i]},
                          {"m", s.m[i]},
                          {"r", s.r[i]},
                          {"k", s.k[i]},
                          {"a", {{"r_power", s.a[i].r_power}, {"t", to_json(s.a[i].t)}}},
                          {"loop", to_json(s.levels[i].loop)},
                          {"word", to_json(extract_word(s.levels[i].braid))},
                          {"certificate", to_json(s.certificates[i])}});
    }
    return {{"levels", levels}};
}

Json to_json(const RealizationReport& r) {
    Json j = {{"status", to_string(r.status)},
              {"expected", to_json(r.expected)},
              {"link", to_json(r.link)},
              {"nondegeneracy", to_json(r.nondeg)}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

GaussRational coefficient_from_json(const Json& j) {
    if (j.is_number()) return dyadic_round(Complex(j.get<double>(), 0), 40);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return dyadic_round(Complex(j[0].get<double>(), j[1].get<double>()), 40);
    if (j.is_string()) {
        MixedPoly c = parse_poly(j.get<std::string>());
        if (c.size() != 1 || !c.terms().count(Exponents{})) throw std::invalid_argument("coefficient is not a constant");
        return c.terms().begin()->second;
    }
    throw std::invalid_argument("coefficient must be a literal string, a number or [re, im]");
}

LoopPoly loop_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw std::invalid_argument("loop needs a \"terms\" array");
    LoopPoly g;
    for (const auto& t : j["terms"]) {
        const int z = t.value("z", 0), zbar = t.value("zbar", 0), f = t.value("freq", 0);
        if (z < 0 || zbar < 0) throw std::invalid_argument("negative exponent in loop term");
        if (!t.contains("c")) throw std::invalid_argument("loop term without coefficient \"c\"");
        g.add(z, zbar, f, coefficient_from_json(t["c"]));
    }
    if (g.is_zero()) throw std::invalid_argument("loop is identically zero");
    return g;
}

std::vector<TowerInput> tower_from_json(const Json& j, int samples) {
    if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array() || j["levels"].empty())
        throw std::invalid_argument("tower needs a non-empty \"levels\" array");
    std::vector<TowerInput> out;
    for (const auto& level : j["levels"]) {
        LoopPoly g;
        if (level.contains("loop")) {
            g = loop_from_json(level["loop"]);
        } else if (level.contains("word")) {
            BraidWord w = BraidWord::parse(level["word"].get<std::string>(), level.value("strands", 0));
            g = braid_from_word(w, level.value("harmonics", 0), level.value("affine", false), samples).loop;
        } else {
            throw std::invalid_argument("each level needs \"word\" or \"loop\"");
        }
        out.push_back(tower_input(g, samples));
    }
    return out;
}

}  // namespace mxl
