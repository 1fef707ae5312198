// JSON readers and writers for the external interfaces: polynomials, dual
// complexes, fans, blowup trees, subdivision complexes with provenance, and
// chi exports. Rationals travel as "p/q" strings so nothing ever goes
// through floating point.

#pragma once

#include <json.hpp>

#include <string>

#include "monoval/complex.hpp"
#include "monoval/fan.hpp"
#include "monoval/piecewise.hpp"
#include "monoval/subdivision.hpp"
#include "monoval/support_set.hpp"
#include "monoval/surface.hpp"

namespace monoval {

using Json = nlohmann::json;

inline Json rational_to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("expected rational as integer or \"p/q\" string");
}

// {"arity": m, "terms": [{"exp": [..], "coeff": "p/q"}]}
inline Json support_to_json(const SupportSet& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json t;
        t["exp"] = e;
        t["coeff"] = rational_to_json(c);
        terms.push_back(t);
    }
    return Json{{"arity", f.arity()}, {"terms", terms}};
}

inline SupportSet support_from_json(const Json& j) {
    SupportSet f(j.at("arity").get<int>());
    for (const auto& t : j.at("terms")) {
        ExponentVec e = t.at("exp").get<ExponentVec>();
        f.add_term(e, rational_from_json(t.at("coeff")));
    }
    return f;
}

// {"vertices":[{"id":1,"b":1},...],"faces":[[1],[2],[1,2],...]}
inline Json complex_to_json(const DualComplex& c) {
    Json verts = Json::array();
    for (const auto& [id, b] : c.multiplicities()) verts.push_back(Json{{"id", id}, {"b", b}});
    Json faces = Json::array();
    for (const auto& f : c.faces()) faces.push_back(f);
    return Json{{"vertices", verts}, {"faces", faces}};
}

inline DualComplex complex_from_json(const Json& j) {
    DualComplex c;
    for (const auto& v : j.at("vertices"))
        c.add_vertex(v.at("id").get<int>(), v.at("b").get<std::int64_t>());
    for (const auto& f : j.at("faces")) c.add_face(f.get<Face>());
    return c;
}

// {"rays": [[1,0],[1,1],[0,1]], "cones": [[0,1],[1,2]]}
inline Json fan_to_json(const Fan& f) {
    return Json{{"rays", f.rays}, {"cones", f.cones}};
}

inline Fan fan_from_json(const Json& j) {
    Fan f;
    f.rays = j.at("rays").get<std::vector<Ray>>();
    f.cones = j.at("cones").get<std::vector<std::vector<int>>>();
    return f;
}

// {"nodes":[{"parent":null},{"parent":0,"at":"free","coord":"0"},
//           {"parent":1,"at":"satellite","with":0}]}
inline Json tree_to_json(const BlowupTree& t) {
    Json nodes = Json::array();
    for (const auto& n : t.nodes) {
        Json j;
        if (n.attach == TreeNode::Attach::Root) {
            j["parent"] = nullptr;
        } else if (n.attach == TreeNode::Attach::Free) {
            j["parent"] = n.parent;
            j["at"] = "free";
            j["coord"] = n.coord.str();
        } else {
            j["parent"] = n.parent;
            j["at"] = "satellite";
            j["with"] = n.with;
        }
        nodes.push_back(j);
    }
    return Json{{"nodes", nodes}};
}

inline BlowupTree tree_from_json(const Json& j) {
    BlowupTree t;
    for (const auto& n : j.at("nodes")) {
        TreeNode node;
        if (n.at("parent").is_null()) {
            node.attach = TreeNode::Attach::Root;
        } else {
            node.parent = n.at("parent").get<int>();
            const std::string at = n.at("at").get<std::string>();
            if (at == "free") {
                node.attach = TreeNode::Attach::Free;
                node.coord = rational_from_json(n.at("coord"));
            } else if (at == "satellite") {
                node.attach = TreeNode::Attach::Satellite;
                node.with = n.at("with").get<int>();
            } else {
                throw std::invalid_argument("node attachment must be 'free' or 'satellite'");
            }
        }
        t.nodes.push_back(node);
    }
    return t;
}

inline Json weights_to_json(const QVec& t) {
    Json out = Json::array();
    for (const auto& x : t) out.push_back(rational_to_json(x));
    return out;
}

inline QVec weights_from_json(const Json& j) {
    QVec out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

// chi export: forms with their domain face
inline Json chi_to_json(const PiecewiseAffineConcave& chi, const Face& face) {
    Json forms = Json::array();
    for (const auto& f : chi.forms()) {
        Json jf;
        jf["coeffs"] = weights_to_json(f.coeffs);
        jf["const"] = rational_to_json(f.constant);
        forms.push_back(jf);
    }
    return Json{{"face", face}, {"forms", forms}};
}

// Subdivision export including provenance for the new vertices.
inline Json polycomplex_to_json(const PolyComplex& pc) {
    Json verts = Json::array();
    for (const auto& [id, pv] : pc.vertices) {
        Json jv;
        jv["id"] = id;
        jv["pos"] = weights_to_json(pv.pos);
        switch (pv.origin) {
            case VertexOrigin::Original:
                jv["from"] = Json{{"kind", "original"}};
                break;
            case VertexOrigin::Scaled:
                jv["from"] = Json{{"kind", "scaled"},
                                  {"j", pv.scaled_from},
                                  {"eps", rational_to_json(pc.eps)},
                                  {"v", weights_to_json(pc.v_pos)}};
                break;
            case VertexOrigin::Barycenter:
                jv["from"] = Json{{"kind", "barycenter"}, {"of", pv.barycenter_of}};
                break;
        }
        verts.push_back(jv);
    }
    Json faces = Json::array();
    for (const auto& [f, info] : pc.faces) faces.push_back(f);
    return Json{{"axes", pc.axes}, {"vertices", verts}, {"faces", faces}};
}

}  // namespace monoval
