// Dual complexes Delta(X,Z): abstract simplicial complexes with a positive
// integer multiplicity b_i per vertex. Points of Delta are sparse rational
// weight vectors t normalized by sum_i b_i t_i = 1 (so v(Z) = 1 and
// v(E_i) = t_i); vertex i sits at t = (1/b_i) delta_i.

#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoval/rational.hpp"
#include "monoval/vec.hpp"

namespace monoval {

using Face = std::vector<int>;  // sorted vertex ids

inline Face sorted_face(Face f) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

class DualComplex {
public:
    void add_vertex(int id, std::int64_t b) {
        if (mult_.count(id)) throw std::invalid_argument("duplicate vertex id");
        mult_[id] = b;
        faces_.insert(Face{id});
    }

    void add_face(Face f) {
        f = sorted_face(std::move(f));
        if (f.empty()) throw std::invalid_argument("empty face");
        faces_.insert(std::move(f));
    }

    // Full simplex on ids 1..k with the given multiplicities.
    static DualComplex simplex(const std::vector<std::int64_t>& b) {
        DualComplex c;
        const int k = static_cast<int>(b.size());
        for (int i = 0; i < k; ++i) c.add_vertex(i + 1, b[i]);
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Face f;
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i)) f.push_back(i + 1);
            c.add_face(f);
        }
        return c;
    }

    const std::map<int, std::int64_t>& multiplicities() const { return mult_; }
    const std::set<Face>& faces() const { return faces_; }

    std::int64_t b(int id) const {
        auto it = mult_.find(id);
        if (it == mult_.end()) throw std::invalid_argument("unknown vertex id");
        return it->second;
    }

    bool is_face(const Face& f) const { return faces_.count(sorted_face(f)) > 0; }

    std::vector<int> vertex_ids() const {
        std::vector<int> out;
        for (const auto& [id, b] : mult_) out.push_back(id);
        return out;
    }

    // Empty result means the complex is well-formed.
    std::vector<std::string> validate() const {
        std::vector<std::string> errors;
        for (const auto& [id, b] : mult_) {
            if (b < 1) errors.push_back("vertex " + std::to_string(id) + ": multiplicity < 1");
            if (!faces_.count(Face{id}))
                errors.push_back("vertex " + std::to_string(id) + ": missing singleton face");
        }
        for (const auto& f : faces_) {
            for (int id : f)
                if (!mult_.count(id))
                    errors.push_back("face references unknown vertex " + std::to_string(id));
            // downward closure: all nonempty proper subsets must be faces
            if (f.size() > 1) {
                const std::size_t n = f.size();
                for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
                    Face sub;
                    for (std::size_t i = 0; i < n; ++i)
                        if (mask & (1u << i)) sub.push_back(f[i]);
                    if (!faces_.count(sub)) {
                        std::string s = "face {";
                        for (int id : f) s += std::to_string(id) + " ";
                        s += "} missing subset {";
                        for (int id : sub) s += std::to_string(id) + " ";
                        s += "}";
                        errors.push_back(s);
                    }
                }
            }
        }
        if (!connected()) errors.push_back("1-skeleton is disconnected");
        return errors;
    }

    bool connected() const {
        if (mult_.empty()) return true;
        std::set<int> seen;
        std::queue<int> q;
        q.push(mult_.begin()->first);
        seen.insert(mult_.begin()->first);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& f : faces_) {
                if (f.size() != 2) continue;
                int other = -1;
                if (f[0] == v) other = f[1];
                else if (f[1] == v) other = f[0];
                if (other != -1 && seen.insert(other).second) q.push(other);
            }
        }
        return seen.size() == mult_.size();
    }

    // Star of a face: L = vertices whose join with sigma is a face, plus
    // every face containing sigma.
    struct Star {
        std::vector<int> link_vertices;  // L, includes the vertices of sigma
        std::set<Face> faces;
    };

    Star star(const Face& sigma_in) const {
        const Face sigma = sorted_face(sigma_in);
        if (!is_face(sigma)) throw std::invalid_argument("star of a non-face");
        Star s;
        for (const auto& [id, b] : mult_) {
            Face j = sigma;
            j.push_back(id);
            if (is_face(j)) s.link_vertices.push_back(id);
        }
        for (const auto& f : faces_) {
            if (std::includes(f.begin(), f.end(), sigma.begin(), sigma.end()))
                s.faces.insert(f);
        }
        return s;
    }

    // Closed star: faces of faces containing sigma.
    std::set<Face> closed_star(const Face& sigma_in) const {
        const Face sigma = sorted_face(sigma_in);
        std::set<Face> out;
        for (const auto& f : faces_) {
            if (!std::includes(f.begin(), f.end(), sigma.begin(), sigma.end())) continue;
            const std::size_t n = f.size();
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                Face sub;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) sub.push_back(f[i]);
                out.insert(sub);
            }
        }
        return out;
    }

    // Diameter of the 1-skeleton in the graph metric (edge count).
    int graph_diameter() const {
        int diam = 0;
        for (const auto& [src, b] : mult_) {
            std::map<int, int> dist;
            std::queue<int> q;
            dist[src] = 0;
            q.push(src);
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (const auto& f : faces_) {
                    if (f.size() != 2) continue;
                    int other = -1;
                    if (f[0] == v) other = f[1];
                    else if (f[1] == v) other = f[0];
                    if (other != -1 && !dist.count(other)) {
                        dist[other] = dist[v] + 1;
                        q.push(other);
                    }
                }
            }
            if (dist.size() != mult_.size())
                throw std::domain_error("graph diameter of disconnected complex");
            for (const auto& [v, d] : dist) diam = std::max(diam, d);
        }
        return diam;
    }

    // Diameter in the LInf metric on weight coordinates; vertex i has the
    // single nonzero coordinate 1/b_i.
    Rational linf_diameter() const {
        if (mult_.size() < 2) return Rational(0);
        Rational best(0);
        for (const auto& [id, b] : mult_) best = max(best, Rational(1, static_cast<long>(b)));
        return best;
    }

private:
    std::map<int, std::int64_t> mult_;
    std::set<Face> faces_;
};

// A point of Delta: sparse nonnegative weights over vertex ids with
// sum b_i t_i = 1 and support equal to a face.
struct WeightPoint {
    std::map<int, Rational> weights;  // zero entries are not stored

    Rational at(int id) const {
        auto it = weights.find(id);
        return it == weights.end() ? Rational(0) : it->second;
    }

    Face support() const {
        Face f;
        for (const auto& [id, w] : weights)
            if (!w.is_zero()) f.push_back(id);
        return f;
    }
};

inline WeightPoint vertex_point(const DualComplex& c, int id) {
    WeightPoint p;
    p.weights[id] = Rational(1, static_cast<long>(c.b(id)));
    return p;
}

inline bool weight_point_valid(const DualComplex& c, const WeightPoint& t) {
    Rational s(0);
    for (const auto& [id, w] : t.weights) {
        if (w.sign() < 0) return false;
        s += w * Rational(static_cast<long long>(c.b(id)));
    }
    if (s != Rational(1)) return false;
    return c.is_face(t.support());
}

// Weights t_j = coords_j / b_j for barycentric coords on the face J.
inline WeightPoint from_barycentric(const DualComplex& c, const Face& j_in, const QVec& coords) {
    const Face j = sorted_face(j_in);
    if (!c.is_face(j)) throw std::invalid_argument("from_barycentric: not a face");
    if (coords.size() != j.size())
        throw std::invalid_argument("from_barycentric: coordinate count mismatch");
    Rational s(0);
    for (const auto& x : coords) {
        if (x.sign() < 0) throw std::invalid_argument("from_barycentric: negative coordinate");
        s += x;
    }
    if (s != Rational(1)) throw std::invalid_argument("from_barycentric: coordinates must sum to 1");
    WeightPoint p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (coords[i].is_zero()) continue;
        p.weights[j[i]] = coords[i] / Rational(static_cast<long long>(c.b(j[i])));
    }
    if (!c.is_face(p.support()))
        throw std::invalid_argument("from_barycentric: support is not a face");
    return p;
}

inline QVec to_barycentric(const DualComplex& c, const Face& j, const WeightPoint& p) {
    QVec out(j.size(), Rational(0));
    for (std::size_t i = 0; i < j.size(); ++i)
        out[i] = p.at(j[i]) * Rational(static_cast<long long>(c.b(j[i])));
    return out;
}

// Divisor D = sum a_i E_i supported on Z.
struct DivisorOnZ {
    std::map<int, Rational> coeff;
};

// v(D) = sum a_i t_i; in particular v(Z) = 1 and v(E_i) = t_i.
inline Rational eval_divisor(const DualComplex& c, const WeightPoint& t, const DivisorOnZ& d) {
    Rational acc(0);
    for (const auto& [id, a] : d.coeff) {
        if (!c.multiplicities().count(id))
            throw std::invalid_argument("divisor references unknown vertex id");
        acc += a * t.at(id);
    }
    return acc;
}

}  // namespace monoval
