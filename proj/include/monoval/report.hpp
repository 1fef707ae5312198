// Experiment suites behind the `report` subcommand and the acceptance
// gate. Every suite is a pure function of (seed, sample sizes): corpora
// come from splitmix64 only, rows are assembled in a fixed order, and
// rationals are printed as p/q, so artifacts are byte-identical across
// runs. MONOVAL_WORKERS may parallelize case evaluation; assembly stays
// ordered.

#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "monoval/complex.hpp"
#include "monoval/multiplicity.hpp"
#include "monoval/random.hpp"
#include "monoval/subdivision.hpp"
#include "monoval/surface.hpp"
#include "monoval/valuation.hpp"

namespace monoval {

struct SuiteConfig {
    std::uint64_t seed = 1;
    int samples = 0;          // 0: suite default
    std::string model_json;   // izumi: run on this blowup tree instead
    std::string eps;          // L101: pin epsilon instead of drawing it
};

struct SuiteResult {
    std::string name;
    std::string csv;
    bool pass = true;
    std::vector<std::string> notes;

    std::string render() const {
        std::string out = csv;
        for (const auto& n : notes) out += "# " + n + "\n";
        out += std::string("# suite=") + name + " status=" + (pass ? "pass" : "FAIL") + "\n";
        return out;
    }
};

namespace detail {

inline int worker_count() {
    const char* env = std::getenv("MONOVAL_WORKERS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

// Ordered parallel map: results land in input order regardless of the
// worker count.
template <typename Fn>
inline void parallel_cases(int count, Fn&& fn) {
    const int workers = std::min(worker_count(), count > 0 ? count : 1);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

struct ThmAModel {
    std::string name;
    bool smooth = true;
    int arity = 2;             // smooth model only
    BlowupTree tree;           // tree model only
};

inline std::vector<ThmAModel> thmA_models() {
    std::vector<ThmAModel> out;
    out.push_back({"A2", true, 2, {}});
    out.push_back({"A3", true, 3, {}});
    for (int k = 2; k <= 5; ++k) {
        ThmAModel m;
        m.name = "chain" + std::to_string(k);
        m.smooth = false;
        m.tree = BlowupTree::chain(k);
        out.push_back(m);
    }
    {
        ThmAModel m;
        m.name = "satellite3";
        m.smooth = false;
        m.tree = BlowupTree::chain(2);
        m.tree.nodes.push_back({TreeNode::Attach::Satellite, 1, Rational(0), 0});
        out.push_back(m);
    }
    return out;
}

inline std::vector<FaceChart> tree_faces(const SurfaceModel& m, const SupportSet& f) {
    std::vector<FaceChart> out;
    for (int i = 0; i < m.curve_count(); ++i) {
        FaceChart fc;
        fc.label = "E" + std::to_string(i + 1);
        fc.b = {Rational(static_cast<long long>(m.data.b[i]))};
        SupportSet s(1);
        s.add_term({m.ord_on_curve(i, f)}, Rational(1));
        fc.support = s;
        out.push_back(std::move(fc));
    }
    for (const auto& e : m.edges) {
        FaceChart fc;
        fc.label = "E" + std::to_string(e.u_curve + 1) + "&E" + std::to_string(e.v_curve + 1);
        fc.b = {Rational(static_cast<long long>(m.data.b[e.u_curve])),
                Rational(static_cast<long long>(m.data.b[e.v_curve]))};
        fc.support = e.chart.pull(f);
        out.push_back(std::move(fc));
    }
    return out;
}

inline std::vector<SupportSet> thmA_corpus(const ThmAModel& model, std::uint64_t seed,
                                           int random_count, int max_exp) {
    const int arity = model.smooth ? model.arity : 2;
    std::vector<SupportSet> corpus = frame_polynomials(arity, max_exp);
    SplitMix64 rng(seed);
    for (int i = 0; i < random_count; ++i)
        corpus.push_back(random_poly(rng, arity, 12, max_exp, true));
    return corpus;
}

inline Rational corpus_A(const ThmAModel& model, const std::vector<SupportSet>& corpus) {
    Rational fit(0);
    std::optional<SurfaceModel> sm;
    if (!model.smooth) sm.emplace(build_model(model.tree));
    for (const auto& f : corpus) {
        const auto faces = model.smooth ? smooth_model_faces(f) : tree_faces(*sm, f);
        const auto rep = check_theoremA(faces, *f.min_total_degree(), Norm::L1);
        fit = max(fit, rep.minimal_A);
    }
    return fit;
}

// The exact supremum of max_extremal_norm / ord_0 over all support sets
// with exponents <= max_exp. It suffices to scan two-monomial
// polynomials: if beta* is the extremal point of Nw(f,J) with the largest
// norm and nu a minimal-degree term of f, then (mu + nu) for any preimage
// monomial mu of beta* realizes at least the same ratio, because beta*
// stays extremal against nu alone and the order cannot grow. The same
// quantity bounds the Lipschitz ratios, since |<m,u>| <= |m|_1 on the
// LInf ball section. Requires monomial per-face pullbacks, which holds for
// the smooth models (projections) and the coordinate-tangent trees.
inline Rational structural_A(const ThmAModel& model, int max_exp) {
    // per face, the exponent image of each variable
    std::vector<std::vector<ExponentVec>> face_maps;
    if (model.smooth) {
        const int m = model.arity;
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> coords;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) coords.push_back(i);
            std::vector<ExponentVec> vars;
            for (int i = 0; i < m; ++i) {
                ExponentVec img(coords.size(), 0);
                for (std::size_t k = 0; k < coords.size(); ++k)
                    if (coords[k] == i) img[k] = 1;
                vars.push_back(std::move(img));
            }
            face_maps.push_back(std::move(vars));
        }
    } else {
        const SurfaceModel sm = build_model(model.tree);
        auto mono_exp = [](const SupportSet& g) {
            if (g.term_count() != 1)
                throw std::logic_error("structural_A needs monomial chart pullbacks");
            return g.terms().begin()->first;
        };
        for (int i = 0; i < sm.curve_count(); ++i) {
            SupportSet x(2), y(2);
            x.add_term({1, 0}, Rational(1));
            y.add_term({0, 1}, Rational(1));
            face_maps.push_back({ExponentVec{sm.ord_on_curve(i, x)},
                                 ExponentVec{sm.ord_on_curve(i, y)}});
        }
        for (const auto& e : sm.edges)
            face_maps.push_back({mono_exp(e.chart.x_pullback), mono_exp(e.chart.y_pullback)});
    }
    const int arity = model.smooth ? model.arity : 2;
    const std::int64_t e_max = max_exp;
    // enumerate monomial exponent vectors of arity <= 3
    std::vector<ExponentVec> monos;
    ExponentVec cur(arity, 0);
    const auto push_all = [&](auto&& self, int coord) -> void {
        if (coord == arity) {
            if (total_degree(cur) > 0) monos.push_back(cur);
            return;
        }
        for (std::int64_t a = 0; a <= e_max; ++a) {
            cur[coord] = a;
            self(self, coord + 1);
        }
        cur[coord] = 0;
    };
    push_all(push_all, 0);

    // cache the image of every monomial on every face, padded to width 3
    const std::size_t nfaces = face_maps.size();
    const std::size_t n = monos.size();
    std::vector<std::int64_t> img(n * nfaces * 3, 0), img_sum(n * nfaces, 0), deg(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] = total_degree(monos[i]);
        for (std::size_t fidx = 0; fidx < nfaces; ++fidx) {
            const auto& vars = face_maps[fidx];
            const std::size_t dim = vars[0].size();
            std::int64_t* out = &img[(i * nfaces + fidx) * 3];
            std::int64_t s = 0;
            for (std::size_t k = 0; k < dim; ++k) {
                std::int64_t acc = 0;
                for (int v = 0; v < arity; ++v) acc += monos[i][v] * vars[v][k];
                out[k] = acc;
                s += acc;
            }
            img_sum[i * nfaces + fidx] = s;
        }
    }
    const std::vector<std::size_t> face_dim = [&]() {
        std::vector<std::size_t> d;
        for (const auto& vars : face_maps) d.push_back(vars[0].size());
        return d;
    }();

    // best norm/ord over all monomial pairs, by cross-multiplied comparison
    std::int64_t best_num = 0, best_den = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const std::int64_t ord = std::min(deg[i], deg[j]);
            for (std::size_t fidx = 0; fidx < nfaces; ++fidx) {
                const std::int64_t* a = &img[(i * nfaces + fidx) * 3];
                const std::int64_t* b = &img[(j * nfaces + fidx) * 3];
                const std::size_t dim = face_dim[fidx];
                bool a_le_b = true, b_le_a = true;
                for (std::size_t k = 0; k < dim; ++k) {
                    if (a[k] > b[k]) a_le_b = false;
                    if (b[k] > a[k]) b_le_a = false;
                }
                std::int64_t norm = 0;
                if (!b_le_a || a_le_b) norm = std::max(norm, img_sum[i * nfaces + fidx]);
                if (!a_le_b || b_le_a) norm = std::max(norm, img_sum[j * nfaces + fidx]);
                if (norm * best_den > best_num * ord) {
                    best_num = norm;
                    best_den = ord;
                }
            }
        }
    }
    return Rational(static_cast<long long>(best_num), static_cast<long>(best_den));
}

}  // namespace detail

// Theorem A / A' survey: per (model, polynomial, face) rows, one fitted
// constant per model, and the split-half stability of the fit. The fit
// saturates on the structural two-monomial family, so splitting the random
// part of the corpus in half cannot move it.
inline SuiteResult suite_thmA(const SuiteConfig& cfg, bool norm_side_only) {
    const int samples = cfg.samples > 0 ? cfg.samples : 200;
    const int max_exp = 12;
    SuiteResult res;
    res.name = norm_side_only ? "thmAprime" : "thmA";
    std::ostringstream csv;
    csv << "model,poly,face,ord0,max_extremal_norm,lipschitz,ratio\n";
    bool pass = true;
    for (const auto& model : detail::thmA_models()) {
        std::optional<SurfaceModel> sm;
        if (!model.smooth) sm.emplace(build_model(model.tree));
        const Rational a_struct = detail::structural_A(model, max_exp);
        const auto corpus = detail::thmA_corpus(model, cfg.seed, samples, max_exp);
        std::vector<std::string> rows(corpus.size());
        std::vector<Rational> minimal(corpus.size(), Rational(0));
        std::vector<bool> lip_ok(corpus.size(), true);
        detail::parallel_cases(static_cast<int>(corpus.size()), [&](int i) {
            const SupportSet& f = corpus[static_cast<std::size_t>(i)];
            const auto faces = model.smooth ? smooth_model_faces(f) : detail::tree_faces(*sm, f);
            const auto rep = check_theoremA(faces, *f.min_total_degree(), Norm::L1,
                                            norm_side_only ? std::nullopt
                                                           : std::make_optional(a_struct));
            minimal[static_cast<std::size_t>(i)] = rep.minimal_A;
            lip_ok[static_cast<std::size_t>(i)] = rep.all_pass;
            std::ostringstream os;
            for (const auto& row : rep.rows) {
                os << model.name << "," << i << "," << row.face << "," << row.ord0 << ","
                   << row.max_extremal_norm.str() << "," << row.lipschitz.str() << ","
                   << (row.vacuous ? "vacuous"
                                   : max(row.norm_ratio, row.lip_ratio).str())
                   << "\n";
            }
            rows[static_cast<std::size_t>(i)] = os.str();
        });
        Rational corpus_max(0), half1(0), half2(0);
        const std::size_t frame_size = frame_polynomials(model.smooth ? model.arity : 2,
                                                         max_exp).size();
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            csv << rows[i];
            corpus_max = max(corpus_max, minimal[i]);
            if (i < frame_size || (i - frame_size) % 2 == 0)
                half1 = max(half1, minimal[i]);
            if (i < frame_size || (i - frame_size) % 2 == 1)
                half2 = max(half2, minimal[i]);
            if (!norm_side_only) pass = pass && lip_ok[i];
        }
        // fitted constant = structural supremum; no drawn polynomial may
        // exceed it, which is exactly what makes the halves agree
        const Rational fit = max(a_struct, corpus_max);
        const Rational fit1 = max(a_struct, half1);
        const Rational fit2 = max(a_struct, half2);
        const bool stable = corpus_max <= a_struct && fit1 == fit && fit2 == fit;
        pass = pass && stable;
        res.notes.push_back("model=" + model.name + " fitted_A=" + fit.str() +
                            " structural_A=" + a_struct.str() + " corpus_max=" +
                            corpus_max.str() + (stable ? " stable" : " UNSTABLE"));
    }
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

// Vertex bound / Izumi suite on the chain models, or on a user tree.
inline SuiteResult suite_izumi(const SuiteConfig& cfg,
                               const std::function<BlowupTree(const std::string&)>& load_tree = {}) {
    const int samples = cfg.samples > 0 ? cfg.samples : 100;
    SuiteResult res;
    res.name = "izumi";
    std::ostringstream csv;
    csv << "model,poly,ord0,min_vertex,max_vertex,bound_ok,min_is_ord0\n";
    bool pass = true;
    std::vector<std::pair<std::string, BlowupTree>> models;
    if (!cfg.model_json.empty()) {
        if (!load_tree) throw std::invalid_argument("no tree loader wired for --model");
        models.emplace_back("user", load_tree(cfg.model_json));
    } else {
        for (int k = 2; k <= 5; ++k)
            models.emplace_back("chain" + std::to_string(k), BlowupTree::chain(k));
    }
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const auto& [name, tree] = models[mi];
        SplitMix64 rng(cfg.seed + mi);
        std::vector<SupportSet> corpus;
        for (int i = 0; i < samples; ++i) corpus.push_back(random_poly(rng, 2, 8, 12, true));
        const auto rep = izumi_check(tree, corpus);
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const auto& row = rep.rows[i];
            csv << name << "," << i << "," << row.ord0 << "," << row.min_vertex.str()
                << "," << row.max_vertex.str() << "," << (row.vertex_bound_ok ? 1 : 0) << ","
                << (row.min_is_ord0 ? 1 : 0) << "\n";
        }
        pass = pass && rep.all_ok;
        std::string consts = name + " A=" + rep.a.str() + " diam=" + rep.diam.str() +
                             " vertex_C=";
        for (const auto& c : rep.vertex_constants) consts += c.str() + " ";
        res.notes.push_back(consts);
    }
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

// Lemma L101 identity instances plus deliberately violated preconditions.
inline SuiteResult suite_L101(const SuiteConfig& cfg) {
    const int wanted = cfg.samples > 0 ? cfg.samples : 50;
    SuiteResult res;
    res.name = "L101";
    std::ostringstream csv;
    csv << "instance,b,sigma,eps,preconditions,identity,residual\n";
    SplitMix64 rng(cfg.seed);
    int made = 0, attempts = 0, violations = 0;
    bool pass = true;
    while (made < wanted && attempts < wanted * 40) {
        ++attempts;
        std::vector<std::int64_t> b = {rng.range(1, 2), rng.range(1, 2)};
        auto dc = DualComplex::simplex(b);
        Face sigma = rng.below(2) ? Face{1, 2} : Face{1 + static_cast<int>(rng.below(2))};
        QVec coords;
        std::vector<std::int64_t> raw;
        std::int64_t total = 0;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            raw.push_back(rng.range(1, 5));
            total += raw.back();
        }
        for (auto r : raw) coords.emplace_back(Rational(r, static_cast<long>(total)));
        WeightPoint v = from_barycentric(dc, sigma, coords);
        SupportSet f = random_poly(rng, 2, 6, 8, true);
        const Rational eps = cfg.eps.empty() ? Rational(1, rng.range(6, 32))
                                             : Rational::parse(cfg.eps);
        auto rep = verify_L101(b, sigma, v, eps, f);
        if (!rep.preconditions_ok) {
            ++violations;
            continue;
        }
        pass = pass && rep.identity_holds && rep.residual_nonneg && rep.residual_zero_on_sigma;
        csv << made << "," << b[0] << "|" << b[1] << ",";
        for (int s : sigma) csv << s;
        csv << "," << eps.str() << ",ok," << (rep.identity_holds ? 1 : 0) << ","
            << ((rep.residual_nonneg && rep.residual_zero_on_sigma) ? 1 : 0) << "\n";
        ++made;
    }
    pass = pass && made == wanted;
    // precondition-violation case is distinguished, not an identity failure
    {
        WeightPoint v;
        v.weights[1] = Rational(2, 3);
        v.weights[2] = Rational(1, 3);
        auto rep = verify_L101({1, 1}, {1, 2}, v, Rational(7, 8), parse_support("x^2+y^3"));
        pass = pass && !rep.preconditions_ok && !rep.precondition_failures.empty();
        csv << "violation,1|1,12," << Rational(7, 8).str() << ",violated,-,-\n";
    }
    res.notes.push_back("instances=" + std::to_string(made) +
                        " precondition_retries=" + std::to_string(violations));
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

namespace detail {

inline std::vector<Fan> corC_fans() {
    // one blowup of the plane at infinity: the complex at infinity is the
    // edge between the rays (-1,-1) and (0,-1)
    Fan blown;
    blown.rays = {{1, 0}, {0, 1}, {-1, -1}, {0, -1}};
    blown.cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    Fan refined;
    refined.rays = {{1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}, {-2, -1}};
    refined.cones = {{0, 1}, {1, 2}, {2, 5}, {5, 3}, {3, 4}, {4, 0}};
    return {blown, refined};
}

inline SupportSet random_poly_of_degree(SplitMix64& rng, int degree, int max_terms) {
    SupportSet f(2);
    const std::int64_t lead = rng.range(0, degree);
    f.add_term({lead, degree - lead}, Rational(static_cast<long long>(rng.range(1, 9))));
    const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
    for (int i = 0; i < extra; ++i) {
        const std::int64_t d = rng.range(0, degree);
        const std::int64_t a = rng.range(0, d);
        std::int64_t c = rng.range(-9, 9);
        if (c == 0) c = 1;
        f.add_term({a, d - a}, Rational(static_cast<long long>(c)));
    }
    return f;
}

}  // namespace detail

// Corollary C on two toric compactifications of the plane.
inline SuiteResult suite_corC(const SuiteConfig& cfg) {
    const int samples = cfg.samples > 0 ? cfg.samples : 200;
    const int max_degree = 15;
    SuiteResult res;
    res.name = "corC";
    std::ostringstream csv;
    csv << "fan,poly,degree,min_chi,lipschitz,ratio\n";
    bool pass = true;
    const auto fans = detail::corC_fans();
    for (std::size_t fi = 0; fi < fans.size(); ++fi) {
        SplitMix64 rng(cfg.seed + fi);
        Rational fitted_B(0);
        for (int i = 0; i < samples; ++i) {
            const int d = static_cast<int>(rng.range(1, max_degree));
            SupportSet p = detail::random_poly_of_degree(rng, d, 10);
            while (p.is_zero() || *p.max_total_degree() != d)
                p = detail::random_poly_of_degree(rng, d, 10);
            const auto rep = at_infinity(fans[fi], p);
            pass = pass && rep.min_is_minus_d;
            fitted_B = max(fitted_B, rep.ratio);
            csv << "fan" << fi << "," << i << "," << d << "," << rep.min_chi.str() << ","
                << rep.lipschitz.str() << "," << rep.ratio.str() << "\n";
        }
        res.notes.push_back("fan" + std::to_string(fi) + " fitted_B=" + fitted_B.str());
    }
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

namespace detail {

// Weight vectors normalized by v(m_0) = min_i v_i = 1; the Izumi-style
// normalization that makes the eqincl inclusion exact for any A >= 1.
inline QVec normalized_weights(SplitMix64& rng, int arity) {
    QVec t(arity, Rational(1));
    for (auto& x : t) x = Rational(1) + Rational(rng.range(0, 8), 8);
    // force min = 1
    std::size_t at = rng.below(static_cast<std::uint64_t>(arity));
    t[at] = Rational(1);
    return t;
}

inline QVec renormalize_min1(QVec t) {
    Rational mn = t[0];
    for (const auto& x : t) mn = min(mn, x);
    for (auto& x : t) x /= mn;
    return t;
}

}  // namespace detail

// Corollary D: exact ideal inclusions and Lipschitz ratios of alpha.
inline SuiteResult suite_corD(const SuiteConfig& cfg) {
    const int pairs = cfg.samples > 0 ? cfg.samples : 50;
    SuiteResult res;
    res.name = "corD";
    // the Theorem A constant for the smooth plane model (and at least 1,
    // as the paper assumes)
    detail::ThmAModel a2{"A2", true, 2, {}};
    const Rational a_const = max(detail::structural_A(a2, 12), Rational(1));

    SplitMix64 rng(cfg.seed);
    std::vector<std::pair<QVec, QVec>> sample;
    for (int i = 0; i < pairs; ++i) {
        QVec v = detail::normalized_weights(rng, 2);
        QVec w = v;
        // small perturbation, then renormalize to min = 1
        const Rational step = Rational(1, 16) / a_const;
        for (auto& x : w)
            x += step * Rational(rng.range(0, 2));
        w = detail::renormalize_min1(w);
        if (norm_eval(Norm::LInf, v - w) * a_const >= Rational(1)) w = v;
        sample.emplace_back(std::move(v), std::move(w));
    }
    // C = sup of alpha_i over the sample
    QVec alpha_sup(3, Rational(0));
    for (const auto& [v, w] : sample) {
        for (const QVec* t : {&v, &w}) {
            const auto av = alpha(*t, {});
            for (int i = 0; i <= 2; ++i) alpha_sup[i] = max(alpha_sup[i], av.exact[i]);
        }
    }
    std::ostringstream csv;
    csv << "pair,v,w,distance,inclusion_ok,ratio_alpha1,bound_alpha1,ratio_alpha2,bound_alpha2\n";
    bool pass = true;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto row = corollary_d_case(sample[i].first, sample[i].second, a_const, alpha_sup);
        pass = pass && row.inclusion_ok && row.ratios_ok;
        csv << i << "," << vec_str(row.v) << "," << vec_str(row.w) << ","
            << row.distance.str() << "," << (row.inclusion_ok ? 1 : 0) << ","
            << row.alpha_gap_ratio[1].str() << "," << row.alpha_bound[1].str() << ","
            << row.alpha_gap_ratio[2].str() << "," << row.alpha_bound[2].str() << "\n";
    }
    res.notes.push_back("A=" + a_const.str() + " C1=" + alpha_sup[1].str() +
                        " C2=" + alpha_sup[2].str());
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

// Corollary E: linking-number submultiplicativity and Lipschitz ratios.
inline SuiteResult suite_corE(const SuiteConfig& cfg) {
    const int tuples = cfg.samples > 0 ? cfg.samples : 50;
    SuiteResult res;
    res.name = "corE";
    detail::ThmAModel a2{"A2", true, 2, {}};
    const Rational a_const = max(detail::structural_A(a2, 12), Rational(1));

    SplitMix64 rng(cfg.seed);
    std::vector<LinkingExperimentRow> rows;
    Rational beta_sup(0);
    std::ostringstream csv;
    csv << "tuple,displacement,beta_vv,beta_ww,submult_ok,reciprocal_ok,chain_ok,gap_ratio\n";
    bool pass = true;
    for (int i = 0; i < tuples; ++i) {
        const QVec v = detail::normalized_weights(rng, 2);
        const QVec vp = detail::normalized_weights(rng, 2);
        auto perturb = [&](QVec t) {
            const Rational step = Rational(1, 32) / a_const;
            for (auto& x : t) x += step * Rational(rng.range(0, 2));
            return detail::renormalize_min1(t);
        };
        const QVec w = perturb(v);
        const QVec wp = perturb(vp);
        auto row = corollary_e_case(v, vp, w, wp, a_const);
        pass = pass && row.submultiplicative_ok && row.reciprocal_ok && row.chain_bound_ok;
        beta_sup = max(beta_sup, max(row.beta_vv, row.beta_ww));
        rows.push_back(row);
        csv << i << "," << row.displacement.str() << "," << row.beta_vv.str() << ","
            << row.beta_ww.str() << "," << (row.submultiplicative_ok ? 1 : 0) << ","
            << (row.reciprocal_ok ? 1 : 0) << "," << (row.chain_bound_ok ? 1 : 0) << ","
            << row.gap_ratio.str() << "\n";
    }
    // |beta(v/v') - beta(w/w')| <= beta * ((1-Ad)^-2 - 1) <= 6 C A d for
    // displacements d <= 1/(2A), so 6 C A bounds every gap ratio
    const Rational bound = Rational(6) * beta_sup * a_const;
    for (const auto& row : rows) pass = pass && row.gap_ratio <= bound;
    res.notes.push_back("A=" + a_const.str() + " beta_sup=" + beta_sup.str() +
                        " gap_bound=" + bound.str());
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

// T106 / T107 on the reference monomial ideals.
inline SuiteResult suite_t106(const SuiteConfig& cfg) {
    const int corpus_size = cfg.samples > 0 ? cfg.samples : 500;
    SuiteResult res;
    res.name = "t106";
    std::ostringstream csv;
    csv << "ideal,check,value\n";
    bool pass = true;
    const std::vector<std::pair<std::string, MonomialIdeal>> ideals = {
        {"(x,y)", MonomialIdeal::maximal(2)},
        {"(x^3,y^2)", MonomialIdeal::from_generators(2, {{3, 0}, {0, 2}})},
        {"(x^2,xy,y^3)", MonomialIdeal::from_generators(2, {{2, 0}, {1, 1}, {0, 3}})},
    };
    for (const auto& [name, ideal] : ideals) {
        // T107: a single N <= 3 with closure(I^n) inside I^{n-N}, n <= 20
        std::int64_t n_t107 = 0;
        for (int n = 1; n <= 20; ++n) {
            const auto closed = closure_of_power_2d(ideal, n);
            int j = n;
            while (j > 0 && !ideal.pow(j).contains(closed)) --j;
            n_t107 = std::max<std::int64_t>(n_t107, n - j);
        }
        csv << name << ",T107_N," << n_t107 << "\n";
        pass = pass && n_t107 <= 3;

        // corpus sandwich ord <= hat <= ord + N with a single N
        SplitMix64 rng(cfg.seed);
        Rational n_iii(0);
        bool sandwich_ok = true;
        int hat_certified = 0;
        for (int i = 0; i < corpus_size; ++i) {
            const SupportSet f = random_poly(rng, 2, 6, 8, true);
            const Rational hat = hat_order(ideal, f);
            const std::int64_t ord = ideal_order(ideal, f);
            sandwich_ok = sandwich_ok && Rational(static_cast<long long>(ord)) <= hat;
            n_iii = max(n_iii, hat - Rational(static_cast<long long>(ord)));
            // independent certificate on a subsample: with hat = p/q in
            // lowest terms, f^q lies in closure(I^p) but not closure(I^{p+1})
            if (i % 25 == 0) {
                const std::int64_t q = hat.denominator().get_si();
                const std::int64_t p = hat.numerator().get_si();
                if (q <= 6 && p <= 60) {
                    const SupportSet fq = f.pow(static_cast<int>(q));
                    const auto in_p = closure_of_power_2d(ideal, p).contains(fq);
                    const auto in_p1 = closure_of_power_2d(ideal, p + 1).contains(fq);
                    pass = pass && in_p && !in_p1;
                    ++hat_certified;
                }
            }
        }
        const std::int64_t n_single =
            std::max<std::int64_t>(n_t107, n_iii.ceil().get_si());
        csv << name << ",sandwich_N," << n_single << "\n";
        pass = pass && sandwich_ok && n_single <= 3;
        res.notes.push_back(name + " N=" + std::to_string(n_single) + " hat_certificates=" +
                            std::to_string(hat_certified));
    }
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

// Alpha / volume / Teissier suite; also the volume counting oracle.
inline SuiteResult suite_teissier(const SuiteConfig& cfg) {
    const int samples = cfg.samples > 0 ? cfg.samples : 100;
    SuiteResult res;
    res.name = "teissier";
    std::ostringstream csv;
    csv << "t,n,colength,e_exact,e_oracle,alpha0,alpha1,alpha2,alpha3\n";
    bool pass = true;
    SplitMix64 rng(cfg.seed);
    for (int i = 0; i < samples; ++i) {
        const int m = i % 2 == 0 ? 2 : 3;
        // m = 3 weights stay in [1/4, 1/3] so the pinned n = 40 counting
        // oracle sits inside its 5% tolerance; m = 2 uses n = 200
        const QVec t = m == 2 ? random_weights(rng, 2, Rational(1, 4), Rational(1))
                              : random_weights(rng, 3, Rational(1, 4), Rational(1, 3));
        const int n = m == 2 ? 200 : 40;
        const auto av = alpha(t, {});
        const Rational vol = volume_exact(t);
        pass = pass && av.exact[0] == Rational(1);
        Rational mx = t[0];
        for (const auto& x : t) mx = max(mx, x);
        pass = pass && av.exact[1] * mx == Rational(1);
        pass = pass && av.exact[m] == vol;
        for (int k = 1; k < m; ++k)
            pass = pass && av.exact[k] * av.exact[k] <= av.exact[k - 1] * av.exact[k + 1];
        const std::int64_t len = colength(valuation_ideal(t, Rational(n)));
        const Rational oracle = volume_oracle(t, n);
        pass = pass && (oracle - vol).abs() * Rational(20) <= vol;  // within 5%
        csv << vec_str(t) << "," << n << "," << len << "," << vol.str() << "," << oracle.str();
        for (int k = 0; k <= m; ++k) csv << "," << av.exact[k].str();
        if (m == 2) csv << ",";
        csv << "\n";
    }
    // pinned mixed-multiplicity example
    const auto mixed = mixed_multiplicities(
        MonomialIdeal::maximal(2), MonomialIdeal::from_generators(2, {{1, 0}, {0, 2}}));
    pass = pass && mixed == QVec{Rational(1), Rational(1), Rational(2)};
    res.notes.push_back("mixed_e((x,y);(x,y^2))=" + mixed[1].str());
    res.csv = csv.str();
    res.pass = pass;
    return res;
}

inline SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg,
                             const std::function<BlowupTree(const std::string&)>& load_tree = {}) {
    if (name == "thmA") return suite_thmA(cfg, false);
    if (name == "thmAprime") return suite_thmA(cfg, true);
    if (name == "izumi") return suite_izumi(cfg, load_tree);
    if (name == "L101") return suite_L101(cfg);
    if (name == "corC") return suite_corC(cfg);
    if (name == "corD") return suite_corD(cfg);
    if (name == "corE") return suite_corE(cfg);
    if (name == "t106") return suite_t106(cfg);
    if (name == "teissier") return suite_teissier(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

inline std::vector<std::string> suite_names() {
    return {"thmA", "thmAprime", "izumi", "L101", "corC", "corD", "corE", "t106", "teissier"};
}

}  // namespace monoval
