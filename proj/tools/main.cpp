// monoval command line: evaluate monomial valuations, export Newton
// polyhedra and chi functions, run subdivisions and dual graphs, compute
// multiplicity invariants, and drive the deterministic report suites.
//
// Exit codes: 0 success / all assertions pass, 1 suite assertion failure,
// 2 usage or input errors.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "monoval/monoval.hpp"

namespace {

using namespace monoval;

QVec parse_weight_list(const std::string& text) {
    QVec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(Rational::parse(item));
    }
    if (out.empty()) throw std::invalid_argument("empty weight list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    Json j;
    in >> j;
    return j;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << text;
}

struct EvalOptions {
    std::string model_path, poly, point;
    bool vertices = false;
    std::string out;
};

int cmd_eval(const EvalOptions& opt) {
    const SupportSet f = parse_support(opt.poly);
    std::ostringstream os;
    if (!opt.model_path.empty()) {
        const Json j = load_json(opt.model_path);
        if (j.contains("nodes")) {
            const BlowupTree tree = tree_from_json(j);
            const SurfaceModel model = build_model(tree);
            auto [graph, data] = dual_graph(tree);
            if (opt.vertices) {
                os << "vertex,chi\n";
                for (int i = 1; i <= model.curve_count(); ++i)
                    os << i << "," << eval_on_model(model, f, vertex_point(graph, i)).str()
                       << "\n";
            } else {
                const QVec w = parse_weight_list(opt.point);
                WeightPoint p;
                const auto ids = graph.vertex_ids();
                if (w.size() != ids.size())
                    throw std::invalid_argument("point size must match the vertex count");
                for (std::size_t i = 0; i < ids.size(); ++i)
                    if (!w[i].is_zero()) p.weights[ids[i]] = w[i];
                os << eval_on_model(model, f, p).str() << "\n";
            }
        } else {
            const DualComplex dc = complex_from_json(j);
            const auto ids = dc.vertex_ids();
            if (static_cast<int>(ids.size()) != f.arity())
                throw std::invalid_argument("polynomial arity must match the vertex count");
            if (opt.vertices) {
                os << "vertex,chi\n";
                for (std::size_t i = 0; i < ids.size(); ++i) {
                    QVec t(ids.size(), Rational(0));
                    t[i] = Rational(1, static_cast<long>(dc.b(ids[i])));
                    os << ids[i] << "," << str_or_inf(eval_valuation(t, f)) << "\n";
                }
            } else {
                const QVec t = parse_weight_list(opt.point);
                os << str_or_inf(eval_valuation(t, f)) << "\n";
            }
        }
    } else {
        const QVec t = parse_weight_list(opt.point);
        os << str_or_inf(eval_valuation(t, f)) << "\n";
    }
    emit(opt.out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact monomial valuations on dual complexes"};
    app.require_subcommand(1);
    std::function<int()> action;

    // eval
    auto opt_eval = std::make_shared<EvalOptions>();
    {
        auto* sub = app.add_subcommand("eval", "evaluate v(f) at a weight point");
        sub->add_option("--model", opt_eval->model_path, "dual complex or blowup tree JSON");
        sub->add_option("--poly", opt_eval->poly, "polynomial, e.g. \"x^2+x*y^3\"")->required();
        sub->add_option("--point", opt_eval->point, "weights \"1/2,1/2\"");
        sub->add_flag("--vertices", opt_eval->vertices, "list chi at every vertex");
        sub->add_option("--out", opt_eval->out, "output file");
        sub->callback([&, opt_eval]() { action = [opt_eval]() { return cmd_eval(*opt_eval); }; });
    }

    // chi
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto* sub = app.add_subcommand("chi", "export chi_f on a weighted simplex as JSON");
        sub->add_option("--poly", (*opts)["poly"], "polynomial")->required();
        sub->add_option("--b", (*opts)["b"], "simplex multiplicities \"1,1\"")->required();
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts]() {
            action = [opts]() {
                const SupportSet f = parse_support((*opts)["poly"]);
                const QVec b = parse_weight_list((*opts)["b"]);
                const auto chi = chi_on_face(f, b);
                Face face;
                for (std::size_t i = 0; i < b.size(); ++i) face.push_back(static_cast<int>(i + 1));
                emit((*opts)["out"], chi_to_json(chi, face).dump(2) + "\n");
                return 0;
            };
        });
    }

    // newton
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto* sub = app.add_subcommand("newton", "extremal points of the Newton polyhedron");
        sub->add_option("--poly", (*opts)["poly"], "polynomial")->required();
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts]() {
            action = [opts]() {
                const SupportSet f = parse_support((*opts)["poly"]);
                Json out;
                out["arity"] = f.arity();
                Json pts = Json::array();
                for (const auto& e : extremal_exponents(f)) pts.push_back(e);
                out["extremal"] = pts;
                emit((*opts)["out"], out.dump(2) + "\n");
                return 0;
            };
        });
    }

    // subdivide
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto simplicial = std::make_shared<bool>(false);
        auto* sub = app.add_subcommand("subdivide", "special subdivision Delta^eps(v)");
        sub->add_option("--complex", (*opts)["complex"], "dual complex JSON")->required();
        sub->add_option("--sigma", (*opts)["sigma"], "face, e.g. \"1,2\"")->required();
        sub->add_option("--point", (*opts)["point"],
                        "weights of v over all vertex ids, e.g. \"1/2,1/2,0\"")
            ->required();
        sub->add_option("--eps", (*opts)["eps"], "epsilon in (0,1)")->required();
        sub->add_flag("--simplicial", *simplicial, "apply star-preserving barycentric refinement");
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts, simplicial]() {
            action = [opts, simplicial]() {
                const DualComplex dc = complex_from_json(load_json((*opts)["complex"]));
                const Face sigma = sorted_face(parse_int_list((*opts)["sigma"]));
                const QVec weights = parse_weight_list((*opts)["point"]);
                const auto ids = dc.vertex_ids();
                if (weights.size() != ids.size())
                    throw std::invalid_argument("point size must match the vertex count");
                WeightPoint v;
                for (std::size_t i = 0; i < ids.size(); ++i)
                    if (!weights[i].is_zero()) v.weights[ids[i]] = weights[i];
                auto [pc, h] = special_subdivide(dc, sigma, v, Rational::parse((*opts)["eps"]));
                Json out;
                out["projective"] = is_projective(pc, h, dc);
                out["simplicial"] = is_simplicial(pc);
                if (*simplicial) {
                    const PolyComplex tri = barycentric_outside_star(pc);
                    out["complex"] = polycomplex_to_json(tri);
                    out["refined_simplicial"] = is_simplicial(tri);
                } else {
                    out["complex"] = polycomplex_to_json(pc);
                }
                emit((*opts)["out"], out.dump(2) + "\n");
                return 0;
            };
        });
    }

    // dualgraph
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto* sub = app.add_subcommand("dualgraph", "dual graph of a blowup tree");
        sub->add_option("--tree", (*opts)["tree"], "blowup tree JSON")->required();
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts]() {
            action = [opts]() {
                const BlowupTree tree = tree_from_json(load_json((*opts)["tree"]));
                auto [graph, data] = dual_graph(tree);
                Json out;
                out["complex"] = complex_to_json(graph);
                out["intersection_matrix"] = data.matrix;
                out["b"] = data.b;
                emit((*opts)["out"], out.dump(2) + "\n");
                return 0;
            };
        });
    }

    // alpha
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto* sub = app.add_subcommand("alpha", "alpha invariants of a monomial valuation");
        sub->add_option("--weights", (*opts)["weights"], "full-support weights \"1,2\"")->required();
        sub->add_option("--oracle", (*opts)["oracle"], "oracle steps, default \"4,8,16\"");
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts]() {
            action = [opts]() {
                const QVec t = parse_weight_list((*opts)["weights"]);
                std::vector<int> steps = {4, 8, 16};
                if (!(*opts)["oracle"].empty()) {
                    steps.clear();
                    for (int s : parse_int_list((*opts)["oracle"])) steps.push_back(s);
                }
                const auto av = alpha(t, steps);
                std::ostringstream os;
                os << "i,exact";
                for (int n : av.oracle_steps) os << ",oracle_n" << n;
                os << "\n";
                for (std::size_t i = 0; i < av.exact.size(); ++i) {
                    os << i << "," << av.exact[i].str();
                    for (std::size_t k = 0; k < av.oracle.size(); ++k)
                        os << "," << av.oracle[k][i].str();
                    os << "\n";
                }
                emit((*opts)["out"], os.str());
                return 0;
            };
        });
    }

    // volume
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto n = std::make_shared<int>(0);
        auto* sub = app.add_subcommand("volume", "volume of a monomial valuation");
        sub->add_option("--weights", (*opts)["weights"], "full-support weights")->required();
        sub->add_option("--n", *n, "counting-oracle step (0 = skip)");
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts, n]() {
            action = [opts, n]() {
                const QVec t = parse_weight_list((*opts)["weights"]);
                std::ostringstream os;
                os << "exact," << volume_exact(t).str() << "\n";
                if (*n > 0) os << "oracle_n" << *n << "," << volume_oracle(t, *n).str() << "\n";
                emit((*opts)["out"], os.str());
                return 0;
            };
        });
    }

    // beta
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto deg = std::make_shared<int>(20);
        auto n = std::make_shared<int>(512);
        auto* sub = app.add_subcommand("beta", "linking number of two monomial valuations");
        sub->add_option("--v", (*opts)["v"], "weights of v")->required();
        sub->add_option("--w", (*opts)["w"], "weights of w")->required();
        sub->add_option("--degree", *deg, "brute-force degree bound");
        sub->add_option("--n", *n, "graded-sequence limit step");
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts, deg, n]() {
            action = [opts, deg, n]() {
                const QVec v = parse_weight_list((*opts)["v"]);
                const QVec w = parse_weight_list((*opts)["w"]);
                std::ostringstream os;
                os << "closed_form," << linking_number(v, w).str() << "\n";
                os << "bruteforce_deg" << *deg << ","
                   << linking_number_bruteforce(v, w, *deg).str() << "\n";
                os << "ideal_limit_n" << *n << ","
                   << linking_number_ideal_approx(v, w, *n).str() << "\n";
                emit((*opts)["out"], os.str());
                return 0;
            };
        });
    }

    // report
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto cfg = std::make_shared<SuiteConfig>();
        auto* sub = app.add_subcommand("report", "run an experiment suite");
        sub->add_option("suite", (*opts)["suite"],
                        "one of thmA, thmAprime, izumi, L101, corC, corD, corE, t106, teissier")
            ->required();
        sub->add_option("--seed", cfg->seed, "PRNG seed");
        sub->add_option("--samples", cfg->samples, "sample count (0 = suite default)");
        sub->add_option("--model", cfg->model_json, "blowup tree JSON (izumi)");
        sub->add_option("--eps", cfg->eps, "pinned epsilon (L101)");
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts, cfg]() {
            action = [opts, cfg]() {
                const auto load_tree = [](const std::string& path) {
                    return tree_from_json(load_json(path));
                };
                const SuiteResult res = run_suite((*opts)["suite"], *cfg, load_tree);
                emit((*opts)["out"], res.render());
                return res.pass ? 0 : 1;
            };
        });
    }

    // plotdata
    {
        auto opts = std::make_shared<std::map<std::string, std::string>>();
        auto steps = std::make_shared<int>(101);
        auto index = std::make_shared<int>(1);
        auto* sub = app.add_subcommand("plotdata", "sampled function graphs as CSV");
        sub->add_option("kind", (*opts)["kind"], "chi-edge | alpha-segment | newton")->required();
        sub->add_option("--poly", (*opts)["poly"], "polynomial (chi-edge, newton)");
        sub->add_option("--b", (*opts)["b"], "simplex multiplicities (chi-edge)");
        sub->add_option("--from", (*opts)["from"], "segment start weights (alpha-segment)");
        sub->add_option("--to", (*opts)["to"], "segment end weights (alpha-segment)");
        sub->add_option("--steps", *steps, "sample count, default 101");
        sub->add_option("--index", *index, "alpha index (alpha-segment)");
        sub->add_option("--out", (*opts)["out"], "output file");
        sub->callback([&, opts, steps, index]() {
            action = [opts, steps, index]() {
                const std::string kind = (*opts)["kind"];
                std::ostringstream os;
                if (kind == "chi-edge") {
                    const SupportSet f = parse_support((*opts)["poly"]);
                    const QVec b = (*opts)["b"].empty() ? QVec(f.arity(), Rational(1))
                                                        : parse_weight_list((*opts)["b"]);
                    if (f.arity() != 2 || b.size() != 2)
                        throw std::invalid_argument("chi-edge needs a two-variable setup");
                    const auto chi = chi_on_face(f, b);
                    os << "parameter,value\n";
                    for (int k = 0; k < *steps; ++k) {
                        const Rational s(k, *steps - 1);
                        const QVec t = {(Rational(1) - s) / b[0], s / b[1]};
                        os << s.str() << "," << chi.eval(t).str() << "\n";
                    }
                } else if (kind == "alpha-segment") {
                    const QVec from = parse_weight_list((*opts)["from"]);
                    const QVec to = parse_weight_list((*opts)["to"]);
                    os << "parameter,value\n";
                    for (int k = 0; k < *steps; ++k) {
                        const Rational s(k, *steps - 1);
                        const QVec t = ((Rational(1) - s) * from) + (s * to);
                        const auto av = alpha(t, {});
                        os << s.str() << "," << av.exact.at(*index).str() << "\n";
                    }
                } else if (kind == "newton") {
                    const SupportSet f = parse_support((*opts)["poly"]);
                    os << "extremal\n";
                    for (const auto& e : extremal_exponents(f)) {
                        for (std::size_t i = 0; i < e.size(); ++i)
                            os << (i ? " " : "") << e[i];
                        os << "\n";
                    }
                } else {
                    throw std::invalid_argument("unknown plotdata kind '" + kind + "'");
                }
                emit((*opts)["out"], os.str());
                return 0;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action ? action() : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
