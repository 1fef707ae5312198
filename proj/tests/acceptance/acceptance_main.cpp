// Acceptance gate: runs the twelve end-to-end criteria and prints one
// PASS/FAIL line per criterion. Exit status 0 iff everything passes.
//
// Usage: acceptance [path-to-monoval-cli]
// The CLI path is needed by the determinism criterion; without it that
// criterion fails.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "monoval/monoval.hpp"

using namespace monoval;

namespace {

int g_failures = 0;

void report_line(int index, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", index, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

// 1. concavity, integrality and eval-consistency of chi on random sparse
//    polynomials (m = 2, 3; <= 12 terms, exponents <= 20)
bool criterion1() {
    SplitMix64 rng(101);
    for (int iter = 0; iter < 1000; ++iter) {
        const int m = iter % 2 == 0 ? 2 : 3;
        const SupportSet f = random_poly(rng, m, 12, 20, false);
        const QVec ones(m, Rational(1));
        const auto chi = chi_on_face(f, ones);
        for (const auto& form : chi.forms()) {
            for (const auto& c : form.coeffs)
                if (!c.is_integer()) return false;
        }
        auto rnd_point = [&]() {
            // random rational point of the unit simplex
            std::vector<std::int64_t> raw;
            std::int64_t total = 0;
            for (int i = 0; i < m; ++i) {
                raw.push_back(rng.range(0, 16));
                total += raw.back();
            }
            QVec t(m);
            if (total == 0) {
                t.assign(m, Rational(0));
                t[0] = Rational(1);
                return t;
            }
            for (int i = 0; i < m; ++i) t[i] = Rational(raw[i], static_cast<long>(total));
            return t;
        };
        for (int k = 0; k < 200; ++k) {
            const QVec t = rnd_point();
            if (chi.eval(t) != *eval_valuation(t, f)) return false;
        }
        for (int k = 0; k < 50; ++k) {
            const QVec t = rnd_point(), s = rnd_point();
            const Rational lam(rng.range(0, 8), 8);
            const QVec mid = (lam * t) + ((Rational(1) - lam) * s);
            if (chi.eval(mid) < lam * chi.eval(t) + (Rational(1) - lam) * chi.eval(s))
                return false;
        }
    }
    return true;
}

// 5. subdivision suite on random small complexes
bool criterion5(std::string& detail) {
    SplitMix64 rng(505);
    auto random_complex = [&](int shape) {
        DualComplex dc;
        switch (shape % 3) {
            case 0:
                return DualComplex::simplex({rng.range(1, 3), rng.range(1, 3)});
            case 1:
                return DualComplex::simplex({rng.range(1, 3), rng.range(1, 3), rng.range(1, 3)});
            default: {
                // triangle with a pendant vertex
                DualComplex c = DualComplex::simplex({rng.range(1, 2), rng.range(1, 2), 1});
                c.add_vertex(4, rng.range(1, 2));
                c.add_face({3, 4});
                return c;
            }
        }
    };
    for (int iter = 0; iter < 100; ++iter) {
        DualComplex dc = random_complex(iter);
        // pick a random face of size >= 1
        std::vector<Face> faces(dc.faces().begin(), dc.faces().end());
        const Face sigma = faces[rng.below(faces.size())];
        QVec coords;
        std::vector<std::int64_t> raw;
        std::int64_t total = 0;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            raw.push_back(rng.range(1, 4));
            total += raw.back();
        }
        for (auto r : raw) coords.emplace_back(Rational(r, static_cast<long>(total)));
        const WeightPoint v = from_barycentric(dc, sigma, coords);
        const Rational eps(1, rng.range(2, 8));
        auto [pc, h] = special_subdivide(dc, sigma, v, eps);
        if (!is_projective(pc, h, dc)) {
            detail = "projectivity failed at instance " + std::to_string(iter);
            return false;
        }
        const PolyComplex tri = barycentric_outside_star(pc);
        if (!is_simplicial(tri)) {
            detail = "refinement not simplicial at instance " + std::to_string(iter);
            return false;
        }
        // star of sigma^eps preserved bit-exactly
        for (const auto& [f, info] : pc.faces) {
            if (!std::includes(f.begin(), f.end(), pc.sigma_scaled.begin(),
                               pc.sigma_scaled.end()))
                continue;
            if (!tri.faces.count(f)) {
                detail = "star face lost at instance " + std::to_string(iter);
                return false;
            }
            for (int id : f)
                if (tri.position(id) != pc.position(id)) {
                    detail = "star vertex moved at instance " + std::to_string(iter);
                    return false;
                }
        }
        if (!covers_exactly(dc, tri)) {
            detail = "cells do not tile at instance " + std::to_string(iter);
            return false;
        }
    }
    return true;
}

// 6. volume formula: covolume path exact, counting oracle within 5%
bool criterion6(std::string& detail) {
    SplitMix64 rng(606);
    for (int iter = 0; iter < 100; ++iter) {
        const int m = iter % 2 == 0 ? 2 : 3;
        // the n = 40 oracle needs modest weights in m = 3 to sit inside
        // its 5% tolerance; m = 2 runs at n = 200
        const QVec t = m == 2 ? random_weights(rng, 2, Rational(1, 4), Rational(1))
                              : random_weights(rng, 3, Rational(1, 4), Rational(1, 3));
        const Rational exact = volume_exact(t);
        const auto av = alpha(t, {});
        if (av.exact[m] != exact) {
            detail = "covolume path mismatch at " + vec_str(t);
            return false;
        }
        const int n = m == 2 ? 200 : 40;
        const Rational oracle = volume_oracle(t, n);
        if ((oracle - exact).abs() * Rational(20) > exact) {
            detail = "oracle off by more than 5% at " + vec_str(t) + " n=" + std::to_string(n);
            return false;
        }
    }
    return true;
}

// 8. linking numbers: brute force vs closed form vs graded-sequence limit
bool criterion8(std::string& detail) {
    SplitMix64 rng(808);
    // spec triple first
    {
        const QVec v = {Rational(1), Rational(2)}, w = {Rational(1), Rational(1)};
        if (linking_number(v, w) != Rational(2)) return false;
        if (linking_number_bruteforce(v, w, 20) != Rational(2)) return false;
        const Rational approx = linking_number_ideal_approx(v, w, 512);
        if (approx < Rational(1, 2) ||
            (approx - Rational(1, 2)) * Rational(50) > Rational(1, 2))
            return false;
    }
    for (int iter = 0; iter < 20; ++iter) {
        const QVec v = random_weights(rng, 2, Rational(1, 2), Rational(2));
        const QVec w = random_weights(rng, 2, Rational(1, 2), Rational(2));
        const Rational closed = linking_number(v, w);
        if (linking_number_bruteforce(v, w, 20) != closed) {
            detail = "brute force disagrees at " + vec_str(v) + " / " + vec_str(w);
            return false;
        }
        const Rational approx = linking_number_ideal_approx(v, w, 512);
        const Rational inv = Rational(1) / closed;
        if (approx < inv || (approx - inv) * Rational(50) > inv) {
            detail = "limit outside 2% at " + vec_str(v) + " / " + vec_str(w);
            return false;
        }
    }
    return true;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 12. CLI determinism and the exit-code contract
bool criterion12(const std::string& cli, std::string& detail) {
    if (cli.empty()) {
        detail = "no CLI path given";
        return false;
    }
    const std::string tmp1 = "acceptance_report_run1.csv";
    const std::string tmp2 = "acceptance_report_run2.csv";
    auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    for (const std::string suite : {"izumi", "t106"}) {
        const std::string common = "report " + suite + " --seed 7 --samples 12 --out ";
        const int c1 = run(common + tmp1);
        const int c2 = run(common + tmp2);
        if (c1 != 0 || c2 != 0) {
            detail = "suite " + suite + " exited " + std::to_string(c1);
            return false;
        }
        if (slurp(tmp1) != slurp(tmp2)) {
            detail = "suite " + suite + " not byte-identical across runs";
            return false;
        }
    }
    std::remove(tmp1.c_str());
    std::remove(tmp2.c_str());
    if (run("report nosuchsuite") != 2) {
        detail = "unknown suite should exit 2";
        return false;
    }
    if (run("eval --poly \"x^^\" --point 1") != 2) {
        detail = "parse error should exit 2";
        return false;
    }
    if (run("eval --poly \"x^2+x*y^3\" --point \"1/2,1/2\"") != 0) {
        detail = "plain eval should exit 0";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    std::string detail;

    report_line(1, "chi concave, integral, consistent on 1000 random polynomials",
                criterion1());

    {
        SuiteConfig cfg;
        cfg.seed = 11;
        cfg.samples = 200;
        const auto res = suite_thmA(cfg, true);
        std::string note;
        for (const auto& n : res.notes) note += n + "; ";
        report_line(2, "theorem A' fitted constants stable across corpus halves", res.pass,
                    note);
    }
    {
        SuiteConfig cfg;
        cfg.seed = 12;
        cfg.samples = 100;
        const auto res = suite_izumi(cfg);
        report_line(3, "vertex bound / Izumi with intersection constants", res.pass);
    }
    {
        SuiteConfig cfg;
        cfg.seed = 13;
        cfg.samples = 50;
        const auto res = suite_L101(cfg);
        report_line(4, "lemma L101 exact identity on 50 monomial-model instances", res.pass,
                    res.notes.empty() ? "" : res.notes.front());
    }

    detail.clear();
    report_line(5, "subdivision suite: projective, simplicial, star-preserving, tiling",
                criterion5(detail), detail);

    detail.clear();
    report_line(6, "volume formula exact with counting oracle within 5%", criterion6(detail),
                detail);

    {
        SuiteConfig cfg;
        cfg.seed = 17;
        cfg.samples = 100;
        const auto res = suite_teissier(cfg);
        report_line(7, "alpha suite: p8 smooth case, Teissier, mixed example", res.pass,
                    res.notes.empty() ? "" : res.notes.front());
    }

    detail.clear();
    report_line(8, "linking numbers: three routes agree", criterion8(detail), detail);

    {
        SuiteConfig cfg;
        cfg.seed = 19;
        cfg.samples = 50;
        const auto d = suite_corD(cfg);
        const auto e = suite_corE(cfg);
        report_line(9, "corollary D/E: exact inclusions and Lipschitz ratios",
                    d.pass && e.pass,
                    (d.notes.empty() ? "" : d.notes.front() + "; ") +
                        (e.notes.empty() ? "" : e.notes.front()));
    }
    {
        SuiteConfig cfg;
        cfg.seed = 23;
        cfg.samples = 500;
        const auto res = suite_t106(cfg);
        std::string note;
        for (const auto& n : res.notes) note += n + "; ";
        report_line(10, "T106/T107 on the reference monomial ideals", res.pass, note);
    }
    {
        SuiteConfig cfg;
        cfg.seed = 29;
        cfg.samples = 200;
        const auto res = suite_corC(cfg);
        std::string note;
        for (const auto& n : res.notes) note += n + "; ";
        report_line(11, "corollary C on two toric compactifications", res.pass, note);
    }

    detail.clear();
    report_line(12, "CLI determinism and exit-code contract", criterion12(cli, detail), detail);

    if (g_failures == 0) {
        std::printf("all 12 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
