// acceptance gate: one line per criterion, nonzero exit if any fails

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "fixtures.hpp"
#include "laxcheck.hpp"

#include "laxcat/descent.hpp"
#include "laxcat/presentation.hpp"
#include "laxcat/toolkit.hpp"

using namespace laxcat;

namespace {

int failures = 0;

struct check_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string &why) {
    if (!ok) throw check_failed(why);
}

template <typename Body>
void criterion(int k, const char *label, long budget_ms, Body body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string note;
    try {
        body();
    } catch (const std::exception &e) {
        ok = false;
        note = e.what();
    }
    long ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count());
    if (ok && budget_ms > 0 && ms > budget_ms) {
        ok = false;
        note = "exceeded the " + std::to_string(budget_ms) + " ms budget";
    }
    if (ok)
        std::printf("[%d/9] %s: pass (%ld ms)\n", k, label, ms);
    else
        std::printf("[%d/9] %s: FAIL (%ld ms) - %s\n", k, label, ms, note.c_str());
    if (!ok) ++failures;
}

// ---- 1: serialization round trip on random presentations ----

void random_round_trips() {
    std::mt19937 rng(12345);
    int done = 0;
    for (int i = 0; done < 100 && i < 2000; ++i) {
        std::string text;
        if (i % 2 == 0) {
            int n = 2 + static_cast<int>(rng() % 4);
            text = "poset R" + std::to_string(i) + " {";
            for (int e = 0; e < n; ++e) text += " e" + std::to_string(e);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (rng() % 5 < 2)
                        text += " e" + std::to_string(a) + " <= e" + std::to_string(b);
            text += " }";
        } else {
            int n = 2 + static_cast<int>(rng() % 4);
            int edges = 1 + static_cast<int>(rng() % 4);
            text = "freeacyclic G" + std::to_string(i) + " { objects:";
            for (int v = 0; v < n; ++v) text += " v" + std::to_string(v);
            text += " ;";
            for (int e = 0; e < edges; ++e) {
                int a = static_cast<int>(rng() % static_cast<unsigned>(n));
                int b = static_cast<int>(rng() % static_cast<unsigned>(n));
                if (a == b) continue;
                if (a > b) std::swap(a, b);
                text += " edge g" + std::to_string(e) + " : v" + std::to_string(a) + " -> v" +
                        std::to_string(b) + " ;";
            }
            text += " }";
        }
        auto docs = parse_documents(text);
        doc_env env = elaborate(docs);
        cat_ptr c = env.categories.at(docs[0].name);
        if (c->object_count() > 5 || c->morphism_count() > 12) continue;
        auto docs2 = parse_documents(serialize(*c));
        cat_ptr c2 = elaborate(docs2).categories.at(c->name);
        require(*c == *c2, "round trip changed " + c->name);
        ++done;
    }
    require(done == 100, "only " + std::to_string(done) + " presentations fit the size caps");
}

// ---- 2: constructions agree with the exhaustive (co)limit oracle ----

void constructions_vs_oracle() {
    cat_ptr one = fixtures::one_cat(), two = fixtures::two_cat();
    int n_terminal = 0, n_initial = 0, n_product = 0, n_coproduct = 0, n_pullback = 0;
    for (cat_ptr x : {fixtures::x2(), fixtures::x3(), fixtures::diamond()}) {
        x_structure xs(x);
        std::vector<lax_object> pool;
        for (const functor &s : enumerate_functors(one, x)) pool.push_back(make_lax_object(s));
        for (const functor &s : enumerate_functors(two, x)) pool.push_back(make_lax_object(s));
        auto ambient = [&](int t) {
            std::vector<lax_object> out;
            for (int k = 0; k < 3; ++k) out.push_back(pool[(t + k) % pool.size()]);
            return out;
        };

        lax_object t = terminal_laxcomma(xs);
        lax_object z = initial_laxcomma(xs);
        for (int v = 0; v < 7; ++v) {
            require(laxcheck::check_terminal(t, ambient(v)), "terminal refuted over " + x->name);
            ++n_terminal;
            require(laxcheck::check_initial(z, ambient(v)), "initial refuted over " + x->name);
            ++n_initial;
        }

        for (int v = 0; v < 7; ++v) {
            const lax_object &a = pool[v % pool.size()];
            const lax_object &b = pool[(v * 3 + 1) % pool.size()];
            lax_prod_data p = product_laxcomma(a, b, xs);
            require(laxcheck::check_product(p, ambient(v)),
                    "product refuted over " + x->name);
            ++n_product;
            lax_coprod_data c = coproduct_laxcomma(a, b);
            require(laxcheck::check_coproduct(c, ambient(v)),
                    "coproduct refuted over " + x->name);
            ++n_coproduct;
        }

        int made = 0;
        for (const auto &c : pool) {
            for (const auto &a : pool) {
                for (const auto &b : pool) {
                    for (const auto &f : enumerate_lax_hom(a, c)) {
                        for (const auto &g : enumerate_lax_hom(b, c)) {
                            if (made >= 7) break;
                            lax_pb_data p = pullback_laxcomma(f, g, xs);
                            require(laxcheck::check_pullback(p, ambient(made)),
                                    "pullback refuted over " + x->name);
                            ++n_pullback;
                            ++made;
                        }
                        if (made >= 7) break;
                    }
                    if (made >= 7) break;
                }
                if (made >= 7) break;
            }
            if (made >= 7) break;
        }
    }
    require(n_terminal >= 20, "too few terminal instances");
    require(n_initial >= 20, "too few initial instances");
    require(n_product >= 20, "too few product instances");
    require(n_coproduct >= 20, "too few coproduct instances");
    require(n_pullback >= 20, "too few pullback instances");
}

// ---- 3: exponentials curry bijectively and naturally ----

void exponential_bijection() {
    cat_ptr x = fixtures::x3();
    x_structure xs(x);
    std::vector<lax_object> pool;
    for (cat_ptr w : {fixtures::empty_cat(), fixtures::one_cat(), fixtures::two_cat()})
        for (const functor &s : enumerate_functors(w, x)) pool.push_back(make_lax_object(s));
    require(pool.size() == 10, "unexpected pool size");
    for (const auto &a : pool) {
        for (const auto &b : pool) {
            lax_exp_data e = exponential_laxcomma(a, b, xs);
            for (const auto &c : pool) {
                lax_prod_data ca = product_laxcomma(c, a, xs);
                auto ms = enumerate_lax_hom(ca.obj, b);
                auto hs = enumerate_lax_hom(c, e.obj);
                require(ms.size() == hs.size(),
                        "hom count mismatch under " + a.name() + " => " + b.name());
                std::vector<lax_morphism> curried;
                for (const auto &m : ms) {
                    lax_morphism h = curry_lax(e, ca, m, xs);
                    require(uncurry_lax(e, ca, h, xs) == m, "uncurry does not restore");
                    for (const auto &prev : curried)
                        require(!(prev == h), "currying collapsed two maps");
                    curried.push_back(h);
                }
            }
            // naturality in the probe: curry(m (k x id)) = curry(m) k
            const lax_object &c1 = pool[3], &c2 = pool[4];
            lax_prod_data p1 = product_laxcomma(c1, a, xs);
            lax_prod_data p2 = product_laxcomma(c2, a, xs);
            for (const auto &k : enumerate_lax_hom(c2, c1)) {
                lax_morphism kxid = product_of_morphisms(p2, p1, k, identity_lax(a), xs);
                for (const auto &m : enumerate_lax_hom(p1.obj, b)) {
                    lax_morphism lhs = curry_lax(e, p2, compose_lax(m, kxid), xs);
                    lax_morphism rhs = compose_lax(curry_lax(e, p1, m, xs), k);
                    require(lhs == rhs, "currying is not natural");
                }
            }
        }
    }
}

// ---- 4: pointwise left extensions are left adjoint to restriction ----

void kan_adjunction() {
    cat_ptr one = fixtures::one_cat(), two = fixtures::two_cat();
    std::vector<functor> fs;
    for (cat_ptr w : {one, two})
        for (cat_ptr y : {one, two})
            for (const functor &f : enumerate_functors(w, y)) fs.push_back(f);
    int instances = 0;
    for (cat_ptr x : {fixtures::x2(), fixtures::x3()}) {
        x_structure xs(x);
        for (const functor &f : fs) {
            for (const functor &a : enumerate_functors(f.source, x)) {
                lan_data ld = left_kan(f, a, xs);
                for (const functor &b : enumerate_functors(f.target, x)) {
                    auto fore = enumerate_nat_trans(ld.ext, b);
                    auto back = enumerate_nat_trans(a, compose_functor(b, f));
                    require(fore.size() == back.size(),
                            "adjunct hom counts differ over " + x->name);
                    for (const auto &phi : fore) {
                        nat_trans psi = kan_transpose_back(ld, f, phi);
                        require(kan_mate(ld, f, psi, b).components == phi.components,
                                "transpose then mate is not the identity");
                    }
                    for (const auto &psi : back) {
                        nat_trans phi = kan_mate(ld, f, psi, b);
                        require(kan_transpose_back(ld, f, phi).components == psi.components,
                                "mate then transpose is not the identity");
                    }
                }
                ++instances;
            }
        }
    }
    require(instances >= 20, "too few extension instances");
}

// ---- 5: coequalizers stabilize or report non-finiteness ----

void coequalizer_bounds() {
    cat_ptr x = fixtures::x2();
    cat_ptr one = fixtures::one_cat(), two = fixtures::two_cat();
    x_structure xs(x);
    std::vector<lax_object> pool;
    for (cat_ptr w : {one, two})
        for (const functor &s : enumerate_functors(w, x)) pool.push_back(make_lax_object(s));
    auto probes = canonical_probes(x, 3);
    int stabilized = 0;
    for (const auto &a : pool) {
        for (const auto &b : pool) {
            auto homs = enumerate_lax_hom(a, b);
            for (size_t i = 0; i < homs.size(); ++i) {
                for (size_t j = i; j < homs.size(); ++j) {
                    try {
                        lax_coeq_data c = coequalizer_laxcomma(homs[i], homs[j], xs);
                        require(laxcheck::check_coequalizer(homs[i], homs[j], c.proj, probes),
                                "coequalizer refuted");
                        ++stabilized;
                    } catch (const error &e) {
                        require(e.code() == errc::coequalizer_not_finite_within_bound,
                                std::string("unexpected failure: ") + e.what());
                    }
                }
            }
        }
    }
    require(stabilized >= 10, "too few stabilizing pairs: " + std::to_string(stabilized));

    // the object-picking parallel pair whose quotient is a free monoid
    functor ps = constant_functor("ps", one, two, 0);
    functor pt = constant_functor("pt", one, two, 1);
    functor c0 = constant_functor("c0", one, x, 0);
    functor d0 = constant_functor("d0", two, x, 0);
    lax_morphism m1 = make_lax_morphism(
        ps, make_nat_trans("u1", c0, compose_functor(d0, ps), {x->identity(0)}), d0);
    lax_morphism m2 = make_lax_morphism(
        pt, make_nat_trans("u2", c0, compose_functor(d0, pt), {x->identity(0)}), d0);
    bool threw = false;
    try {
        coequalizer_laxcomma(m1, m2, xs);
    } catch (const error &e) {
        threw = e.code() == errc::coequalizer_not_finite_within_bound;
    }
    require(threw, "free-monoid quotient did not report non-finiteness");
}

// ---- 6: the constant-structure adjunctions on both sides ----

void adjunction_chain() {
    cat_ptr x = fixtures::x2();
    cat_ptr one = fixtures::one_cat(), two = fixtures::two_cat();
    x_structure xs(x);
    auto probes = canonical_probes(x, 4);

    adjunction_report lt = check_triangle_identities({one, two}, probes, true, xs);
    require(lt.ok, "left triangles: " + lt.detail);
    adjunction_report rt = check_triangle_identities({one, two}, probes, false, xs);
    require(rt.ok, "right triangles: " + rt.detail);

    int zero = *xs.initial(), top = *xs.terminal();
    for (cat_ptr w : {one, two}) {
        for (const auto &p : probes) {
            adjunction_report lb = check_constant_structure_bijection(w, zero, p, true, xs);
            require(lb.ok, "left bijection: " + lb.detail);
            adjunction_report rb = check_constant_structure_bijection(w, top, p, false, xs);
            require(rb.ok, "right bijection: " + rb.detail);
            require(enumerate_lax_hom(lax_left(w, xs), p).size() ==
                        enumerate_functors(w, p.base()).size(),
                    "free side hom count is off");
            require(enumerate_lax_hom(p, lax_right(w, xs)).size() ==
                        enumerate_functors(p.base(), w).size(),
                    "cofree side hom count is off");
        }
    }

    // hom sizes survive truncation to a finite category
    std::vector<lax_object> objs = {lax_left(one, xs), lax_right(one, xs), lax_left(two, xs),
                                    lax_right(two, xs)};
    truncation tr = truncate(objs);
    require(tr.cat->object_count() == 4, "truncation lost objects");
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            require(tr.cat->hom(i, j).size() ==
                        enumerate_lax_hom(objs[static_cast<size_t>(i)],
                                          objs[static_cast<size_t>(j)])
                            .size(),
                    "truncation hom mismatch");
    cat_ptr bases[2] = {one, two};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            require(tr.cat->hom(2 * i, 2 * j + 1).size() ==
                        enumerate_functors(bases[i], bases[j]).size(),
                    "free-to-cofree hom is not the functor count");
}

// ---- 7: descent classification behaves ----

void descent_classes() {
    for (cat_ptr x : {fixtures::x2(), fixtures::x3(), fixtures::diamond()}) {
        x_structure xs(x);
        for (int q = 0; q < x->morphism_count(); ++q) {
            descent_report r = classify_descent(x, q);
            if (x->is_iso(q))
                require(r.grade == descent_class::effective,
                        x->morphisms[static_cast<size_t>(q)].name + " should be effective");
            require(!r.fully_faithful || r.faithful, "fully faithful without faithful");
            require(!r.equivalence || r.fully_faithful, "equivalence without fully faithful");
            require((static_cast<int>(r.grade) >= 1) == r.faithful, "grade vs faithful");
            require((static_cast<int>(r.grade) >= 2) == r.fully_faithful,
                    "grade vs fully faithful");
            require((static_cast<int>(r.grade) >= 3) == r.equivalence, "grade vs equivalence");
            for (int n = 0; n < x->morphism_count(); ++n) {
                if (x->cod(n) != x->cod(q)) continue;
                auto pb = xs.pullback(q, n);
                require(pb.has_value(), "missing pullback in a lattice");
                descent_report s = classify_descent(x, pb->p2);
                require(static_cast<int>(s.grade) >= static_cast<int>(r.grade),
                        "grade dropped under pullback");
            }
        }
    }

    cat_ptr one = fixtures::one_cat(), two = fixtures::two_cat();
    int lu = 0, lz = 0;
    for (cat_ptr x : {fixtures::x2(), fixtures::x3()}) {
        x_structure xs(x);
        auto ps = canonical_probes(x, 4);
        for (const auto &a : ps)
            for (const auto &b : ps)
                for (const auto &m : enumerate_lax_hom(a, b)) {
                    check_detail d = verify_lu_pullback(m, xs);
                    require(d.ok, "counit pullback: " + d.detail);
                    ++lu;
                }
        std::vector<functor> legs = {identity_functor(one), identity_functor(two),
                                     constant_functor("ps", one, two, 0),
                                     constant_functor("pt", one, two, 1),
                                     constant_functor("bang", two, one, 0)};
        std::vector<lax_object> sources = canonical_probes(x, 3);
        sources.push_back(lax_left(one, xs));
        sources.push_back(lax_left(two, xs));
        for (const functor &p : legs) {
            lax_object lt = lax_left(p.target, xs);
            for (const auto &s : sources)
                for (const auto &f : enumerate_lax_hom(s, lt)) {
                    check_detail d = verify_l_pullback_zero(f, p, xs);
                    require(d.ok, "zero-structure pullback: " + d.detail);
                    ++lz;
                }
        }
    }
    require(lu >= 10, "too few counit pullback instances");
    require(lz >= 10, "too few zero-structure pullback instances");
}

// ---- 8: topologicity verdicts with explicit witnesses ----

void topologicity_verdicts() {
    for (cat_ptr x : {fixtures::x2(), fixtures::x3(), fixtures::diamond()}) {
        topologicity_report r = check_topologicity(x);
        require(r.ok, x->name + ": " + r.witness);
    }
    for (cat_ptr x : {fixtures::v_cat(), fixtures::meetless_p3()}) {
        topologicity_report r = check_topologicity(x);
        require(!r.ok, x->name + " should fail");
        require(r.witness.find("has no lift") != std::string::npos,
                x->name + ": witness names no family: " + r.witness);
    }
}

// ---- 9: the command line tool is deterministic under load ----

namespace fs = std::filesystem;

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct cli_run {
    int code = -1;
    std::string out;
};

cli_run run_cli(const fs::path &dir, const std::string &args, const std::string &env) {
    static int counter = 0;
    std::string out = (dir / ("out." + std::to_string(counter++))).string();
    std::string cmd = env + std::string(LAXCAT_BIN) + " " + args + " > " + out + " 2> /dev/null";
    int st = std::system(cmd.c_str());
    cli_run r;
    if (st >= 0 && WIFEXITED(st)) r.code = WEXITSTATUS(st);
    r.out = slurp(out);
    return r;
}

void cli_determinism() {
    fs::path dir = fs::temp_directory_path() / "laxcat_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto put = [&](const std::string &name, const std::string &text) {
        std::ofstream f(dir / name, std::ios::binary);
        f << text;
        return (dir / name).string();
    };
    std::string x2 = put("x2.fcat", "poset X2 { 0 <= 1 }\n");
    std::string x3 = put("x3.fcat", "poset X3 { 0 <= m m <= 1 }\n");
    std::string v = put("v.fcat", "poset V { p q }\n");
    std::string a = put("a.fcat", "category W { objects: w ; }\n"
                                  "functor a : W -> X2 { obj w -> 0 ; }\n");
    std::string b = put("b.fcat", "category V2 { objects: v ; }\n"
                                  "functor b : V2 -> X2 { obj v -> 1 ; }\n");
    std::string cand = put("cand.fcat",
                           "category S { objects: s1 s2 ; }\n"
                           "functor d : S -> X2 { obj s1 -> 0 ; obj s2 -> 1 ; }\n"
                           "functor apex : S -> X2 { obj s1 -> 0 ; obj s2 -> 0 ; }\n"
                           "nattrans cn : apex => d { at s1 : id_0 ; at s2 : 0<=1 ; }\n");

    std::string three = " --workspace " + x2 + " --workspace " + x3 + " --workspace " + v;
    cli_run c1 = run_cli(dir, "check topologicity" + three + " --jobs 1", "LAXCAT_SHUFFLE=41 ");
    cli_run c2 = run_cli(dir, "check topologicity" + three + " --jobs 4", "LAXCAT_SHUFFLE=99 ");
    require(c1.code == c2.code, "check exit codes differ");
    require(c1.out == c2.out, "check output depends on jobs or shuffle");
    cli_run j1 = run_cli(dir, "check descent-classify" + three + " --json --jobs 4",
                         "LAXCAT_SHUFFLE=7 ");
    cli_run j2 = run_cli(dir, "check descent-classify" + three + " --json --jobs 2",
                         "LAXCAT_SHUFFLE=8 ");
    require(j1.out == j2.out, "json check output is unstable");

    std::string ins = " --in " + a + " " + b;
    std::string e1 = (dir / "e1.fcat").string(), e2 = (dir / "e2.fcat").string();
    cli_run k1 = run_cli(dir, "compute exponential --workspace " + x2 + ins + " --out " + e1,
                         "LAXCAT_SHUFFLE=41 ");
    cli_run k2 = run_cli(dir, "compute exponential --workspace " + x2 + ins + " --out " + e2,
                         "LAXCAT_SHUFFLE=99 ");
    require(k1.code == 0 && k2.code == 0, "compute failed");
    require(slurp(e1) == slurp(e2), "construction bytes depend on shuffle");

    cli_run o1 = run_cli(dir, "oracle limit --workspace " + x2 + " --candidate " + cand +
                                  " --probes 3",
                         "LAXCAT_SHUFFLE=5 ");
    cli_run o2 = run_cli(dir, "oracle limit --workspace " + x2 + " --candidate " + cand +
                                  " --probes 3",
                         "LAXCAT_SHUFFLE=6 ");
    require(o1.code == 0 && o2.code == 0, "oracle rejected a valid candidate");
    require(o1.out == o2.out, "oracle output is unstable");
}

} // namespace

int main() {
    criterion(1, "presentation round trip", 10000, random_round_trips);
    criterion(2, "constructions vs oracle", 120000, constructions_vs_oracle);
    criterion(3, "exponential bijection", 300000, exponential_bijection);
    criterion(4, "extension adjunction", 0, kan_adjunction);
    criterion(5, "coequalizer bounds", 0, coequalizer_bounds);
    criterion(6, "adjunction chain", 0, adjunction_chain);
    criterion(7, "descent classification", 0, descent_classes);
    criterion(8, "topologicity verdicts", 0, topologicity_verdicts);
    criterion(9, "cli determinism", 0, cli_determinism);
    if (failures) std::printf("%d criteria failed\n", failures);
    return failures ? 1 : 0;
}
