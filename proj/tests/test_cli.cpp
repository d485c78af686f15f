// drives the built laxcat binary end to end through temp files

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path &work_dir() {
    static const fs::path d = [] {
        fs::path p = fs::temp_directory_path() / "laxcat_cli_work";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return d;
}

std::string path_of(const std::string &name) { return (work_dir() / name).string(); }

void put(const std::string &name, const std::string &text) {
    std::ofstream out(path_of(name), std::ios::binary);
    out << text;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct run_result {
    int code = -1;
    std::string out;
    std::string err;
};

// args are appended to the binary path; an env prefix like "LAXCAT_SHUFFLE=7 "
// can be passed through `env`
run_result run(const std::string &args, const std::string &env = "") {
    static int counter = 0;
    std::string out = path_of("stdout." + std::to_string(counter));
    std::string err = path_of("stderr." + std::to_string(counter));
    ++counter;
    std::string cmd = env + std::string(LAXCAT_BIN) + " " + args + " > " + out + " 2> " + err;
    int st = std::system(cmd.c_str());
    run_result r;
    if (st >= 0 && WIFEXITED(st)) r.code = WEXITSTATUS(st);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

void write_fixtures() {
    put("x2.fcat", "poset X2 { 0 <= 1 }\n");
    put("x3.fcat", "poset X3 { 0 <= m m <= 1 }\n");
    put("v.fcat", "poset V { p q }\n");
    put("a.fcat", "category W { objects: w ; }\n"
                  "functor a : W -> X2 { obj w -> 0 ; }\n");
    put("b.fcat", "category V2 { objects: v ; }\n"
                  "functor b : V2 -> X2 { obj v -> 1 ; }\n");
    put("m1.fcat", "functor f1 : W -> V2 { obj w -> v ; }\n"
                   "nattrans m1 : a => b . f1 { at w : 0<=1 ; }\n");
    put("m2.fcat", "category U { objects: u ; }\n"
                   "functor c : U -> X2 { obj u -> 1 ; }\n"
                   "functor f2 : U -> V2 { obj u -> v ; }\n"
                   "nattrans m2 : c => b . f2 { at u : id_1 ; }\n");
    put("f.fcat", "functor f : W -> V2 { obj w -> v ; }\n");
    put("broken.fcat", "category Broken { objects: a a ; }\n");
}

std::string ws(const std::string &name) { return " --workspace " + path_of(name); }

} // namespace

TEST_CASE("validate accepts and rejects") {
    write_fixtures();

    auto good = run("validate " + path_of("x2.fcat") + " " + path_of("v.fcat"));
    CHECK(good.code == 0);
    CHECK(good.out.find("x2.fcat: ok (1 categories, 0 functors, 0 transformations)") !=
          std::string::npos);
    CHECK(good.out.find("v.fcat: ok") != std::string::npos);

    auto ctx = run("validate " + path_of("a.fcat") + ws("x2.fcat"));
    CHECK(ctx.code == 0);

    auto bad = run("validate " + path_of("broken.fcat"));
    CHECK(bad.code == 3);
    CHECK(bad.out.find("duplicate object 'a'") != std::string::npos);

    auto unresolved = run("validate " + path_of("a.fcat"));
    CHECK(unresolved.code == 3);
    CHECK(unresolved.out.find("error") != std::string::npos);

    auto missing = run("validate " + path_of("nosuch.fcat"));
    CHECK(missing.code == 3);

    auto usage = run("frobnicate");
    CHECK(usage.code == 3);
}

TEST_CASE("compute product output is frozen and re-validates") {
    write_fixtures();
    auto r = run("compute product" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " " +
                 path_of("b.fcat") + " --out " + path_of("prod.fcat"));
    CHECK(r.code == 0);
    CHECK(r.out == "compute product: prod(a,b) (base 1 objects, 1 morphisms) -> " +
                       path_of("prod.fcat") + "\n");

    const std::string expected = "category prod(W,V2) {\n"
                                 "  objects: (w,v) ;\n"
                                 "}\n"
                                 "\n"
                                 "functor prod(a,b) : prod(W,V2) -> X2 {\n"
                                 "  obj (w,v) -> 0 ;\n"
                                 "}\n"
                                 "\n"
                                 "functor pr1 : prod(W,V2) -> W {\n"
                                 "  obj (w,v) -> w ;\n"
                                 "}\n"
                                 "\n"
                                 "nattrans c1 : prod(a,b) => a . pr1 {\n"
                                 "  at (w,v) : id_0 ;\n"
                                 "}\n"
                                 "\n"
                                 "functor pr2 : prod(W,V2) -> V2 {\n"
                                 "  obj (w,v) -> v ;\n"
                                 "}\n"
                                 "\n"
                                 "nattrans c2 : prod(a,b) => b . pr2 {\n"
                                 "  at (w,v) : 0<=1 ;\n"
                                 "}\n";
    CHECK(slurp(path_of("prod.fcat")) == expected);

    auto rv = run("validate " + path_of("prod.fcat") + ws("x2.fcat") + ws("a.fcat") +
                  ws("b.fcat"));
    CHECK(rv.code == 0);
}

TEST_CASE("compute covers every construction") {
    write_fixtures();

    auto term = run("compute terminal" + ws("x2.fcat") + " --out " + path_of("term.fcat"));
    CHECK(term.code == 0);
    CHECK(slurp(path_of("term.fcat")).find("obj pt -> 1 ;") != std::string::npos);

    auto init = run("compute coproduct" + ws("x2.fcat") + " --out " + path_of("init.fcat"));
    CHECK(init.code == 0);
    CHECK(slurp(path_of("init.fcat")).find("category Empty") != std::string::npos);
    CHECK(run("validate " + path_of("init.fcat") + ws("x2.fcat")).code == 0);

    auto cop = run("compute coproduct" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " " +
                   path_of("b.fcat") + " --out " + path_of("cop.fcat"));
    CHECK(cop.code == 0);
    CHECK(run("validate " + path_of("cop.fcat") + ws("x2.fcat") + ws("a.fcat") + ws("b.fcat"))
              .code == 0);

    std::string cells = " --in " + path_of("a.fcat") + " " + path_of("b.fcat") + " " +
                        path_of("m1.fcat") + " " + path_of("m2.fcat");
    auto pb = run("compute pullback" + ws("x2.fcat") + cells + " --out " + path_of("pb.fcat"));
    CHECK(pb.code == 0);
    CHECK(pb.out.find("pb(a,c)") != std::string::npos);
    CHECK(run("validate " + path_of("pb.fcat") + ws("x2.fcat") + ws("a.fcat") + ws("b.fcat") +
              ws("m1.fcat") + ws("m2.fcat"))
              .code == 0);

    std::string pair = " --in " + path_of("a.fcat") + " " + path_of("b.fcat") + " " +
                       path_of("m1.fcat") + " " + path_of("m1.fcat");
    auto cq = run("compute coequalizer" + ws("x2.fcat") + pair + " --out " + path_of("cq.fcat"));
    CHECK(cq.code == 0);
    CHECK(slurp(path_of("cq.fcat")).find("functor quot : V2 -> coeq(V2)") != std::string::npos);

    auto ex = run("compute exponential" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " " +
                  path_of("b.fcat") + " --out " + path_of("exp.fcat"));
    CHECK(ex.code == 0);
    CHECK(slurp(path_of("exp.fcat")).find("obj F0 -> 1 ;") != std::string::npos);

    auto lan = run("compute lan" + ws("x2.fcat") + " --in " + path_of("b.fcat") + " " +
                   path_of("a.fcat") + " " + path_of("f.fcat") + " --out " + path_of("lan.fcat"));
    CHECK(lan.code == 0);
    CHECK(slurp(path_of("lan.fcat")).find("functor lan(a,f) : V2 -> X2") != std::string::npos);
    CHECK(slurp(path_of("lan.fcat")).find("nattrans unit : a => lan(a,f) . f") !=
          std::string::npos);
    CHECK(run("validate " + path_of("lan.fcat") + ws("x2.fcat") + ws("b.fcat") + ws("a.fcat") +
              ws("f.fcat"))
              .code == 0);

    auto end = run("compute end" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " " +
                   path_of("a.fcat") + " --out " + path_of("end.fcat"));
    CHECK(end.code == 0);
    CHECK(slurp(path_of("end.fcat")).find("obj pt -> 1 ;") != std::string::npos);
}

TEST_CASE("exit codes separate refutation, hypothesis, input") {
    write_fixtures();

    CHECK(run("check lattice" + ws("v.fcat")).code == 1);
    CHECK(run("check adjunctions" + ws("v.fcat")).code == 2);
    CHECK(run("check nonsense" + ws("x2.fcat")).code == 3);
    CHECK(run("compute terminal" + ws("v.fcat") + " --out " + path_of("t.fcat")).code == 2);
    CHECK(run("compute frob" + ws("x2.fcat") + " --out " + path_of("t.fcat")).code == 3);
    CHECK(run("compute product" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " --out " +
              path_of("t.fcat"))
              .code == 3);

    // mixed workspaces take the worst code
    auto mixed = run("check lattice" + ws("x2.fcat") + ws("v.fcat"));
    CHECK(mixed.code == 1);
    CHECK(mixed.out.find("lattice: pass") != std::string::npos);
    CHECK(mixed.out.find("lattice: fail") != std::string::npos);
}

TEST_CASE("oracle referees candidates") {
    write_fixtures();
    put("cand.fcat", "category S { objects: s1 s2 ; }\n"
                     "functor d : S -> X2 { obj s1 -> 0 ; obj s2 -> 1 ; }\n"
                     "functor apex : S -> X2 { obj s1 -> 0 ; obj s2 -> 0 ; }\n"
                     "nattrans cn : apex => d { at s1 : id_0 ; at s2 : 0<=1 ; }\n");
    put("badcand.fcat", "category S { objects: s1 s2 ; }\n"
                        "functor d : S -> X2 { obj s1 -> 1 ; obj s2 -> 1 ; }\n"
                        "functor apex : S -> X2 { obj s1 -> 0 ; obj s2 -> 0 ; }\n"
                        "nattrans cn : apex => d { at s1 : 0<=1 ; at s2 : 0<=1 ; }\n");
    put("cocand.fcat", "category S { objects: s1 s2 ; }\n"
                       "functor d : S -> X2 { obj s1 -> 0 ; obj s2 -> 1 ; }\n"
                       "functor apex : S -> X2 { obj s1 -> 1 ; obj s2 -> 1 ; }\n"
                       "nattrans cn : d => apex { at s1 : 0<=1 ; at s2 : id_1 ; }\n");

    auto good = run("oracle limit" + ws("x2.fcat") + " --candidate " + path_of("cand.fcat") +
                    " --probes 3");
    CHECK(good.code == 0);
    CHECK(good.out.find("oracle limit: pass") != std::string::npos);
    CHECK(good.out.find("apex: 0") != std::string::npos);

    auto bad = run("oracle limit" + ws("x2.fcat") + " --candidate " + path_of("badcand.fcat"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("oracle limit: fail") != std::string::npos);
    CHECK(bad.out.find("legs: yes") != std::string::npos);

    auto co = run("oracle colimit" + ws("x2.fcat") + " --candidate " + path_of("cocand.fcat") +
                  " --probes 2");
    CHECK(co.code == 0);
    CHECK(co.out.find("oracle colimit: pass") != std::string::npos);

    // the limit candidate read as a colimit has legs pointing the wrong way
    auto flipped = run("oracle colimit" + ws("x2.fcat") + " --candidate " + path_of("cand.fcat"));
    CHECK(flipped.code == 3);
}

TEST_CASE("json output is machine readable") {
    write_fixtures();

    auto v = run("validate " + path_of("x2.fcat") + " " + path_of("broken.fcat") + " --json");
    CHECK(v.code == 3);
    auto arr = nlohmann::json::parse(v.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[0]["ok"] == true);
    CHECK(arr[1]["ok"] == false);
    CHECK(arr[1]["code"] == "DuplicateName");

    auto c = run("check descent-classify" + ws("x2.fcat") + " --json");
    CHECK(c.code == 0);
    auto carr = nlohmann::json::parse(c.out);
    REQUIRE(carr.size() == 1);
    CHECK(carr[0]["over"] == "X2");
    CHECK(carr[0]["report"]["facts"]["0<=1"] == "almost descent");

    auto o = run("oracle limit" + ws("x2.fcat") + " --candidate " + path_of("cand.fcat") +
                 " --json");
    auto oj = nlohmann::json::parse(o.out);
    CHECK(oj["ok"] == true);
    CHECK(oj["apex"] == "0");

    auto k = run("compute end" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " " +
                 path_of("a.fcat") + " --out " + path_of("endj.fcat") + " --json");
    auto kj = nlohmann::json::parse(k.out);
    CHECK(kj["name"] == "end(a,a)");
    CHECK(kj["base_objects"] == 1);
}

TEST_CASE("stdout is byte stable across jobs and shuffle seeds") {
    write_fixtures();
    std::string three = ws("x2.fcat") + ws("x3.fcat") + ws("v.fcat");

    auto j1 = run("check topologicity" + three + " --jobs 1");
    auto j4 = run("check topologicity" + three + " --jobs 4");
    auto sh = run("check topologicity" + three + " --jobs 4", "LAXCAT_SHUFFLE=77 ");
    CHECK(j1.code == 1);
    CHECK(j1.out == j4.out);
    CHECK(j1.out == sh.out);
    CHECK(j1.out.find("# ") == std::string::npos);   // timing stays on stderr
    CHECK(j1.err.find("# check:") != std::string::npos);

    auto e1 = run("compute exponential" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " " +
                  path_of("b.fcat") + " --out " + path_of("e1.fcat"));
    auto e2 = run("compute exponential" + ws("x2.fcat") + " --in " + path_of("a.fcat") + " " +
                      path_of("b.fcat") + " --out " + path_of("e2.fcat"),
                  "LAXCAT_SHUFFLE=99 ");
    CHECK(e1.code == 0);
    CHECK(e2.code == 0);
    CHECK(slurp(path_of("e1.fcat")) == slurp(path_of("e2.fcat")));

    auto v1 = run("validate " + path_of("x2.fcat") + " " + path_of("x3.fcat") + " " +
                  path_of("v.fcat") + " --jobs 3");
    auto v2 = run("validate " + path_of("x2.fcat") + " " + path_of("x3.fcat") + " " +
                  path_of("v.fcat") + " --jobs 1");
    CHECK(v1.out == v2.out);
}
