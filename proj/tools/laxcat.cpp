// laxcat: validate presentation files, build lax comma constructions over a
// workspace category, run structural checks, and referee (co)limit candidates.
//
// Exit codes: 0 pass, 1 a check or candidate was refuted, 2 an unmet
// structural hypothesis, 3 malformed input or usage.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "laxcat/laxstruct.hpp"
#include "laxcat/presentation.hpp"
#include "laxcat/toolkit.hpp"

namespace {

using namespace laxcat;
using ojson = nlohmann::ordered_json;

int code_for(const error &e) { return is_hypothesis_errc(e.code()) ? 2 : 3; }

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::input_error, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::input_error, "cannot write " + path);
    out << text;
}

struct workspace_data {
    doc_env env;
    cat_ptr x;   // first category document
};

workspace_data load_workspace(const std::string &path) {
    workspace_data w;
    w.env = read_workspace(read_file(path));
    for (const auto &[name, kind] : w.env.order)
        if (kind == doc_env::entry_kind::category) {
            w.x = w.env.categories.at(name);
            break;
        }
    if (!w.x) throw error(errc::input_error, path + " defines no category");
    return w;
}

// input files elaborate left to right, each seeing the workspace and every
// earlier file; a path given twice is read once
struct input_chain {
    doc_env env;
    std::vector<std::vector<document>> docs;
    std::vector<std::string> paths;
};

input_chain load_inputs(doc_env base, const std::vector<std::string> &paths) {
    input_chain ch;
    ch.env = std::move(base);
    ch.paths = paths;
    std::map<std::string, size_t> seen;
    for (const auto &p : paths) {
        if (auto it = seen.find(p); it != seen.end()) {
            ch.docs.push_back(ch.docs[it->second]);
            continue;
        }
        auto ds = parse_documents(read_file(p));
        ch.env = elaborate(ds, std::move(ch.env));
        seen[p] = ch.docs.size();
        ch.docs.push_back(std::move(ds));
    }
    return ch;
}

// the one functor document in file i that lands in the workspace category
lax_object object_input(const input_chain &ch, size_t i, const cat_ptr &x) {
    const document *hit = nullptr;
    int found = 0;
    for (const auto &d : ch.docs[i])
        if (d.k == document::kind::functor_map &&
            *ch.env.functor_named(d.name).target == *x) {
            hit = &d;
            ++found;
        }
    if (found != 1)
        throw error(errc::input_error,
                    ch.paths[i] + ": expected exactly one structure functor into " + x->name);
    return make_lax_object(ch.env.functor_named(hit->name));
}

// the one transformation in file i whose target reads "b . f"
lax_morphism morphism_input(const input_chain &ch, size_t i) {
    const document *hit = nullptr;
    for (const auto &d : ch.docs[i])
        if (d.k == document::kind::nattrans && !d.target_post.empty()) {
            if (hit)
                throw error(errc::input_error, ch.paths[i] + ": more than one map cell");
            hit = &d;
        }
    if (!hit)
        throw error(errc::input_error,
                    ch.paths[i] + ": expected one cell whose target reads b . f");
    return make_lax_morphism(ch.env.functor_named(hit->target_post),
                             ch.env.transformation(hit->name),
                             ch.env.functor_named(hit->target));
}

functor functor_input(const input_chain &ch, size_t i) {
    const document *hit = nullptr;
    int found = 0;
    for (const auto &d : ch.docs[i])
        if (d.k == document::kind::functor_map) {
            hit = &d;
            ++found;
        }
    if (found != 1)
        throw error(errc::input_error, ch.paths[i] + ": expected exactly one functor document");
    return ch.env.functor_named(hit->name);
}

std::string object_text(const lax_object &a) {
    return serialize(*a.base()) + "\n" + serialize(a.structure);
}

std::string morphism_text(const lax_morphism &m) {
    return serialize(m.f) + "\n" +
           serialize_with_target(m.cell, m.target_structure.name + " . " + m.f.name);
}

struct outcome {
    int code = 0;
    std::string text;
    ojson js;
};

int emit(const std::vector<outcome> &res, bool json) {
    if (json) {
        ojson arr = ojson::array();
        for (const auto &r : res) arr.push_back(r.js);
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto &r : res) std::cout << r.text;
    }
    int rc = 0;
    for (const auto &r : res) rc = std::max(rc, r.code);
    return rc;
}

// results land in input order no matter how many workers run
template <typename Work>
std::vector<outcome> run_ordered(int jobs, int n, Work work) {
    std::vector<outcome> res(static_cast<size_t>(n));
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) res[static_cast<size_t>(i)] = work(i);
        return res;
    }
    std::atomic<int> next{0};
    auto loop = [&] {
        for (int i; (i = next.fetch_add(1)) < n;) res[static_cast<size_t>(i)] = work(i);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(loop);
    for (auto &t : pool) t.join();
    return res;
}

int cmd_validate(const std::vector<std::string> &files, const std::vector<std::string> &wspaths,
                 bool json, int jobs) {
    doc_env base;
    if (!wspaths.empty()) base = load_inputs(doc_env{}, wspaths).env;
    auto res = run_ordered(jobs, static_cast<int>(files.size()), [&](int i) {
        outcome r;
        const std::string &f = files[static_cast<size_t>(i)];
        try {
            auto docs = parse_documents(read_file(f));
            elaborate(docs, base);
            int cats = 0, funs = 0, cells = 0;
            for (const auto &d : docs) {
                if (d.k == document::kind::nattrans)
                    ++cells;
                else if (d.k == document::kind::functor_map)
                    ++funs;
                else
                    ++cats;
            }
            std::string parts = std::to_string(cats) + " categories, " + std::to_string(funs) +
                                " functors, " + std::to_string(cells) + " transformations";
            r.text = f + ": ok (" + parts + ")\n";
            r.js = ojson{{"file", f},
                         {"ok", true},
                         {"categories", cats},
                         {"functors", funs},
                         {"transformations", cells}};
        } catch (const error &e) {
            r.code = code_for(e);
            r.text = f + ": error: " + e.what() + std::string("\n");
            r.js = ojson{
                {"file", f}, {"ok", false}, {"error", e.what()}, {"code", errc_name(e.code())}};
        }
        return r;
    });
    return emit(res, json);
}

int cmd_check(const std::string &name, const std::vector<std::string> &wss, int probes,
              bool json, int jobs) {
    const auto &names = check_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw error(errc::input_error, "unknown check: " + name);
    auto res = run_ordered(jobs, static_cast<int>(wss.size()), [&](int i) {
        outcome r;
        const std::string &f = wss[static_cast<size_t>(i)];
        try {
            workspace_data w = load_workspace(f);
            check_report rep = run_check(name, w.x, probes);
            r.code = rep.ok ? 0 : 1;
            r.text = f + ": over " + w.x->name + "\n" + rep.render_text();
            r.js = ojson{{"workspace", f},
                         {"over", w.x->name},
                         {"report", ojson::parse(rep.render_json())}};
        } catch (const error &e) {
            r.code = code_for(e);
            r.text = f + ": error: " + e.what() + std::string("\n");
            r.js = ojson{{"workspace", f},
                         {"ok", false},
                         {"error", e.what()},
                         {"code", errc_name(e.code())}};
        }
        return r;
    });
    return emit(res, json);
}

struct built {
    std::string text;
    std::string name;
    cat_ptr base;
};

built build_construction(const std::string &cons, const workspace_data &w,
                         const std::vector<std::string> &ins) {
    x_structure xs(w.x);
    // the last k inputs are the operands; files before them are context
    auto need = [&](size_t k) -> size_t {
        if (ins.size() < k)
            throw error(errc::input_error, cons + " needs " + std::to_string(k) +
                                               " input files, got " + std::to_string(ins.size()));
        return ins.size() - k;
    };
    if (cons == "terminal") {
        need(0);
        lax_object t = terminal_laxcomma(xs);
        return {object_text(t), t.name(), t.base()};
    }
    if (cons == "product") {
        size_t i0 = need(2);
        input_chain ch = load_inputs(w.env, ins);
        lax_object a = object_input(ch, i0, w.x), b = object_input(ch, i0 + 1, w.x);
        lax_prod_data p = product_laxcomma(a, b, xs);
        return {object_text(p.obj) + "\n" + morphism_text(p.pr1) + "\n" + morphism_text(p.pr2),
                p.obj.name(), p.obj.base()};
    }
    if (cons == "coproduct") {
        if (ins.empty()) {
            lax_object z = initial_laxcomma(xs);
            return {object_text(z), z.name(), z.base()};
        }
        size_t i0 = need(2);
        input_chain ch = load_inputs(w.env, ins);
        lax_object a = object_input(ch, i0, w.x), b = object_input(ch, i0 + 1, w.x);
        lax_coprod_data c = coproduct_laxcomma(a, b);
        return {object_text(c.obj) + "\n" + morphism_text(c.in1) + "\n" + morphism_text(c.in2),
                c.obj.name(), c.obj.base()};
    }
    if (cons == "pullback") {
        size_t i0 = need(2);
        input_chain ch = load_inputs(w.env, ins);
        lax_morphism m1 = morphism_input(ch, i0), m2 = morphism_input(ch, i0 + 1);
        lax_pb_data p = pullback_laxcomma(m1, m2, xs);
        return {object_text(p.obj) + "\n" + morphism_text(p.p1) + "\n" + morphism_text(p.p2),
                p.obj.name(), p.obj.base()};
    }
    if (cons == "coequalizer") {
        size_t i0 = need(2);
        input_chain ch = load_inputs(w.env, ins);
        lax_morphism m1 = morphism_input(ch, i0), m2 = morphism_input(ch, i0 + 1);
        lax_coeq_data c = coequalizer_laxcomma(m1, m2, xs);
        lax_object q = c.proj.target();
        return {object_text(q) + "\n" + morphism_text(c.proj), q.name(), q.base()};
    }
    if (cons == "exponential") {
        size_t i0 = need(2);
        input_chain ch = load_inputs(w.env, ins);
        lax_object a = object_input(ch, i0, w.x), b = object_input(ch, i0 + 1, w.x);
        lax_exp_data e = exponential_laxcomma(a, b, xs);
        return {object_text(e.obj) + "\n" + object_text(e.prod.obj) + "\n" +
                    morphism_text(e.ev),
                e.obj.name(), e.obj.base()};
    }
    if (cons == "lan") {
        size_t i0 = need(2);
        input_chain ch = load_inputs(w.env, ins);
        lax_object a = object_input(ch, i0, w.x);
        functor f = functor_input(ch, i0 + 1);
        if (!(*f.source == *a.base()))
            throw error(errc::shape_mismatch,
                        "extension map must start at the source of the structure");
        lan_data ld = left_kan(f, a.structure, xs);
        return {serialize(ld.ext) + "\n" +
                    serialize_with_target(ld.unit, ld.ext.name + " . " + f.name),
                ld.ext.name, f.target};
    }
    if (cons == "end") {
        size_t i0 = need(2);
        input_chain ch = load_inputs(w.env, ins);
        lax_object a = object_input(ch, i0, w.x), b = object_input(ch, i0 + 1, w.x);
        if (!(*a.base() == *b.base()))
            throw error(errc::shape_mismatch, "end needs two structures over one source");
        lax_exp_data e = exponential_laxcomma(a, b, xs);
        functor idw = identity_functor(a.base());
        int idx = -1;
        for (size_t i = 0; i < e.fc.objects.size(); ++i)
            if (e.fc.objects[i].omap == idw.omap && e.fc.objects[i].mmap == idw.mmap)
                idx = static_cast<int>(i);
        if (idx < 0) throw error(errc::missing_end, "identity functor missing from the base");
        int val = e.obj.structure.ob(idx);
        raw_category pt;
        pt.name = "point(end)";
        pt.objects = {"pt"};
        pt.morphisms = {{"id_pt", 0, 0}};
        pt.identity = {0};
        pt.compose = {{0}};
        cat_ptr pc = validate_category_ptr(pt);
        functor endf = make_functor("end(" + a.name() + "," + b.name() + ")", pc, w.x, {val},
                                    {w.x->identity(val)});
        return {serialize(*pc) + "\n" + serialize(endf), endf.name, pc};
    }
    throw error(errc::input_error, "unknown construction: " + cons);
}

int cmd_compute(const std::string &cons, const std::string &wspath,
                const std::vector<std::string> &ins, const std::string &outpath, bool json) {
    workspace_data w = load_workspace(wspath);
    built b = build_construction(cons, w, ins);
    write_file(outpath, b.text);
    if (json) {
        ojson j{{"construction", cons},
                {"name", b.name},
                {"base_objects", b.base->object_count()},
                {"base_morphisms", b.base->morphism_count()},
                {"out", outpath}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "compute " << cons << ": " << b.name << " (base "
                  << b.base->object_count() << " objects, " << b.base->morphism_count()
                  << " morphisms) -> " << outpath << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string &kind, const std::string &wspath, const std::string &cand,
               int reruns, bool json) {
    const bool limit = kind == "limit";
    if (!limit && kind != "colimit")
        throw error(errc::input_error, "oracle kind must be limit or colimit");
    workspace_data w = load_workspace(wspath);
    input_chain ch = load_inputs(w.env, {cand});
    const document *nd = nullptr;
    for (const auto &d : ch.docs[0])
        if (d.k == document::kind::nattrans && d.target_post.empty()) nd = &d;
    if (!nd)
        throw error(errc::input_error,
                    cand + ": expected a transformation presenting the candidate");
    nat_trans t = ch.env.transformation(nd->name);
    functor cst = limit ? t.source : t.target;
    functor dia = limit ? t.target : t.source;
    if (!(*dia.target == *w.x))
        throw error(errc::input_error, "diagram must land in the workspace category");
    if (dia.source->object_count() == 0)
        throw error(errc::input_error, "empty diagram shapes are not supported");
    int apex = cst.ob(0);
    bool constant = true;
    for (int o = 0; o < cst.source->object_count(); ++o)
        if (cst.ob(o) != apex) constant = false;
    for (int m = 0; m < cst.source->morphism_count(); ++m)
        if (cst.mor(m) != w.x->identity(apex)) constant = false;
    if (!constant)
        throw error(errc::input_error, std::string(limit ? "source" : "target") +
                                           " of the candidate must be a constant functor");
    cone c{apex, t.components};
    const bool legs = limit ? is_cone(dia, c) : is_cocone(dia, c);
    const bool ok = legs && (limit ? is_limit(dia, c) : is_colimit(dia, c));
    int agree = 0;
    for (int s = 1; s <= reruns; ++s) {
        set_shuffle_seed(static_cast<std::uint64_t>(s));
        bool again = legs && (limit ? is_limit(dia, c) : is_colimit(dia, c));
        set_shuffle_seed(0);
        if (again == ok) ++agree;
    }
    const bool stable = agree == reruns;
    if (json) {
        ojson j{{"oracle", kind},          {"ok", ok && stable}, {"candidate", nd->name},
                {"diagram", dia.name},     {"apex", w.x->objects[static_cast<size_t>(apex)]},
                {"legs", legs},            {"reruns", reruns},   {"stable", stable}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "oracle " << kind << ": " << (ok && stable ? "pass" : "fail") << "\n"
                  << "  candidate: " << nd->name << "\n"
                  << "  diagram: " << dia.name << "\n"
                  << "  apex: " << w.x->objects[static_cast<size_t>(apex)] << "\n"
                  << "  legs: " << (legs ? "yes" : "no") << "\n"
                  << "  reruns: " << reruns << "\n";
    }
    return ok && stable ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"finite lax comma category toolkit"};
    app.require_subcommand(1);

    auto *val = app.add_subcommand("validate", "parse and law-check presentation files");
    std::vector<std::string> val_files;
    std::vector<std::string> val_ws;
    bool val_json = false;
    int val_jobs = 1;
    val->add_option("files", val_files, "presentation files")->required();
    val->add_option("--workspace", val_ws, "context files elaborated first, left to right");
    val->add_flag("--json", val_json, "machine readable output");
    val->add_option("--jobs", val_jobs, "worker threads")->check(CLI::PositiveNumber);

    auto *cmp = app.add_subcommand("compute", "build a construction over the workspace");
    std::string cmp_cons, cmp_ws, cmp_out;
    std::vector<std::string> cmp_in;
    bool cmp_json = false;
    cmp->add_option("construction", cmp_cons,
                    "terminal | product | coproduct | pullback | coequalizer | exponential | "
                    "lan | end")
        ->required();
    cmp->add_option("--workspace", cmp_ws, "workspace file; its first category is the base")
        ->required();
    cmp->add_option("--in", cmp_in, "input files, elaborated left to right");
    cmp->add_option("--out", cmp_out, "output file")->required();
    cmp->add_flag("--json", cmp_json, "machine readable output");

    auto *chk = app.add_subcommand("check", "run a named structural check on workspaces");
    std::string chk_name;
    std::vector<std::string> chk_ws;
    int chk_probes = 4, chk_jobs = 1;
    bool chk_json = false;
    chk->add_option("name", chk_name,
                    "lattice | strict-initial | topologicity | extensivity | adjunctions | "
                    "descent-classify | lu-pullback | l-pullback-zero")
        ->required();
    chk->add_option("--workspace", chk_ws, "workspace files")->required();
    chk->add_option("--probes", chk_probes, "probe budget")->check(CLI::NonNegativeNumber);
    chk->add_flag("--json", chk_json, "machine readable output");
    chk->add_option("--jobs", chk_jobs, "worker threads")->check(CLI::PositiveNumber);

    auto *orc = app.add_subcommand("oracle", "referee a (co)limit candidate by full search");
    std::string orc_kind, orc_ws, orc_cand;
    int orc_reruns = 0;
    bool orc_json = false;
    orc->add_option("kind", orc_kind, "limit | colimit")->required();
    orc->add_option("--workspace", orc_ws, "workspace file")->required();
    orc->add_option("--candidate", orc_cand, "candidate file")->required();
    orc->add_option("--probes", orc_reruns, "extra shuffled re-runs")
        ->check(CLI::NonNegativeNumber);
    orc->add_flag("--json", orc_json, "machine readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 3;
    }

    auto start = std::chrono::steady_clock::now();
    int rc = 0;
    std::string sub = "laxcat";
    try {
        if (val->parsed()) {
            sub = "validate";
            rc = cmd_validate(val_files, val_ws, val_json, val_jobs);
        } else if (cmp->parsed()) {
            sub = "compute";
            rc = cmd_compute(cmp_cons, cmp_ws, cmp_in, cmp_out, cmp_json);
        } else if (chk->parsed()) {
            sub = "check";
            rc = cmd_check(chk_name, chk_ws, chk_probes, chk_json, chk_jobs);
        } else if (orc->parsed()) {
            sub = "oracle";
            rc = cmd_oracle(orc_kind, orc_ws, orc_cand, orc_reruns, orc_json);
        }
    } catch (const error &e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 3;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::fprintf(stderr, "# %s: %lld ms\n", sub.c_str(), static_cast<long long>(ms));
    return rc;
}
