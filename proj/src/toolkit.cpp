#include "laxcat/toolkit.hpp"

#include <algorithm>

#include "json.hpp"

namespace laxcat {

bool is_lax_iso(const lax_morphism &m) {
    cat_ptr s = m.source().base(), t = m.target().base();
    if (s->object_count() != t->object_count() || s->morphism_count() != t->morphism_count())
        return false;
    std::vector<char> seen_o(t->object_count(), 0), seen_m(t->morphism_count(), 0);
    for (int o = 0; o < s->object_count(); ++o) {
        if (seen_o[m.f.ob(o)]) return false;
        seen_o[m.f.ob(o)] = 1;
    }
    for (int k = 0; k < s->morphism_count(); ++k) {
        if (seen_m[m.f.mor(k)]) return false;
        seen_m[m.f.mor(k)] = 1;
    }
    const cat_ptr &x = m.cell.source.target;
    for (int o = 0; o < s->object_count(); ++o)
        if (!x->is_iso(m.cell.at(o))) return false;
    return true;
}

lift_data initial_lift(cat_ptr w, const std::vector<functor> &fs,
                       const std::vector<lax_object> &bs, x_structure &xs) {
    if (fs.size() != bs.size())
        throw error(errc::shape_mismatch, "family legs do not line up");
    for (size_t i = 0; i < fs.size(); ++i)
        if (!(*fs[i].source == *w) || !(*fs[i].target == *bs[i].base()))
            throw error(errc::shape_mismatch,
                        "family leg " + std::to_string(i) + " does not start at the common base");

    int n = w->object_count(), mm = w->morphism_count();
    std::vector<int> omap(n), mmap(mm);
    std::vector<std::vector<int>> legs(n);
    for (int o = 0; o < n; ++o) {
        std::vector<int> vals(fs.size());
        for (size_t i = 0; i < fs.size(); ++i) vals[i] = bs[i].structure.ob(fs[i].ob(o));
        auto fd = xs.product_family(vals);
        if (!fd)
            throw error(errc::missing_products,
                        "structure values have no product at " + w->objects[o]);
        omap[o] = fd->obj;
        legs[o] = fd->legs;
    }
    for (int k = 0; k < mm; ++k) {
        std::vector<int> doms(fs.size()), maps(fs.size());
        for (size_t i = 0; i < fs.size(); ++i) {
            doms[i] = bs[i].structure.ob(fs[i].ob(w->dom(k)));
            maps[i] = bs[i].structure.mor(fs[i].mor(k));
        }
        mmap[k] = xs.family_mor(doms, maps);
    }

    lift_data out;
    out.obj = make_lax_object(make_functor("lift", w, xs.cat(), omap, mmap));
    for (size_t i = 0; i < fs.size(); ++i) {
        std::vector<int> comps(n);
        for (int o = 0; o < n; ++o) comps[o] = legs[o][i];
        nat_trans cell = make_nat_trans("pr" + std::to_string(i), out.obj.structure,
                                        compose_functor(bs[i].structure, fs[i]), comps);
        out.lifts.push_back(make_lax_morphism(fs[i], std::move(cell), bs[i].structure));
    }
    return out;
}

check_detail check_extensivity_instance(const lax_object &a, const lax_object &b,
                                        const lax_morphism &m, x_structure &xs) {
    lax_coprod_data cp = coproduct_laxcomma(a, b);
    if (!(m.target() == cp.obj))
        throw error(errc::shape_mismatch, "map must land in the coproduct of the two summands");
    lax_pb_data pb1 = pullback_laxcomma(m, cp.in1, xs);
    lax_pb_data pb2 = pullback_laxcomma(m, cp.in2, xs);
    lax_coprod_data cc = coproduct_laxcomma(pb1.obj, pb2.obj);
    lax_morphism cmp = coproduct_mediator(cc, pb1.p1, pb2.p1);
    if (!is_lax_iso(cmp)) return {false, "the two fibres do not reassemble the source"};
    lax_pb_data dj = pullback_laxcomma(cp.in1, cp.in2, xs);
    if (dj.obj.base()->object_count() != 0) return {false, "the injections are not disjoint"};
    return {true, "fibres reassemble the source and the injections are disjoint"};
}

namespace {

int probe_supply(cat_ptr x) {
    return x->object_count() + static_cast<int>(enumerate_functors(probe_two(), x).size()) +
           static_cast<int>(enumerate_functors(probe_pp(), x).size());
}

std::vector<lax_object> safe_probes(cat_ptr x, int want) {
    return canonical_probes(x, std::max(1, std::min(want, probe_supply(x))));
}

std::string family_label(const std::vector<functor> &fs, const std::vector<lax_object> &bs,
                         cat_ptr w) {
    std::string s = "over " + w->name + ": {";
    for (size_t i = 0; i < fs.size(); ++i)
        s += (i ? ", " : "") + bs[i].name() + " via " + fs[i].name;
    return s + "}";
}

} // namespace

topologicity_report check_topologicity(cat_ptr x) {
    topologicity_report rep;
    rep.lattice = complete_lattice_check(x);
    x_structure xs(x);

    if (!rep.lattice.ok) {
        rep.ok = false;
        if (!xs.terminal()) {
            rep.witness = "the empty family over One has no lift: no top structure value";
            return rep;
        }
        for (int i = 0; i < x->object_count(); ++i)
            for (int j = i + 1; j < x->object_count(); ++j)
                if (!xs.product(i, j)) {
                    rep.witness = "the pair {" + x->objects[i] + ", " + x->objects[j] +
                                  "} over One has no lift: the values have no meet";
                    return rep;
                }
        rep.witness = "no existence failure among the generated families; the criterion fails: " +
                      rep.lattice.detail;
        return rep;
    }

    // generated suite: effective lifts must satisfy the counting form of the
    // universal property against every probe and every base map
    cat_ptr one = probe_one(), two = probe_two();
    std::vector<std::pair<cat_ptr, std::pair<std::vector<functor>, std::vector<lax_object>>>> fams;
    fams.push_back({two, {{}, {}}});
    int no = std::min(3, x->object_count());
    for (int i = 0; i < no; ++i)
        for (int j = i; j < no; ++j)
            fams.push_back({one,
                            {{identity_functor(one), identity_functor(one)},
                             {make_lax_object(constant_functor("b1", one, x, i)),
                              make_lax_object(constant_functor("b2", one, x, j))}}});
    auto all_two = enumerate_functors(two, x);
    for (size_t k = 0; k < all_two.size() && k < 2; ++k)
        fams.push_back({two, {{identity_functor(two)}, {make_lax_object(all_two[k])}}});
    if (!all_two.empty())
        fams.push_back({one,
                        {{constant_functor("ps", one, two, 0)}, {make_lax_object(all_two[0])}}});

    auto probes = safe_probes(x, 4);
    for (const auto &[w, fam] : fams) {
        const auto &[fs, bs] = fam;
        lift_data lift = initial_lift(w, fs, bs, xs);
        for (const auto &probe : probes)
            for (const functor &g : enumerate_functors(probe.base(), w)) {
                size_t got =
                    enumerate_nat_trans(probe.structure, compose_functor(lift.obj.structure, g))
                        .size();
                size_t want = 1;
                for (size_t i = 0; i < fs.size(); ++i)
                    want *= enumerate_nat_trans(
                                probe.structure,
                                compose_functor(bs[i].structure, compose_functor(fs[i], g)))
                                .size();
                if (got != want) {
                    rep.ok = false;
                    rep.witness = "lift " + family_label(fs, bs, w) + " is not initial: " +
                                  std::to_string(got) + " maps from " + probe.name() + " over " +
                                  g.name + ", expected " + std::to_string(want);
                    return rep;
                }
            }
    }
    rep.ok = true;
    rep.witness = "initial lifts verified for " + std::to_string(fams.size()) +
                  " families against " + std::to_string(probes.size()) + " probes";
    return rep;
}

std::string check_report::render_text() const {
    std::string out = check + ": " + (ok ? "pass" : "fail") + "\n";
    for (const auto &[k, v] : facts) out += "  " + k + ": " + v + "\n";
    return out;
}

std::string check_report::render_json() const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["ok"] = ok;
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    for (const auto &[k, v] : facts) f[k] = v;
    j["facts"] = f;
    return j.dump(2) + "\n";
}

const std::vector<std::string> &check_names() {
    static const std::vector<std::string> names = {
        "lattice",         "strict-initial", "topologicity", "extensivity",
        "adjunctions",     "descent-classify", "lu-pullback", "l-pullback-zero"};
    return names;
}

namespace {

check_report run_extensivity(cat_ptr x, int probes) {
    check_report rep{"extensivity", true, {}};
    x_structure xs(x);
    auto ps = safe_probes(x, probes);
    int pairs = 0, maps = 0;
    int take = std::min<int>(3, static_cast<int>(ps.size()));
    for (int i = 0; i < take; ++i)
        for (int j = 0; j < take; ++j) {
            ++pairs;
            lax_coprod_data cp = coproduct_laxcomma(ps[i], ps[j]);
            for (int k = 0; k < take; ++k)
                for (const auto &m : enumerate_lax_hom(ps[k], cp.obj)) {
                    ++maps;
                    check_detail d = check_extensivity_instance(ps[i], ps[j], m, xs);
                    if (!d.ok) {
                        rep.ok = false;
                        rep.facts.push_back({"failure", d.detail + " for " + ps[i].name() + "+" +
                                                            ps[j].name() + " from " +
                                                            ps[k].name()});
                        return rep;
                    }
                }
        }
    rep.facts.push_back({"pairs", std::to_string(pairs)});
    rep.facts.push_back({"maps", std::to_string(maps)});
    return rep;
}

check_report run_adjunctions(cat_ptr x, int probes) {
    check_report rep{"adjunctions", true, {}};
    x_structure xs(x);
    auto ps = safe_probes(x, probes);
    std::vector<cat_ptr> bases = {probe_one(), probe_two()};

    for (bool left : {true, false}) {
        adjunction_report tri = check_triangle_identities(bases, ps, left, xs);
        rep.facts.push_back({left ? "left triangles" : "right triangles", tri.detail});
        if (!tri.ok) {
            rep.ok = false;
            return rep;
        }
        int c = left ? *xs.initial() : *xs.terminal();
        for (const auto &probe : ps)
            for (const cat_ptr &w : bases) {
                adjunction_report bij = check_constant_structure_bijection(w, c, probe, left, xs);
                if (!bij.ok) {
                    rep.ok = false;
                    rep.facts.push_back({"failure", bij.detail});
                    return rep;
                }
            }
        rep.facts.push_back({left ? "left bijections" : "right bijections",
                             std::to_string(ps.size() * bases.size()) + " object/base pairs"});
    }
    return rep;
}

check_report run_descent_classify(cat_ptr x) {
    check_report rep{"descent-classify", true, {}};
    for (int q = 0; q < x->morphism_count(); ++q) {
        descent_report r = classify_descent(x, q);
        rep.facts.push_back({x->morphisms[q].name, descent_class_name(r.grade)});
    }
    return rep;
}

check_report run_lu_pullback(cat_ptr x, int probes) {
    check_report rep{"lu-pullback", true, {}};
    x_structure xs(x);
    auto ps = safe_probes(x, probes);
    int maps = 0;
    for (const auto &c : ps)
        for (const auto &d : ps)
            for (const auto &m : enumerate_lax_hom(c, d)) {
                ++maps;
                check_detail r = verify_lu_pullback(m, xs);
                if (!r.ok) {
                    rep.ok = false;
                    rep.facts.push_back({"failure", r.detail});
                    return rep;
                }
            }
    rep.facts.push_back({"maps", std::to_string(maps)});
    return rep;
}

check_report run_l_pullback_zero(cat_ptr x, int probes) {
    check_report rep{"l-pullback-zero", true, {}};
    x_structure xs(x);
    cat_ptr one = probe_one(), two = probe_two();
    std::vector<functor> legs = {identity_functor(one), identity_functor(two),
                                 constant_functor("ps", one, two, 0),
                                 constant_functor("pt", one, two, 1),
                                 constant_functor("bang", two, one, 0)};
    std::vector<lax_object> sources = safe_probes(x, probes);
    sources.push_back(lax_left(one, xs));
    sources.push_back(lax_left(two, xs));
    int maps = 0;
    for (const functor &p : legs) {
        lax_object target = lax_left(p.target, xs);
        for (const auto &z : sources)
            for (const auto &f : enumerate_lax_hom(z, target)) {
                ++maps;
                check_detail r = verify_l_pullback_zero(f, p, xs);
                if (!r.ok) {
                    rep.ok = false;
                    rep.facts.push_back({"failure", r.detail});
                    return rep;
                }
            }
    }
    rep.facts.push_back({"maps", std::to_string(maps)});
    return rep;
}

} // namespace

check_report run_check(const std::string &name, cat_ptr x, int probes) {
    if (name == "lattice") {
        check_detail d = complete_lattice_check(x);
        return {name, d.ok, {{"detail", d.detail}}};
    }
    if (name == "strict-initial") {
        check_detail d = strict_initial_check(x);
        return {name, d.ok, {{"detail", d.detail}}};
    }
    if (name == "topologicity") {
        topologicity_report r = check_topologicity(std::move(x));
        return {name, r.ok, {{"criterion", r.lattice.detail}, {"witness", r.witness}}};
    }
    if (name == "extensivity") return run_extensivity(std::move(x), probes);
    if (name == "adjunctions") return run_adjunctions(std::move(x), probes);
    if (name == "descent-classify") return run_descent_classify(std::move(x));
    if (name == "lu-pullback") return run_lu_pullback(std::move(x), probes);
    if (name == "l-pullback-zero") return run_l_pullback_zero(std::move(x), probes);
    throw error(errc::input_error, "unknown check: " + name);
}

} // namespace laxcat
