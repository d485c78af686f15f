#include "laxcat/laxstruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace laxcat {

namespace {

functor projection_functor(const char *nm, cat_ptr prod, cat_ptr a, cat_ptr b, bool first) {
    int nb = b->object_count(), mb = b->morphism_count();
    std::vector<int> omap(prod->object_count()), mmap(prod->morphism_count());
    for (int o = 0; o < prod->object_count(); ++o) omap[o] = first ? o / nb : o % nb;
    for (int m = 0; m < prod->morphism_count(); ++m) mmap[m] = first ? m / mb : m % mb;
    return make_functor(nm, std::move(prod), first ? std::move(a) : std::move(b), omap, mmap);
}

} // namespace

cat_ptr empty_category() {
    static cat_ptr c = [] {
        raw_category raw;
        raw.name = "Empty";
        return validate_category_ptr(raw);
    }();
    return c;
}

lax_object terminal_laxcomma(x_structure &xs) {
    return lax_right(probe_one(), xs);
}

lax_morphism to_terminal_laxcomma(const lax_object &a, x_structure &xs) {
    lax_object t = terminal_laxcomma(xs);
    functor bang = constant_functor("bang", a.base(), probe_one(), 0);
    std::vector<int> comps(a.base()->object_count());
    for (int w = 0; w < a.base()->object_count(); ++w)
        comps[w] = xs.to_terminal(a.structure.ob(w));
    nat_trans cell =
        make_nat_trans("tau", a.structure, compose_functor(t.structure, bang), comps);
    return make_lax_morphism(std::move(bang), std::move(cell), t.structure);
}

lax_object initial_laxcomma(x_structure &xs) {
    if (!xs.initial())
        throw error(errc::no_initial_object, "base category lacks an initial object");
    return make_lax_object(make_functor("void", empty_category(), xs.cat(), {}, {}));
}

lax_morphism from_initial_laxcomma(const lax_object &b, x_structure &xs) {
    lax_object z = initial_laxcomma(xs);
    functor inj = make_functor("cobang", empty_category(), b.base(), {}, {});
    nat_trans cell = make_nat_trans("w", z.structure, compose_functor(b.structure, inj), {});
    return make_lax_morphism(std::move(inj), std::move(cell), b.structure);
}

lax_prod_data product_laxcomma(const lax_object &a, const lax_object &b, x_structure &xs) {
    if (!(*a.over() == *b.over()))
        throw error(errc::shape_mismatch, "objects live over different base categories");
    cat_ptr w = a.base(), y = b.base();
    cat_ptr p = product_category(w, y);
    int ny = y->object_count(), my = y->morphism_count();

    std::vector<int> omap(p->object_count()), mmap(p->morphism_count());
    std::vector<int> cells1(p->object_count()), cells2(p->object_count());
    for (int o = 0; o < p->object_count(); ++o) {
        int va = a.structure.ob(o / ny), vb = b.structure.ob(o % ny);
        auto pd = xs.product(va, vb);
        if (!pd)
            throw error(errc::missing_products, "base category lacks the product of " +
                                                    xs.cat()->objects[va] + " and " +
                                                    xs.cat()->objects[vb]);
        omap[o] = pd->obj;
        cells1[o] = pd->pr1;
        cells2[o] = pd->pr2;
    }
    for (int m = 0; m < p->morphism_count(); ++m)
        mmap[m] = xs.product_mor(a.structure.mor(m / my), b.structure.mor(m % my));
    lax_object obj = make_lax_object(make_functor(
        "prod(" + a.name() + "," + b.name() + ")", p, xs.cat(), omap, mmap));

    functor pj1 = projection_functor("pr1", p, w, y, true);
    functor pj2 = projection_functor("pr2", p, w, y, false);
    lax_morphism pr1 = make_lax_morphism(
        pj1, make_nat_trans("c1", obj.structure, compose_functor(a.structure, pj1), cells1),
        a.structure);
    lax_morphism pr2 = make_lax_morphism(
        pj2, make_nat_trans("c2", obj.structure, compose_functor(b.structure, pj2), cells2),
        b.structure);
    return {std::move(obj), std::move(pr1), std::move(pr2)};
}

lax_morphism product_mediator(const lax_prod_data &p, const lax_morphism &u,
                              const lax_morphism &v, x_structure &xs) {
    if (!(u.source() == v.source()))
        throw error(errc::shape_mismatch, "mediator legs start at different objects");
    if (!(u.target() == p.pr1.target()) || !(v.target() == p.pr2.target()))
        throw error(errc::shape_mismatch, "mediator legs do not match the product factors");
    const lax_object a = p.pr1.target(), b = p.pr2.target();
    cat_ptr z = u.source().base();
    int ny = b.base()->object_count(), my = b.base()->morphism_count();

    std::vector<int> omap(z->object_count()), mmap(z->morphism_count());
    std::vector<int> cells(z->object_count());
    for (int o = 0; o < z->object_count(); ++o) {
        omap[o] = u.f.ob(o) * ny + v.f.ob(o);
        cells[o] = xs.mediator_to_product(a.structure.ob(u.f.ob(o)), b.structure.ob(v.f.ob(o)),
                                          u.cell.at(o), v.cell.at(o));
    }
    for (int m = 0; m < z->morphism_count(); ++m) mmap[m] = u.f.mor(m) * my + v.f.mor(m);
    functor base = make_functor("pair", z, p.obj.base(), omap, mmap);
    nat_trans cell = make_nat_trans("pairc", u.cell.source,
                                    compose_functor(p.obj.structure, base), cells);
    return make_lax_morphism(std::move(base), std::move(cell), p.obj.structure);
}

lax_morphism product_of_morphisms(const lax_prod_data &src, const lax_prod_data &dst,
                                  const lax_morphism &m1, const lax_morphism &m2,
                                  x_structure &xs) {
    if (!(m1.source() == src.pr1.target()) || !(m2.source() == src.pr2.target()) ||
        !(m1.target() == dst.pr1.target()) || !(m2.target() == dst.pr2.target()))
        throw error(errc::shape_mismatch, "maps do not match the product factors");
    cat_ptr sp = src.obj.base();
    int nb = src.pr2.f.target->object_count(), mb = src.pr2.f.target->morphism_count();
    int nd = dst.pr2.f.target->object_count(), md = dst.pr2.f.target->morphism_count();

    std::vector<int> omap(sp->object_count()), mmap(sp->morphism_count());
    std::vector<int> cells(sp->object_count());
    for (int o = 0; o < sp->object_count(); ++o) {
        int i = o / nb, j = o % nb;
        omap[o] = m1.f.ob(i) * nd + m2.f.ob(j);
        cells[o] = xs.product_mor(m1.cell.at(i), m2.cell.at(j));
    }
    for (int m = 0; m < sp->morphism_count(); ++m)
        mmap[m] = m1.f.mor(m / mb) * md + m2.f.mor(m % mb);
    functor base = make_functor("times", sp, dst.obj.base(), omap, mmap);
    nat_trans cell = make_nat_trans("timesc", src.obj.structure,
                                    compose_functor(dst.obj.structure, base), cells);
    return make_lax_morphism(std::move(base), std::move(cell), dst.obj.structure);
}

namespace {

struct fam_base {
    cat_ptr cat;
    std::vector<functor> extractors;
    std::vector<int> ostride, mstride;
};

fam_base family_base(const std::vector<cat_ptr> &ws) {
    int n = static_cast<int>(ws.size());
    std::vector<int> ostride(n, 1), mstride(n, 1);
    for (int i = n - 2; i >= 0; --i) {
        ostride[i] = ostride[i + 1] * ws[i + 1]->object_count();
        mstride[i] = mstride[i + 1] * ws[i + 1]->morphism_count();
    }
    long long n_obj = n ? ostride[0] * static_cast<long long>(ws[0]->object_count()) : 1;
    long long n_mor = n ? mstride[0] * static_cast<long long>(ws[0]->morphism_count()) : 1;
    const auto lim = bounds::current();
    if (n_obj > lim.max_objects || n_mor > lim.max_morphisms)
        throw error(errc::size_limit_exceeded, "family product base is too large");

    auto odigits = [&](int o) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) { d[i] = o / ostride[i]; o %= ostride[i]; }
        return d;
    };
    auto mdigits = [&](int m) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) { d[i] = m / mstride[i]; m %= mstride[i]; }
        return d;
    };

    raw_category raw;
    raw.name = "fam";
    for (int o = 0; o < n_obj; ++o) {
        auto d = odigits(o);
        std::string nm = "(";
        for (int i = 0; i < n; ++i) nm += (i ? "," : "") + ws[i]->objects[d[i]];
        raw.objects.push_back(nm + ")");
    }
    for (int m = 0; m < n_mor; ++m) {
        auto d = mdigits(m);
        std::string nm = "(";
        int dom = 0, cod = 0;
        for (int i = 0; i < n; ++i) {
            nm += (i ? "," : "") + ws[i]->morphisms[d[i]].name;
            dom += ws[i]->dom(d[i]) * ostride[i];
            cod += ws[i]->cod(d[i]) * ostride[i];
        }
        raw.morphisms.push_back({nm + ")", dom, cod});
    }
    for (int o = 0; o < n_obj; ++o) {
        auto d = odigits(o);
        int id = 0;
        for (int i = 0; i < n; ++i) id += ws[i]->identity(d[i]) * mstride[i];
        raw.identity.push_back(id);
    }
    raw.compose.assign(n_mor, std::vector<int>(n_mor, -1));
    for (int g = 0; g < n_mor; ++g)
        for (int f = 0; f < n_mor; ++f) {
            auto dg = mdigits(g), df = mdigits(f);
            int out = 0;
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                if (ws[i]->dom(dg[i]) != ws[i]->cod(df[i])) { ok = false; break; }
                out += ws[i]->compose(dg[i], df[i]) * mstride[i];
            }
            if (ok) raw.compose[g][f] = out;
        }

    fam_base out;
    out.cat = validate_category_ptr(raw);
    for (int i = 0; i < n; ++i) {
        std::vector<int> omap(n_obj), mmap(n_mor);
        for (int o = 0; o < n_obj; ++o) omap[o] = odigits(o)[i];
        for (int m = 0; m < n_mor; ++m) mmap[m] = mdigits(m)[i];
        out.extractors.push_back(
            make_functor("ex" + std::to_string(i), out.cat, ws[i], omap, mmap));
    }
    out.ostride = std::move(ostride);
    out.mstride = std::move(mstride);
    return out;
}

} // namespace

lax_fam_data product_family_laxcomma(const std::vector<lax_object> &as, x_structure &xs) {
    if (as.empty()) return {terminal_laxcomma(xs), {}, {}};
    for (const auto &a : as)
        if (!(*a.over() == *xs.cat()))
            throw error(errc::shape_mismatch, "family member lives over a different base");
    if (as.size() == 1)
        return {as[0], {identity_lax(as[0])}, {identity_functor(as[0].base())}};

    int n = static_cast<int>(as.size());
    std::vector<cat_ptr> ws;
    for (const auto &a : as) ws.push_back(a.base());
    fam_base fb = family_base(ws);

    int n_obj = fb.cat->object_count(), n_mor = fb.cat->morphism_count();
    std::vector<int> omap(n_obj), mmap(n_mor);
    std::vector<std::vector<int>> legcells(n, std::vector<int>(n_obj));
    for (int o = 0; o < n_obj; ++o) {
        std::vector<int> vals(n);
        for (int i = 0; i < n; ++i) vals[i] = as[i].structure.ob(fb.extractors[i].ob(o));
        auto fd = xs.product_family(vals);
        if (!fd) throw error(errc::missing_products, "base category lacks a family product");
        omap[o] = fd->obj;
        for (int i = 0; i < n; ++i) legcells[i][o] = fd->legs[i];
    }
    for (int m = 0; m < n_mor; ++m) {
        std::vector<int> doms(n), fs(n);
        for (int i = 0; i < n; ++i) {
            int mi = fb.extractors[i].mor(m);
            fs[i] = as[i].structure.mor(mi);
            doms[i] = as[i].structure.ob(as[i].base()->dom(mi));
        }
        mmap[m] = xs.family_mor(doms, fs);
    }
    std::string nm = "fam(";
    for (int i = 0; i < n; ++i) nm += (i ? "," : "") + as[i].name();
    lax_object obj = make_lax_object(make_functor(nm + ")", fb.cat, xs.cat(), omap, mmap));

    lax_fam_data out;
    out.obj = obj;
    for (int i = 0; i < n; ++i) {
        nat_trans cell =
            make_nat_trans("leg" + std::to_string(i), obj.structure,
                           compose_functor(as[i].structure, fb.extractors[i]), legcells[i]);
        out.legs.push_back(make_lax_morphism(fb.extractors[i], std::move(cell), as[i].structure));
    }
    out.extractors = std::move(fb.extractors);
    return out;
}

lax_morphism family_mediator(const lax_fam_data &p, const std::vector<lax_morphism> &us,
                             x_structure &xs) {
    int n = static_cast<int>(us.size());
    if (n != static_cast<int>(p.legs.size()))
        throw error(errc::shape_mismatch, "mediator needs one leg per family member");
    if (n == 0)
        throw error(errc::input_error, "empty family: mediate with to_terminal_laxcomma");
    for (int i = 1; i < n; ++i)
        if (!(us[i].source() == us[0].source()))
            throw error(errc::shape_mismatch, "mediator legs start at different objects");
    for (int i = 0; i < n; ++i)
        if (!(us[i].target() == p.legs[i].target()))
            throw error(errc::shape_mismatch, "mediator leg does not match its family member");
    if (n == 1) return us[0];

    cat_ptr z = us[0].source().base();
    std::vector<int> ostride(n, 1), mstride(n, 1);
    for (int i = n - 2; i >= 0; --i) {
        ostride[i] = ostride[i + 1] * p.extractors[i + 1].target->object_count();
        mstride[i] = mstride[i + 1] * p.extractors[i + 1].target->morphism_count();
    }
    std::vector<int> omap(z->object_count()), mmap(z->morphism_count());
    std::vector<int> cells(z->object_count());
    for (int o = 0; o < z->object_count(); ++o) {
        int enc = 0;
        std::vector<int> vals(n), cs(n);
        for (int i = 0; i < n; ++i) {
            enc += us[i].f.ob(o) * ostride[i];
            vals[i] = p.legs[i].target_structure.ob(us[i].f.ob(o));
            cs[i] = us[i].cell.at(o);
        }
        omap[o] = enc;
        cells[o] = xs.mediator_to_family(vals, cs);
    }
    for (int m = 0; m < z->morphism_count(); ++m) {
        int enc = 0;
        for (int i = 0; i < n; ++i) enc += us[i].f.mor(m) * mstride[i];
        mmap[m] = enc;
    }
    functor base = make_functor("tuple", z, p.obj.base(), omap, mmap);
    nat_trans cell = make_nat_trans("tuplec", us[0].cell.source,
                                    compose_functor(p.obj.structure, base), cells);
    return make_lax_morphism(std::move(base), std::move(cell), p.obj.structure);
}

lax_pb_data pullback_laxcomma(const lax_morphism &f, const lax_morphism &g, x_structure &xs) {
    if (!(f.target() == g.target()))
        throw error(errc::no_common_codomain, "pullback needs a cospan");
    cat_ptr w = f.source().base(), y = g.source().base();
    cat_ptr p = product_category(w, y);
    int ny = y->object_count(), my = y->morphism_count();

    std::vector<int> obj_in, mor_in;
    std::vector<int> obj_back(p->object_count(), -1), mor_back(p->morphism_count(), -1);
    for (int o = 0; o < p->object_count(); ++o)
        if (f.f.ob(o / ny) == g.f.ob(o % ny)) {
            obj_back[o] = static_cast<int>(obj_in.size());
            obj_in.push_back(o);
        }
    for (int m = 0; m < p->morphism_count(); ++m)
        if (f.f.mor(m / my) == g.f.mor(m % my)) {
            mor_back[m] = static_cast<int>(mor_in.size());
            mor_in.push_back(m);
        }

    raw_category raw;
    raw.name = "pb";
    for (int o : obj_in) raw.objects.push_back(p->objects[o]);
    for (int m : mor_in)
        raw.morphisms.push_back({p->morphisms[m].name, obj_back[p->dom(m)], obj_back[p->cod(m)]});
    for (int o : obj_in) raw.identity.push_back(mor_back[p->identity(o)]);
    int subm = static_cast<int>(mor_in.size());
    raw.compose.assign(subm, std::vector<int>(subm, -1));
    for (int gg = 0; gg < subm; ++gg)
        for (int ff = 0; ff < subm; ++ff) {
            if (p->cod(mor_in[ff]) != p->dom(mor_in[gg])) continue;
            raw.compose[gg][ff] = mor_back[p->compose(mor_in[gg], mor_in[ff])];
        }
    cat_ptr base = validate_category_ptr(raw);

    const functor &astr = f.cell.source, &bstr = g.cell.source;
    std::vector<int> omap(obj_in.size()), mmap(mor_in.size());
    std::vector<int> cells1(obj_in.size()), cells2(obj_in.size());
    for (size_t t = 0; t < obj_in.size(); ++t) {
        int wo = obj_in[t] / ny, yo = obj_in[t] % ny;
        auto pd = xs.pullback(f.cell.at(wo), g.cell.at(yo));
        if (!pd)
            throw error(errc::missing_pullbacks, "base category lacks a pullback over " +
                                                     xs.cat()->objects[f.target_structure.ob(
                                                         f.f.ob(wo))]);
        omap[t] = pd->obj;
        cells1[t] = pd->p1;
        cells2[t] = pd->p2;
    }
    const auto &x = xs.cat();
    for (size_t m = 0; m < mor_in.size(); ++m) {
        int pp = mor_in[m] / my, qq = mor_in[m] % my;
        int t = base->dom(static_cast<int>(m));
        int wo2 = w->cod(pp), yo2 = y->cod(qq);
        int u = x->compose(astr.mor(pp), cells1[t]);
        int v = x->compose(bstr.mor(qq), cells2[t]);
        mmap[m] = xs.mediator_to_pullback(f.cell.at(wo2), g.cell.at(yo2), u, v);
    }
    lax_object obj = make_lax_object(make_functor(
        "pb(" + f.source().name() + "," + g.source().name() + ")", base, x, omap, mmap));

    std::vector<int> o1(obj_in.size()), o2(obj_in.size()), m1(mor_in.size()), m2(mor_in.size());
    for (size_t t = 0; t < obj_in.size(); ++t) { o1[t] = obj_in[t] / ny; o2[t] = obj_in[t] % ny; }
    for (size_t m = 0; m < mor_in.size(); ++m) { m1[m] = mor_in[m] / my; m2[m] = mor_in[m] % my; }
    functor bj1 = make_functor("pb1", base, w, o1, m1);
    functor bj2 = make_functor("pb2", base, y, o2, m2);
    lax_morphism p1 = make_lax_morphism(
        bj1, make_nat_trans("c1", obj.structure, compose_functor(astr, bj1), cells1), astr);
    lax_morphism p2 = make_lax_morphism(
        bj2, make_nat_trans("c2", obj.structure, compose_functor(bstr, bj2), cells2), bstr);
    return {std::move(obj), std::move(p1), std::move(p2), f, g};
}

lax_morphism pullback_mediator(const lax_pb_data &p, const lax_morphism &u,
                               const lax_morphism &v, x_structure &xs) {
    if (!(u.source() == v.source()))
        throw error(errc::shape_mismatch, "mediator legs start at different objects");
    if (!(compose_lax(p.f, u) == compose_lax(p.g, v)))
        throw error(errc::not_a_cone, "legs do not commute over the cospan");
    cat_ptr z = u.source().base();
    cat_ptr base = p.obj.base();

    std::map<std::pair<int, int>, int> oback, mback;
    for (int t = 0; t < base->object_count(); ++t)
        oback[{p.p1.f.ob(t), p.p2.f.ob(t)}] = t;
    for (int m = 0; m < base->morphism_count(); ++m)
        mback[{p.p1.f.mor(m), p.p2.f.mor(m)}] = m;

    std::vector<int> omap(z->object_count()), mmap(z->morphism_count());
    std::vector<int> cells(z->object_count());
    for (int o = 0; o < z->object_count(); ++o) {
        omap[o] = oback.at({u.f.ob(o), v.f.ob(o)});
        cells[o] = xs.mediator_to_pullback(p.f.cell.at(u.f.ob(o)), p.g.cell.at(v.f.ob(o)),
                                           u.cell.at(o), v.cell.at(o));
    }
    for (int m = 0; m < z->morphism_count(); ++m)
        mmap[m] = mback.at({u.f.mor(m), v.f.mor(m)});
    functor bf = make_functor("into_pb", z, base, omap, mmap);
    nat_trans cell =
        make_nat_trans("into_pbc", u.cell.source, compose_functor(p.obj.structure, bf), cells);
    return make_lax_morphism(std::move(bf), std::move(cell), p.obj.structure);
}

lax_coprod_data coproduct_laxcomma(const lax_object &a, const lax_object &b) {
    if (!(*a.over() == *b.over()))
        throw error(errc::shape_mismatch, "objects live over different base categories");
    cat_ptr w = a.base(), y = b.base();
    cat_ptr c = coproduct_category(w, y);
    int nw = w->object_count(), mw = w->morphism_count();

    std::vector<int> omap = a.structure.omap, mmap = a.structure.mmap;
    omap.insert(omap.end(), b.structure.omap.begin(), b.structure.omap.end());
    mmap.insert(mmap.end(), b.structure.mmap.begin(), b.structure.mmap.end());
    lax_object obj = make_lax_object(make_functor(
        "coprod(" + a.name() + "," + b.name() + ")", c, a.over(), omap, mmap));

    std::vector<int> o1(nw), mm1(mw);
    std::iota(o1.begin(), o1.end(), 0);
    std::iota(mm1.begin(), mm1.end(), 0);
    std::vector<int> o2(y->object_count()), mm2(y->morphism_count());
    std::iota(o2.begin(), o2.end(), nw);
    std::iota(mm2.begin(), mm2.end(), mw);
    functor i1 = make_functor("in1", w, c, o1, mm1);
    functor i2 = make_functor("in2", y, c, o2, mm2);
    lax_morphism in1 = make_lax_morphism(
        i1,
        make_nat_trans("c1", a.structure, compose_functor(obj.structure, i1),
                       [&] {
                           std::vector<int> id(nw);
                           for (int o = 0; o < nw; ++o)
                               id[o] = a.over()->identity(a.structure.ob(o));
                           return id;
                       }()),
        obj.structure);
    lax_morphism in2 = make_lax_morphism(
        i2,
        make_nat_trans("c2", b.structure, compose_functor(obj.structure, i2),
                       [&] {
                           std::vector<int> id(y->object_count());
                           for (int o = 0; o < y->object_count(); ++o)
                               id[o] = b.over()->identity(b.structure.ob(o));
                           return id;
                       }()),
        obj.structure);
    return {std::move(obj), std::move(in1), std::move(in2)};
}

lax_morphism coproduct_mediator(const lax_coprod_data &c, const lax_morphism &u,
                                const lax_morphism &v) {
    if (!(u.target() == v.target()))
        throw error(errc::shape_mismatch, "mediator legs end at different objects");
    if (!(u.source() == c.in1.source()) || !(v.source() == c.in2.source()))
        throw error(errc::shape_mismatch, "mediator legs do not match the summands");
    std::vector<int> omap = u.f.omap, mmap = u.f.mmap;
    omap.insert(omap.end(), v.f.omap.begin(), v.f.omap.end());
    mmap.insert(mmap.end(), v.f.mmap.begin(), v.f.mmap.end());
    std::vector<int> cells = u.cell.components;
    cells.insert(cells.end(), v.cell.components.begin(), v.cell.components.end());
    functor base = make_functor("case", c.obj.base(), u.f.target, omap, mmap);
    nat_trans cell = make_nat_trans("casec", c.obj.structure,
                                    compose_functor(u.target_structure, base), cells);
    return make_lax_morphism(std::move(base), std::move(cell), u.target_structure);
}

lan_data left_kan(const functor &f, const functor &a, x_structure &xs) {
    if (!(*f.source == *a.source))
        throw error(errc::shape_mismatch, "extension needs maps with a common source");
    cat_ptr y = f.target;
    const auto &x = xs.cat();
    (void)x;

    lan_data out;
    for (int yo = 0; yo < y->object_count(); ++yo) {
        lan_site site;
        site.comma = comma_over(f, yo);
        site.diagram = compose_functor(a, site.comma.projection);
        auto col = find_colimit(site.diagram);
        if (!col)
            throw error(errc::missing_colimit,
                        "left extension undefined at " + y->objects[yo]);
        site.cocone = *col;
        out.at.push_back(std::move(site));
    }

    std::vector<int> omap(y->object_count()), mmap(y->morphism_count());
    for (int yo = 0; yo < y->object_count(); ++yo) omap[yo] = out.at[yo].cocone.apex;
    for (int k = 0; k < y->morphism_count(); ++k) {
        int y0 = y->dom(k), y1 = y->cod(k);
        const lan_site &s0 = out.at[y0], &s1 = out.at[y1];
        cone test;
        test.apex = s1.cocone.apex;
        test.legs.resize(s0.comma.objects.size());
        for (size_t i = 0; i < s0.comma.objects.size(); ++i) {
            auto [w, h] = s0.comma.objects[i];
            int h2 = y->compose(k, h);
            int idx = -1;
            for (size_t t = 0; t < s1.comma.objects.size(); ++t)
                if (s1.comma.objects[t] == std::make_pair(w, h2)) { idx = static_cast<int>(t); break; }
            test.legs[i] = s1.cocone.legs[idx];
        }
        auto meds = cocone_mediators(s0.diagram, s0.cocone, test);
        if (meds.size() != 1)
            throw error(errc::missing_colimit, "colimit mediator is not unique");
        mmap[k] = meds[0];
    }
    out.ext = make_functor("lan(" + a.name + "," + f.name + ")", y, a.target, omap, mmap);

    std::vector<int> comps(f.source->object_count());
    for (int w = 0; w < f.source->object_count(); ++w) {
        const lan_site &s = out.at[f.ob(w)];
        int idx = -1;
        for (size_t t = 0; t < s.comma.objects.size(); ++t)
            if (s.comma.objects[t] == std::make_pair(w, y->identity(f.ob(w)))) {
                idx = static_cast<int>(t);
                break;
            }
        comps[w] = s.cocone.legs[idx];
    }
    out.unit = make_nat_trans("unit", a, compose_functor(out.ext, f), comps);
    return out;
}

nat_trans kan_mate(const lan_data &lan, const functor &f, const nat_trans &phi,
                   const functor &b) {
    if (!(phi.source == lan.unit.source))
        throw error(errc::invalid_nat_trans, "cell does not start at the extended map");
    if (!(phi.target == compose_functor(b, f)))
        throw error(errc::invalid_nat_trans, "cell does not target the restriction");
    const auto &x = b.target;
    cat_ptr y = f.target;
    std::vector<int> comps(y->object_count());
    for (int yo = 0; yo < y->object_count(); ++yo) {
        const lan_site &s = lan.at[yo];
        cone test;
        test.apex = b.ob(yo);
        test.legs.resize(s.comma.objects.size());
        for (size_t i = 0; i < s.comma.objects.size(); ++i) {
            auto [w, h] = s.comma.objects[i];
            test.legs[i] = x->compose(b.mor(h), phi.at(w));
        }
        auto meds = cocone_mediators(s.diagram, s.cocone, test);
        if (meds.size() != 1)
            throw error(errc::missing_colimit, "colimit mediator is not unique");
        comps[yo] = meds[0];
    }
    return make_nat_trans("mate", lan.ext, b, comps);
}

nat_trans kan_transpose_back(const lan_data &lan, const functor &f, const nat_trans &psi) {
    return compose_nat_trans(whisker_right(psi, f), lan.unit);
}

nat_trans kan_on_cell(const lan_data &lan_a, const lan_data &lan_c, const nat_trans &gamma) {
    if (!(gamma.source == lan_a.unit.source) || !(gamma.target == lan_c.unit.source))
        throw error(errc::invalid_nat_trans, "cell does not join the two extended maps");
    const auto &x = lan_a.ext.target;
    cat_ptr y = lan_a.ext.source;
    std::vector<int> comps(y->object_count());
    for (int yo = 0; yo < y->object_count(); ++yo) {
        const lan_site &sa = lan_a.at[yo], &sc = lan_c.at[yo];
        cone test;
        test.apex = sc.cocone.apex;
        test.legs.resize(sa.comma.objects.size());
        for (size_t i = 0; i < sa.comma.objects.size(); ++i)
            test.legs[i] = x->compose(sc.cocone.legs[i], gamma.at(sa.comma.objects[i].first));
        auto meds = cocone_mediators(sa.diagram, sa.cocone, test);
        if (meds.size() != 1)
            throw error(errc::missing_colimit, "colimit mediator is not unique");
        comps[yo] = meds[0];
    }
    return make_nat_trans("onmap", lan_a.ext, lan_c.ext, comps);
}

namespace {

struct union_find {
    std::vector<int> p;
    explicit union_find(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int i) { return p[i] == i ? i : p[i] = find(p[i]); }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        p[b] = a;
        return true;
    }
};

} // namespace

coeq_base coequalize_base(const functor &f, const functor &g) {
    if (!(*f.source == *g.source) || !(*f.target == *g.target))
        throw error(errc::not_parallel, "coequalizer needs a parallel pair");
    cat_ptr w = f.source, y = f.target;
    const auto lim = bounds::current();

    union_find ouf(y->object_count());
    for (int o = 0; o < w->object_count(); ++o) ouf.unite(f.ob(o), g.ob(o));

    // elements of the quotient: images of y-morphisms plus formal composites
    std::vector<std::pair<int, int>> ends;   // dom class rep, cod class rep
    union_find euf(0);
    auto add_elem = [&](int dc, int cc) {
        if (static_cast<int>(ends.size()) >= 4 * lim.max_morphisms)
            throw error(errc::coequalizer_not_finite_within_bound,
                        "quotient exceeded the morphism cap while saturating");
        ends.push_back({dc, cc});
        euf.p.push_back(static_cast<int>(euf.p.size()));
        return static_cast<int>(ends.size()) - 1;
    };
    std::vector<int> from_y(y->morphism_count());
    for (int m = 0; m < y->morphism_count(); ++m)
        from_y[m] = add_elem(ouf.find(y->dom(m)), ouf.find(y->cod(m)));

    // identities of merged objects coincide; the two functors coincide
    for (int o = 0; o < y->object_count(); ++o)
        euf.unite(from_y[y->identity(o)], from_y[y->identity(ouf.find(o))]);
    for (int m = 0; m < w->morphism_count(); ++m)
        euf.unite(from_y[f.mor(m)], from_y[g.mor(m)]);

    std::map<std::pair<int, int>, int> comp;
    bool dirty = true;
    auto define = [&](int gg, int ff, int val) {
        gg = euf.find(gg); ff = euf.find(ff); val = euf.find(val);
        auto it = comp.find({gg, ff});
        if (it == comp.end()) {
            comp[{gg, ff}] = val;
            dirty = true;
        } else if (euf.find(it->second) != val) {
            euf.unite(it->second, val);
            dirty = true;
        }
    };
    auto normalize = [&] {
        for (bool again = true; again;) {
            again = false;
            std::map<std::pair<int, int>, int> next;
            for (const auto &[key, val] : comp) {
                std::pair<int, int> k{euf.find(key.first), euf.find(key.second)};
                int v = euf.find(val);
                auto it = next.find(k);
                if (it == next.end()) next[k] = v;
                else if (it->second != v) { euf.unite(it->second, v); again = true; }
            }
            comp = std::move(next);
        }
    };

    for (int gm = 0; gm < y->morphism_count(); ++gm)
        for (int fm = 0; fm < y->morphism_count(); ++fm) {
            if (y->cod(fm) != y->dom(gm)) continue;
            define(from_y[gm], from_y[fm], from_y[y->compose(gm, fm)]);
        }

    int rounds = 0;
    while (dirty) {
        if (++rounds > lim.saturation_rounds)
            throw error(errc::coequalizer_not_finite_within_bound,
                        "quotient did not stabilize within " +
                            std::to_string(lim.saturation_rounds) + " rounds");
        dirty = false;
        normalize();

        // identity absorption
        for (size_t e = 0; e < ends.size(); ++e) {
            if (euf.find(static_cast<int>(e)) != static_cast<int>(e)) continue;
            int dc = ouf.find(ends[e].first), cc = ouf.find(ends[e].second);
            define(static_cast<int>(e), euf.find(from_y[y->identity(dc)]), static_cast<int>(e));
            define(euf.find(from_y[y->identity(cc)]), static_cast<int>(e), static_cast<int>(e));
        }
        normalize();

        // associativity closure over current entries
        {
            auto snapshot = comp;
            for (const auto &[k21, a] : snapshot) {
                for (const auto &[k32, b] : snapshot) {
                    if (euf.find(k32.second) != euf.find(k21.first)) continue;
                    int e1 = k21.second, e3 = k32.first;
                    auto lhs = comp.find({euf.find(e3), euf.find(a)});
                    auto rhs = comp.find({euf.find(b), euf.find(e1)});
                    if (lhs != comp.end() && rhs != comp.end()) {
                        if (euf.find(lhs->second) != euf.find(rhs->second)) {
                            euf.unite(lhs->second, rhs->second);
                            dirty = true;
                        }
                    } else if (lhs != comp.end()) {
                        define(b, e1, lhs->second);
                    } else if (rhs != comp.end()) {
                        define(e3, a, rhs->second);
                    }
                }
            }
            normalize();
        }

        // totality: freely add missing composites
        std::vector<int> roots;
        for (size_t e = 0; e < ends.size(); ++e)
            if (euf.find(static_cast<int>(e)) == static_cast<int>(e))
                roots.push_back(static_cast<int>(e));
        if (static_cast<int>(roots.size()) > lim.max_morphisms)
            throw error(errc::coequalizer_not_finite_within_bound,
                        "quotient exceeded the morphism cap while saturating");
        for (int e2 : roots)
            for (int e1 : roots) {
                if (ouf.find(ends[e1].second) != ouf.find(ends[e2].first)) continue;
                if (comp.count({e2, e1})) continue;
                int fresh = add_elem(ouf.find(ends[e1].first), ouf.find(ends[e2].second));
                define(e2, e1, fresh);
            }
    }

    // assemble the quotient category
    std::vector<int> class_rep;   // object classes by smallest member
    std::vector<int> class_of(y->object_count(), -1);
    for (int o = 0; o < y->object_count(); ++o)
        if (ouf.find(o) == o) {
            for (int o2 = 0; o2 < y->object_count(); ++o2)
                if (ouf.find(o2) == o) { class_of[o2] = static_cast<int>(class_rep.size()); }
            class_rep.push_back(o);
        }

    std::vector<int> eroots;
    std::vector<int> first_y(ends.size(), -1);
    for (int m = 0; m < y->morphism_count(); ++m) {
        int r = euf.find(from_y[m]);
        if (first_y[r] < 0) first_y[r] = m;
    }
    for (size_t e = 0; e < ends.size(); ++e)
        if (euf.find(static_cast<int>(e)) == static_cast<int>(e))
            eroots.push_back(static_cast<int>(e));
    std::sort(eroots.begin(), eroots.end(), [&](int a, int b) {
        bool ya = first_y[a] >= 0, yb = first_y[b] >= 0;
        if (ya != yb) return ya;
        if (ya) return first_y[a] < first_y[b];
        return a < b;
    });
    std::vector<int> eindex(ends.size(), -1);
    for (size_t i = 0; i < eroots.size(); ++i) eindex[eroots[i]] = static_cast<int>(i);

    raw_category raw;
    raw.name = "coeq(" + y->name + ")";
    for (int r : class_rep) raw.objects.push_back(y->objects[r]);
    std::vector<std::string> used;
    int fresh_count = 0;
    for (int e : eroots) {
        std::string nm = first_y[e] >= 0 ? y->morphisms[first_y[e]].name
                                         : "w" + std::to_string(fresh_count++);
        nm = fresh_name(used, nm);
        raw.morphisms.push_back({nm, class_of[ouf.find(ends[e].first)],
                                 class_of[ouf.find(ends[e].second)]});
    }
    for (int r : class_rep) raw.identity.push_back(eindex[euf.find(from_y[y->identity(r)])]);
    int em = static_cast<int>(eroots.size());
    raw.compose.assign(em, std::vector<int>(em, -1));
    for (const auto &[key, val] : comp)
        raw.compose[eindex[euf.find(key.first)]][eindex[euf.find(key.second)]] =
            eindex[euf.find(val)];

    coeq_base out;
    out.quotient = validate_category_ptr(raw);
    std::vector<int> omap(y->object_count()), mmap(y->morphism_count());
    for (int o = 0; o < y->object_count(); ++o) omap[o] = class_of[o];
    for (int m = 0; m < y->morphism_count(); ++m) mmap[m] = eindex[euf.find(from_y[m])];
    out.j = make_functor("quot", y, out.quotient, omap, mmap);
    return out;
}

lax_coeq_data coequalizer_laxcomma(const lax_morphism &m1, const lax_morphism &m2,
                                   x_structure &xs) {
    if (!(m1.source() == m2.source()) || !(m1.target() == m2.target()))
        throw error(errc::not_parallel, "coequalizer needs a parallel pair");
    coeq_base cb = coequalize_base(m1.f, m2.f);
    functor h = compose_functor(cb.j, m1.f);
    if (!(h == compose_functor(cb.j, m2.f)))
        throw error(errc::not_parallel, "quotient failed to equalize the base maps");

    const functor &a = m1.cell.source;
    const functor &b = m1.target_structure;
    lan_data lana = left_kan(h, a, xs);
    lan_data lanb = left_kan(cb.j, b, xs);

    nat_trans to_bh1 = compose_nat_trans(whisker_right(lanb.unit, m1.f), m1.cell);
    nat_trans to_bh2 = compose_nat_trans(whisker_right(lanb.unit, m2.f), m2.cell);
    nat_trans leg1 = kan_mate(lana, h, to_bh1, lanb.ext);
    nat_trans leg2 = kan_mate(lana, h, to_bh2, lanb.ext);

    cat_ptr c = cb.quotient;
    const auto &x = xs.cat();
    std::vector<coeq_data> pts(c->object_count());
    std::vector<int> omap(c->object_count()), mmap(c->morphism_count());
    for (int o = 0; o < c->object_count(); ++o) {
        auto cq = xs.coequalizer(leg1.at(o), leg2.at(o));
        if (!cq)
            throw error(errc::missing_colimit,
                        "base category lacks a coequalizer at " + c->objects[o]);
        pts[o] = *cq;
        omap[o] = cq->obj;
    }
    for (int k = 0; k < c->morphism_count(); ++k) {
        int c0 = c->dom(k), c1 = c->cod(k);
        int u = x->compose(pts[c1].proj, lanb.ext.mor(k));
        mmap[k] = xs.mediator_from_coequalizer(leg1.at(c0), leg2.at(c0), u);
    }
    functor d = make_functor("coeqstr", c, x, omap, mmap);

    std::vector<int> comps(b.source->object_count());
    for (int yo = 0; yo < b.source->object_count(); ++yo)
        comps[yo] = x->compose(pts[cb.j.ob(yo)].proj, lanb.unit.at(yo));
    nat_trans phi = make_nat_trans("phi", b, compose_functor(d, cb.j), comps);
    return {make_lax_morphism(cb.j, std::move(phi), std::move(d))};
}

namespace {

// scan for the unique map src -> end whose composites with the end legs hit
// the given wedge; ends are limits, so legs are jointly monic
int unique_into_end(const cat_ptr &x, int src, const end_data &ed,
                    const std::vector<int> &legs) {
    int found = -1, hits = 0;
    for (int m : x->hom(src, ed.obj)) {
        bool ok = true;
        for (size_t w = 0; w < legs.size(); ++w)
            if (x->compose(ed.legs[w], m) != legs[w]) { ok = false; break; }
        if (ok) { found = m; ++hits; }
    }
    if (hits != 1)
        throw error(errc::bijective_failure, "wedge does not factor uniquely through the end");
    return found;
}

} // namespace

lax_exp_data exponential_laxcomma(const lax_object &a, const lax_object &b, x_structure &xs) {
    if (!(*a.over() == *xs.cat()) || !(*b.over() == *xs.cat()))
        throw error(errc::shape_mismatch, "objects live over different base categories");
    cat_ptr w = a.base(), y = b.base();
    const auto &x = xs.cat();
    const functor &astr = a.structure, &bstr = b.structure;

    funcat_result fc = functor_category(w, y);
    cat_ptr s = product_category(opposite(w), w);
    int nw = w->object_count(), mw = w->morphism_count();

    std::vector<end_data> ends;
    for (const functor &h : fc.objects) {
        std::vector<int> tomap(s->object_count()), tmmap(s->morphism_count());
        for (int o = 0; o < s->object_count(); ++o) {
            auto ex = xs.exponential(astr.ob(o / nw), bstr.ob(h.ob(o % nw)));
            if (!ex)
                throw error(errc::missing_exponential,
                            "base category lacks an exponential under " + h.name);
            tomap[o] = ex->obj;
        }
        for (int m = 0; m < s->morphism_count(); ++m) {
            int p = m / mw, q = m % mw;
            int w_from = w->cod(p), w_to = w->dom(p);
            int j_from = w->dom(q), j_to = w->cod(q);
            auto ex = xs.exponential(astr.ob(w_from), bstr.ob(h.ob(j_from)));
            int pm = xs.product_mor(x->identity(ex->obj), astr.mor(p));
            int body = x->compose(bstr.mor(h.mor(q)), x->compose(ex->ev, pm));
            tmmap[m] = xs.curry(ex->obj, astr.ob(w_to), bstr.ob(h.ob(j_to)), body);
        }
        functor t = make_functor("integrand", s, x, tomap, tmmap);
        auto ed = end_of(w, t, xs);
        if (!ed)
            throw error(errc::missing_end, "base category lacks the end under " + h.name);
        ends.push_back(*ed);
    }

    std::vector<int> omap(fc.cat->object_count()), mmap(fc.cat->morphism_count());
    for (int o = 0; o < fc.cat->object_count(); ++o) omap[o] = ends[o].obj;
    for (int n = 0; n < fc.cat->morphism_count(); ++n) {
        const nat_trans &al = fc.morphisms[n];
        int hi = fc.cat->dom(n), hj = fc.cat->cod(n);
        const functor &h0 = fc.objects[hi], &h1 = fc.objects[hj];
        std::vector<int> cand(nw);
        for (int wo = 0; wo < nw; ++wo) {
            auto ex = xs.exponential(astr.ob(wo), bstr.ob(h0.ob(wo)));
            int post = xs.curry(ex->obj, astr.ob(wo), bstr.ob(h1.ob(wo)),
                                x->compose(bstr.mor(al.at(wo)), ex->ev));
            cand[wo] = x->compose(post, ends[hi].legs[wo]);
        }
        mmap[n] = unique_into_end(x, ends[hi].obj, ends[hj], cand);
    }
    lax_object obj = make_lax_object(make_functor(
        "exp(" + a.name() + "," + b.name() + ")", fc.cat, x, omap, mmap));

    lax_prod_data prod = product_laxcomma(obj, a, xs);

    // evaluation: base sends (h, w) to h(w)
    cat_ptr pbase = prod.obj.base();
    std::vector<int> eomap(pbase->object_count()), emmap(pbase->morphism_count());
    std::vector<int> ecells(pbase->object_count());
    for (int o = 0; o < pbase->object_count(); ++o) {
        int hi = o / nw, wo = o % nw;
        eomap[o] = fc.objects[hi].ob(wo);
        auto ex = xs.exponential(astr.ob(wo), bstr.ob(fc.objects[hi].ob(wo)));
        int pm = xs.product_mor(ends[hi].legs[wo], x->identity(astr.ob(wo)));
        ecells[o] = x->compose(ex->ev, pm);
    }
    for (int m = 0; m < pbase->morphism_count(); ++m) {
        int n = m / mw, p = m % mw;
        const nat_trans &al = fc.morphisms[n];
        const functor &h0 = fc.morphisms[n].source;
        emmap[m] = y->compose(al.at(w->cod(p)), h0.mor(p));
    }
    functor evf = make_functor("eval", pbase, y, eomap, emmap);
    lax_morphism ev = make_lax_morphism(
        evf, make_nat_trans("evc", prod.obj.structure, compose_functor(bstr, evf), ecells),
        bstr);

    return {std::move(obj), std::move(fc), std::move(ends), std::move(prod), std::move(ev)};
}

lax_morphism curry_lax(const lax_exp_data &e, const lax_prod_data &prod_ca,
                       const lax_morphism &m, x_structure &xs) {
    if (!(m.source() == prod_ca.obj))
        throw error(errc::shape_mismatch, "map does not start at the given product");
    if (!(m.target() == e.ev.target()))
        throw error(errc::shape_mismatch, "map does not end at the exponential's target");
    const lax_object c = prod_ca.pr1.target(), a = prod_ca.pr2.target();
    if (!(a == e.prod.pr2.target()))
        throw error(errc::shape_mismatch, "product second factor differs from the exponent");
    cat_ptr z = c.base(), w = a.base();
    const auto &x = xs.cat();
    int nw = w->object_count(), mw = w->morphism_count();
    const functor &cstr = c.structure, &astr = a.structure, &bstr = e.ev.target_structure;

    std::vector<int> omap(z->object_count()), mmap(z->morphism_count());
    std::vector<int> cells(z->object_count());
    for (int zo = 0; zo < z->object_count(); ++zo) {
        std::vector<int> ho(nw), hm(mw);
        for (int wo = 0; wo < nw; ++wo) ho[wo] = m.f.ob(zo * nw + wo);
        for (int p = 0; p < mw; ++p) hm[p] = m.f.mor(z->identity(zo) * mw + p);
        int hi = -1;
        for (size_t k = 0; k < e.fc.objects.size(); ++k)
            if (e.fc.objects[k].omap == ho && e.fc.objects[k].mmap == hm) {
                hi = static_cast<int>(k);
                break;
            }
        if (hi < 0) throw error(errc::shape_mismatch, "transposed base map not found");
        omap[zo] = hi;

        std::vector<int> legs(nw);
        for (int wo = 0; wo < nw; ++wo)
            legs[wo] = xs.curry(cstr.ob(zo), astr.ob(wo), bstr.ob(m.f.ob(zo * nw + wo)),
                                m.cell.at(zo * nw + wo));
        cells[zo] = unique_into_end(x, cstr.ob(zo), e.ends[hi], legs);
    }
    for (int r = 0; r < z->morphism_count(); ++r) {
        std::vector<int> comps(nw);
        for (int wo = 0; wo < nw; ++wo) comps[wo] = m.f.mor(r * mw + w->identity(wo));
        int ni = -1;
        for (size_t k = 0; k < e.fc.morphisms.size(); ++k)
            if (e.fc.cat->dom(static_cast<int>(k)) == omap[z->dom(r)] &&
                e.fc.cat->cod(static_cast<int>(k)) == omap[z->cod(r)] &&
                e.fc.morphisms[k].components == comps) {
                ni = static_cast<int>(k);
                break;
            }
        if (ni < 0) throw error(errc::shape_mismatch, "transposed base cell not found");
        mmap[r] = ni;
    }
    functor base = make_functor("transpose", z, e.fc.cat, omap, mmap);
    nat_trans cell =
        make_nat_trans("transc", cstr, compose_functor(e.obj.structure, base), cells);
    return make_lax_morphism(std::move(base), std::move(cell), e.obj.structure);
}

lax_morphism uncurry_lax(const lax_exp_data &e, const lax_prod_data &prod_ca,
                         const lax_morphism &h, x_structure &xs) {
    if (!(h.target() == e.obj))
        throw error(errc::shape_mismatch, "map does not end at the exponential");
    lax_object a = e.prod.pr2.target();
    return compose_lax(e.ev, product_of_morphisms(prod_ca, e.prod, h, identity_lax(a), xs));
}

} // namespace laxcat
