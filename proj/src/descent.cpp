#include "laxcat/descent.hpp"

#include <map>
#include <tuple>

namespace laxcat {

int slice_data::find_object(int w, int m) const {
    for (size_t i = 0; i < com.objects.size(); ++i)
        if (com.objects[i] == std::pair<int, int>{w, m}) return static_cast<int>(i);
    return -1;
}

int slice_data::find_morphism(int from, int to, int under) const {
    for (int k = 0; k < com.cat->morphism_count(); ++k)
        if (com.cat->dom(k) == from && com.cat->cod(k) == to && com.morphism_arrows[k] == under)
            return k;
    return -1;
}

slice_data slice_over(cat_ptr c, int vertex) {
    slice_data s;
    s.vertex = vertex;
    s.com = comma_over(identity_functor(std::move(c)), vertex);
    return s;
}

descent_monad_data descent_monad(cat_ptr c, int q) {
    descent_monad_data md;
    md.c = c;
    md.q = q;
    md.dom_slice = slice_over(c, c->dom(q));
    md.cod_slice = slice_over(c, c->cod(q));
    const std::string &qn = c->morphisms[q].name;
    cat_ptr se = md.dom_slice.com.cat, sb = md.cod_slice.com.cat;
    x_structure xs(c);

    // postcomposition with q
    std::vector<int> so(se->object_count()), sm(se->morphism_count());
    for (int i = 0; i < se->object_count(); ++i) {
        auto [w, m] = md.dom_slice.com.objects[i];
        so[i] = md.cod_slice.find_object(w, c->compose(q, m));
    }
    for (int k = 0; k < se->morphism_count(); ++k)
        sm[k] = md.cod_slice.find_morphism(so[se->dom(k)], so[se->cod(k)],
                                           md.dom_slice.com.morphism_arrows[k]);
    md.sigma = make_functor("post(" + qn + ")", se, sb, so, sm);

    // pulling back along q, with the canonical chooser
    std::vector<pb_data> pbs(sb->object_count());
    std::vector<int> po(sb->object_count()), pm(sb->morphism_count());
    for (int j = 0; j < sb->object_count(); ++j) {
        auto [w, n] = md.cod_slice.com.objects[j];
        auto pb = xs.pullback(q, n);
        if (!pb)
            throw error(errc::missing_pullbacks,
                        "no pullback of " + qn + " along " + c->morphisms[n].name);
        pbs[j] = *pb;
        po[j] = md.dom_slice.find_object(pb->obj, pb->p1);
    }
    for (int k = 0; k < sb->morphism_count(); ++k) {
        int j0 = sb->dom(k), j1 = sb->cod(k);
        int p = md.cod_slice.com.morphism_arrows[k];
        auto [w1, n1] = md.cod_slice.com.objects[j1];
        (void)w1;
        int med = xs.mediator_to_pullback(q, n1, pbs[j0].p1, c->compose(p, pbs[j0].p2));
        pm[k] = md.dom_slice.find_morphism(po[j0], po[j1], med);
    }
    md.pullback_along = make_functor("pull(" + qn + ")", sb, se, po, pm);

    md.monad = compose_functor(md.pullback_along, md.sigma);
    md.monad.name = "monad(" + qn + ")";

    std::vector<int> uc(se->object_count());
    for (int i = 0; i < se->object_count(); ++i) {
        auto [w, m] = md.dom_slice.com.objects[i];
        int med = xs.mediator_to_pullback(q, c->compose(q, m), m, c->identity(w));
        uc[i] = md.dom_slice.find_morphism(i, md.monad.ob(i), med);
    }
    md.unit = make_nat_trans("unit", identity_functor(se), md.monad, uc);

    functor sp = compose_functor(md.sigma, md.pullback_along);
    std::vector<int> cc(sb->object_count());
    for (int j = 0; j < sb->object_count(); ++j)
        cc[j] = md.cod_slice.find_morphism(sp.ob(j), j, pbs[j].p2);
    md.counit = make_nat_trans("counit", sp, identity_functor(sb), cc);

    std::vector<int> mc(se->object_count());
    for (int i = 0; i < se->object_count(); ++i)
        mc[i] = md.pullback_along.mor(md.counit.at(md.sigma.ob(i)));
    md.mult = make_nat_trans("mult", compose_functor(md.monad, md.monad), md.monad, mc);
    return md;
}

int em_result::find_object(int slice_obj, int xi) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == std::pair<int, int>{slice_obj, xi}) return static_cast<int>(i);
    return -1;
}

em_result em_category(const descent_monad_data &md) {
    cat_ptr se = md.dom_slice.com.cat;
    em_result em;
    for (int i = 0; i < se->object_count(); ++i) {
        int ti = md.monad.ob(i);
        for (int xi : se->hom(ti, i)) {
            if (se->compose(xi, md.unit.at(i)) != se->identity(i)) continue;
            if (se->compose(xi, md.monad.mor(xi)) != se->compose(xi, md.mult.at(i))) continue;
            em.objects.push_back({i, xi});
        }
    }

    raw_category raw;
    raw.name = "alg(" + md.c->morphisms[md.q].name + ")";
    std::map<std::tuple<int, int, int>, int> where;
    for (size_t a = 0; a < em.objects.size(); ++a)
        raw.objects.push_back("a" + std::to_string(a));
    for (size_t a = 0; a < em.objects.size(); ++a)
        for (size_t b = 0; b < em.objects.size(); ++b) {
            auto [ia, xa] = em.objects[a];
            auto [ib, xb] = em.objects[b];
            for (int h : se->hom(ia, ib)) {
                if (se->compose(h, xa) != se->compose(xb, md.monad.mor(h))) continue;
                where[{static_cast<int>(a), static_cast<int>(b), h}] =
                    static_cast<int>(raw.morphisms.size());
                raw.morphisms.push_back({"h" + std::to_string(raw.morphisms.size()),
                                         static_cast<int>(a), static_cast<int>(b)});
                em.morphisms.push_back(h);
            }
        }
    for (size_t a = 0; a < em.objects.size(); ++a)
        raw.identity.push_back(
            where.at({static_cast<int>(a), static_cast<int>(a), se->identity(em.objects[a].first)}));
    int n = static_cast<int>(raw.morphisms.size());
    raw.compose.assign(n, std::vector<int>(n, -1));
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
            raw.compose[g][f] = where.at(
                {raw.morphisms[f].dom, raw.morphisms[g].cod, se->compose(em.morphisms[g], em.morphisms[f])});
        }
    em.cat = validate_category_ptr(raw);
    return em;
}

comparison_data comparison_functor(cat_ptr c, int q) {
    comparison_data cd;
    cd.monad = descent_monad(std::move(c), q);
    cd.em = em_category(cd.monad);
    cat_ptr sb = cd.monad.cod_slice.com.cat;

    std::vector<int> ko(sb->object_count()), km(sb->morphism_count());
    for (int j = 0; j < sb->object_count(); ++j) {
        int xi = cd.monad.pullback_along.mor(cd.monad.counit.at(j));
        ko[j] = cd.em.find_object(cd.monad.pullback_along.ob(j), xi);
        if (ko[j] < 0) throw error(errc::object_not_found, "comparison image is not an algebra");
    }
    for (int k = 0; k < sb->morphism_count(); ++k) {
        int under = cd.monad.pullback_along.mor(k);
        km[k] = -1;
        for (int t = 0; t < cd.em.cat->morphism_count(); ++t)
            if (cd.em.cat->dom(t) == ko[sb->dom(k)] && cd.em.cat->cod(t) == ko[sb->cod(k)] &&
                cd.em.morphisms[t] == under) {
                km[k] = t;
                break;
            }
        if (km[k] < 0) throw error(errc::morphism_not_found, "comparison image is not an algebra map");
    }
    cd.k = make_functor("compare(" + cd.monad.c->morphisms[q].name + ")", sb, cd.em.cat, ko, km);
    return cd;
}

const char *descent_class_name(descent_class g) {
    switch (g) {
    case descent_class::not_almost: return "not almost descent";
    case descent_class::almost: return "almost descent";
    case descent_class::descent: return "descent";
    case descent_class::effective: return "effective descent";
    }
    return "";
}

descent_report classify_descent(cat_ptr c, int q) {
    const std::string qn = c->morphisms[q].name;
    comparison_data cd = comparison_functor(std::move(c), q);
    descent_report r;
    r.faithful = is_faithful(cd.k);
    r.fully_faithful = is_fully_faithful(cd.k);
    r.equivalence = is_equivalence(cd.k);
    r.grade = r.equivalence      ? descent_class::effective
              : r.fully_faithful ? descent_class::descent
              : r.faithful       ? descent_class::almost
                                 : descent_class::not_almost;
    auto yn = [](bool v) { return v ? "yes" : "no"; };
    r.detail = qn + " is " + descent_class_name(r.grade) + " (comparison faithful=" +
               yn(r.faithful) + ", fully faithful=" + yn(r.fully_faithful) +
               ", equivalence=" + yn(r.equivalence) + ")";
    return r;
}

obstruction_report obstruction_check(const functor &v, int f, int g) {
    if (!is_fully_faithful(v))
        throw error(errc::not_fully_faithful, "embedding must be fully faithful");
    cat_ptr cs = v.source, ct = v.target;
    if (cs->cod(f) != cs->cod(g))
        throw error(errc::no_common_codomain, "cospan legs must share a codomain");
    x_structure xs(ct);
    auto pb = xs.pullback(v.mor(f), v.mor(g));
    if (!pb)
        throw error(errc::missing_pullbacks, "image cospan has no pullback");
    obstruction_report r{false, -1, ""};
    for (int o = 0; o < cs->object_count() && !r.ok; ++o)
        if (ct->isomorphic_objects(v.ob(o), pb->obj)) {
            r.ok = true;
            r.witness = o;
        }
    if (r.ok)
        r.detail = cs->objects[r.witness] + " covers the pullback apex " + ct->objects[pb->obj];
    else
        r.detail = "no object covers the pullback apex " + ct->objects[pb->obj];
    return r;
}

check_detail regular_epi_check(cat_ptr c, int q) {
    x_structure xs(c);
    auto kp = xs.pullback(q, q);
    if (!kp) throw error(errc::missing_pullbacks, "kernel pair does not exist");
    if (!xs.coequalizer(kp->p1, kp->p2))
        throw error(errc::missing_colimit, "kernel pair has no coequalizer");
    int med = xs.mediator_from_coequalizer(kp->p1, kp->p2, q);
    const std::string &nm = c->morphisms[q].name;
    if (c->is_iso(med)) return {true, nm + " is the coequalizer of its kernel pair"};
    return {false, nm + " does not present its codomain as the quotient of its kernel pair"};
}

check_detail verify_l_pullback_zero(const lax_morphism &f, const functor &p, x_structure &xs) {
    lax_morphism lp = lax_left_mor(p, xs);
    if (!(f.target() == lp.target()))
        throw error(errc::input_error, "map must land in the zero structure over the target of p");
    lax_pb_data pb = pullback_laxcomma(f, lp, xs);
    const cat_ptr &x = xs.cat();
    int zero = *xs.initial();
    for (int o = 0; o < pb.obj.base()->object_count(); ++o) {
        int s = pb.obj.structure.ob(o);
        if (!x->isomorphic_objects(s, zero))
            return {false, "fibre over " + pb.obj.base()->objects[o] + " is " + x->objects[s] +
                               ", not initial"};
    }
    return {true, "all " + std::to_string(pb.obj.base()->object_count()) +
                      " fibres of the pullback are initial"};
}

check_detail verify_lu_pullback(const lax_morphism &m, x_structure &xs) {
    lax_morphism eps = left_counit(m.target(), xs);
    lax_pb_data pb = pullback_laxcomma(m, eps, xs);
    lax_object expected = lax_left(m.source().base(), xs);
    truncation tr = truncate({pb.obj, expected});
    int i = *tr.find_object(pb.obj), j = *tr.find_object(expected);
    if (tr.cat->isomorphic_objects(i, j))
        return {true, "pulling back along the counit recovers the zero structure on " +
                          m.source().base()->name};
    return {false, "pullback along the counit differs from the zero structure on " +
                       m.source().base()->name};
}

} // namespace laxcat
