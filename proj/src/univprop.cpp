#include "laxcat/univprop.hpp"

#include <algorithm>
#include <mutex>
#include <random>

namespace laxcat {

namespace {

template <typename T> void maybe_shuffle(std::vector<T> &v) {
    if (shuffle_seed() == 0) return;
    std::mt19937_64 rng(shuffle_seed());
    std::shuffle(v.begin(), v.end(), rng);
}

bool cone_key_less(const cone &a, const cone &b) {
    if (a.apex != b.apex) return a.apex < b.apex;
    return a.legs < b.legs;
}

std::vector<cone> enumerate_vertices(const functor &d, bool colimit) {
    const fin_category &sh = *d.source;
    const fin_category &c = *d.target;
    std::vector<cone> out;
    int n = sh.object_count();
    for (int apex = 0; apex < c.object_count(); ++apex) {
        std::vector<int> legs(n, -1);
        auto consistent = [&](int o, int v) {
            legs[o] = v;
            for (int m = 0; m < sh.morphism_count(); ++m) {
                int a = sh.dom(m), b = sh.cod(m);
                if (legs[a] < 0 || legs[b] < 0) continue;
                bool good = colimit ? c.compose(legs[b], d.mor(m)) == legs[a]
                                    : c.compose(d.mor(m), legs[a]) == legs[b];
                if (!good) {
                    legs[o] = -1;
                    return false;
                }
            }
            return true;
        };
        if (n == 0) {
            out.push_back({apex, {}});
            continue;
        }
        std::vector<int> choice(n, 0);
        int k = 0;
        while (k >= 0) {
            const auto &cands = colimit ? c.hom(d.ob(k), apex) : c.hom(apex, d.ob(k));
            if (choice[k] >= static_cast<int>(cands.size())) {
                choice[k] = 0;
                legs[k] = -1;
                --k;
                if (k >= 0) { legs[k] = -1; ++choice[k]; }
                continue;
            }
            if (!consistent(k, cands[choice[k]])) {
                ++choice[k];
                continue;
            }
            if (k == n - 1) {
                out.push_back({apex, legs});
                legs[k] = -1;
                ++choice[k];
            } else {
                ++k;
            }
        }
    }
    maybe_shuffle(out);
    return out;
}

bool vertex_is_universal(const functor &d, const cone &c, const std::vector<cone> &all,
                         bool colimit) {
    for (const cone &t : all) {
        auto meds = colimit ? cocone_mediators(d, c, t) : cone_mediators(d, c, t);
        if (meds.size() != 1) return false;
    }
    return true;
}

} // namespace

bool is_cone(const functor &d, const cone &c) {
    const fin_category &sh = *d.source;
    const fin_category &t = *d.target;
    if (c.apex < 0 || c.apex >= t.object_count()) return false;
    if (static_cast<int>(c.legs.size()) != sh.object_count()) return false;
    for (int o = 0; o < sh.object_count(); ++o) {
        int l = c.legs[o];
        if (l < 0 || l >= t.morphism_count() || t.dom(l) != c.apex || t.cod(l) != d.ob(o))
            return false;
    }
    for (int m = 0; m < sh.morphism_count(); ++m)
        if (t.compose(d.mor(m), c.legs[sh.dom(m)]) != c.legs[sh.cod(m)]) return false;
    return true;
}

bool is_cocone(const functor &d, const cone &c) {
    const fin_category &sh = *d.source;
    const fin_category &t = *d.target;
    if (c.apex < 0 || c.apex >= t.object_count()) return false;
    if (static_cast<int>(c.legs.size()) != sh.object_count()) return false;
    for (int o = 0; o < sh.object_count(); ++o) {
        int l = c.legs[o];
        if (l < 0 || l >= t.morphism_count() || t.dom(l) != d.ob(o) || t.cod(l) != c.apex)
            return false;
    }
    for (int m = 0; m < sh.morphism_count(); ++m)
        if (t.compose(c.legs[sh.cod(m)], d.mor(m)) != c.legs[sh.dom(m)]) return false;
    return true;
}

std::vector<cone> enumerate_cones(const functor &d) { return enumerate_vertices(d, false); }
std::vector<cone> enumerate_cocones(const functor &d) { return enumerate_vertices(d, true); }

std::vector<int> cone_mediators(const functor &d, const cone &vertex, const cone &test) {
    const fin_category &t = *d.target;
    std::vector<int> out;
    for (int m : t.hom(test.apex, vertex.apex)) {
        bool ok = true;
        for (size_t o = 0; o < vertex.legs.size() && ok; ++o)
            if (t.compose(vertex.legs[o], m) != test.legs[o]) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

std::vector<int> cocone_mediators(const functor &d, const cone &vertex, const cone &test) {
    const fin_category &t = *d.target;
    std::vector<int> out;
    for (int m : t.hom(vertex.apex, test.apex)) {
        bool ok = true;
        for (size_t o = 0; o < vertex.legs.size() && ok; ++o)
            if (t.compose(m, vertex.legs[o]) != test.legs[o]) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

bool is_limit(const functor &d, const cone &c) {
    if (!is_cone(d, c)) return false;
    return vertex_is_universal(d, c, enumerate_cones(d), false);
}

bool is_colimit(const functor &d, const cone &c) {
    if (!is_cocone(d, c)) return false;
    return vertex_is_universal(d, c, enumerate_cocones(d), true);
}

std::optional<cone> find_limit(const functor &d) {
    auto all = enumerate_cones(d);
    std::optional<cone> best;
    for (const cone &c : all) {
        if (best && !cone_key_less(c, *best)) continue;
        if (vertex_is_universal(d, c, all, false)) best = c;
    }
    return best;
}

std::optional<cone> find_colimit(const functor &d) {
    auto all = enumerate_cocones(d);
    std::optional<cone> best;
    for (const cone &c : all) {
        if (best && !cone_key_less(c, *best)) continue;
        if (vertex_is_universal(d, c, all, true)) best = c;
    }
    return best;
}

cat_ptr discrete_shape(int n) {
    static std::map<int, cat_ptr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    raw_category raw;
    raw.name = "disc" + std::to_string(n);
    for (int i = 0; i < n; ++i) {
        raw.objects.push_back("d" + std::to_string(i));
        raw.morphisms.push_back({"id_d" + std::to_string(i), i, i});
        raw.identity.push_back(i);
    }
    raw.compose.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) raw.compose[i][i] = i;
    return cache[n] = validate_category_ptr(raw);
}

cat_ptr parallel_shape() {
    static cat_ptr cached = [] {
        raw_category raw;
        raw.name = "pair";
        raw.objects = {"a", "b"};
        raw.morphisms = {{"id_a", 0, 0}, {"id_b", 1, 1}, {"f", 0, 1}, {"g", 0, 1}};
        raw.identity = {0, 1};
        raw.compose.assign(4, std::vector<int>(4, -1));
        raw.compose[0][0] = 0;
        raw.compose[1][1] = 1;
        raw.compose[2][0] = 2;
        raw.compose[1][2] = 2;
        raw.compose[3][0] = 3;
        raw.compose[1][3] = 3;
        return validate_category_ptr(raw);
    }();
    return cached;
}

cat_ptr cospan_shape() {
    static cat_ptr cached = [] {
        raw_category raw;
        raw.name = "cospan";
        raw.objects = {"l", "m", "r"};
        raw.morphisms = {{"id_l", 0, 0}, {"id_m", 1, 1}, {"id_r", 2, 2}, {"f0", 0, 1}, {"f1", 2, 1}};
        raw.identity = {0, 1, 2};
        raw.compose.assign(5, std::vector<int>(5, -1));
        raw.compose[0][0] = 0;
        raw.compose[1][1] = 1;
        raw.compose[2][2] = 2;
        raw.compose[3][0] = 3;
        raw.compose[1][3] = 3;
        raw.compose[4][2] = 4;
        raw.compose[1][4] = 4;
        return validate_category_ptr(raw);
    }();
    return cached;
}

functor discrete_diagram(cat_ptr target, const std::vector<int> &objects) {
    cat_ptr sh = discrete_shape(static_cast<int>(objects.size()));
    std::vector<int> mmap;
    for (int o : objects) mmap.push_back(target->identity(o));
    return make_functor("diag", sh, target, objects, mmap);
}

functor parallel_diagram(cat_ptr target, int f, int g) {
    if (target->dom(f) != target->dom(g) || target->cod(f) != target->cod(g))
        throw error(errc::not_parallel, "parallel_diagram needs a parallel pair");
    cat_ptr sh = parallel_shape();
    int a = target->dom(f), b = target->cod(f);
    return make_functor("diag", sh, target, {a, b},
                        {target->identity(a), target->identity(b), f, g});
}

functor cospan_diagram(cat_ptr target, int f, int g) {
    if (target->cod(f) != target->cod(g))
        throw error(errc::no_common_codomain, "cospan_diagram needs a common codomain");
    cat_ptr sh = cospan_shape();
    int l = target->dom(f), m = target->cod(f), r = target->dom(g);
    return make_functor("diag", sh, target, {l, m, r},
                        {target->identity(l), target->identity(m), target->identity(r), f, g});
}

std::optional<int> x_structure::terminal() {
    if (!terminal_) {
        auto lim = find_limit(discrete_diagram(x_, {}));
        terminal_ = lim ? std::optional<int>(lim->apex) : std::nullopt;
    }
    return *terminal_;
}

std::optional<int> x_structure::initial() {
    if (!initial_) {
        auto col = find_colimit(discrete_diagram(x_, {}));
        initial_ = col ? std::optional<int>(col->apex) : std::nullopt;
    }
    return *initial_;
}

std::optional<prod_data> x_structure::product(int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    auto lim = find_limit(discrete_diagram(x_, {x, y}));
    std::optional<prod_data> r;
    if (lim) r = prod_data{lim->apex, lim->legs[0], lim->legs[1]};
    products_[key] = r;
    return r;
}

std::optional<fam_data> x_structure::product_family(const std::vector<int> &xs) {
    auto it = families_.find(xs);
    if (it != families_.end()) return it->second;
    auto lim = find_limit(discrete_diagram(x_, xs));
    std::optional<fam_data> r;
    if (lim) r = fam_data{lim->apex, lim->legs};
    families_[xs] = r;
    return r;
}

std::optional<coprod_data> x_structure::coproduct(int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = coproducts_.find(key);
    if (it != coproducts_.end()) return it->second;
    auto col = find_colimit(discrete_diagram(x_, {x, y}));
    std::optional<coprod_data> r;
    if (col) r = coprod_data{col->apex, col->legs[0], col->legs[1]};
    coproducts_[key] = r;
    return r;
}

std::optional<fam_data> x_structure::coproduct_family(const std::vector<int> &xs) {
    auto it = cofamilies_.find(xs);
    if (it != cofamilies_.end()) return it->second;
    auto col = find_colimit(discrete_diagram(x_, xs));
    std::optional<fam_data> r;
    if (col) r = fam_data{col->apex, col->legs};
    cofamilies_[xs] = r;
    return r;
}

std::optional<pb_data> x_structure::pullback(int f, int g) {
    auto key = std::make_pair(f, g);
    auto it = pullbacks_.find(key);
    if (it != pullbacks_.end()) return it->second;
    auto lim = find_limit(cospan_diagram(x_, f, g));
    std::optional<pb_data> r;
    if (lim) r = pb_data{lim->apex, lim->legs[0], lim->legs[2]};
    pullbacks_[key] = r;
    return r;
}

std::optional<eq_data> x_structure::equalizer(int f, int g) {
    auto key = std::make_pair(f, g);
    auto it = equalizers_.find(key);
    if (it != equalizers_.end()) return it->second;
    auto lim = find_limit(parallel_diagram(x_, f, g));
    std::optional<eq_data> r;
    if (lim) r = eq_data{lim->apex, lim->legs[0]};
    equalizers_[key] = r;
    return r;
}

std::optional<coeq_data> x_structure::coequalizer(int f, int g) {
    auto key = std::make_pair(f, g);
    auto it = coequalizers_.find(key);
    if (it != coequalizers_.end()) return it->second;
    auto col = find_colimit(parallel_diagram(x_, f, g));
    std::optional<coeq_data> r;
    if (col) r = coeq_data{col->apex, col->legs[1]};
    coequalizers_[key] = r;
    return r;
}

std::optional<exp_data> x_structure::exponential(int b, int c) {
    auto key = std::make_pair(b, c);
    auto it = exponentials_.find(key);
    if (it != exponentials_.end()) return it->second;
    std::optional<exp_data> best;
    for (int e = 0; e < x_->object_count(); ++e) {
        auto pe = product(e, b);
        if (!pe) continue;
        for (int ev : x_->hom(pe->obj, c)) {
            bool universal = true;
            for (int a = 0; a < x_->object_count() && universal; ++a) {
                auto pa = product(a, b);
                if (!pa) continue;
                for (int f : x_->hom(pa->obj, c)) {
                    int count = 0;
                    for (int g : x_->hom(a, e)) {
                        int gx = mediator_to_product(e, b, x_->compose(g, pa->pr1), pa->pr2);
                        if (x_->compose(ev, gx) == f) ++count;
                    }
                    if (count != 1) { universal = false; break; }
                }
            }
            if (universal && (!best || e < best->obj || (e == best->obj && ev < best->ev)))
                best = exp_data{e, ev};
        }
    }
    exponentials_[key] = best;
    return best;
}

namespace {
[[noreturn]] void missing(errc code, const std::string &what) {
    throw error(code, what);
}
} // namespace

int x_structure::mediator_to_product(int x, int y, int u, int v) {
    auto p = product(x, y);
    if (!p) missing(errc::missing_products, "no product of the requested pair");
    if (x_->dom(u) != x_->dom(v) || x_->cod(u) != x || x_->cod(v) != y)
        throw error(errc::not_a_cone, "mediator_to_product legs do not form a cone");
    for (int m : x_->hom(x_->dom(u), p->obj))
        if (x_->compose(p->pr1, m) == u && x_->compose(p->pr2, m) == v) return m;
    throw error(errc::missing_limit, "chosen product lost its mediator");
}

int x_structure::mediator_to_family(const std::vector<int> &xs, const std::vector<int> &us) {
    auto p = product_family(xs);
    if (!p) missing(errc::missing_products, "no product of the requested family");
    if (us.size() != xs.size())
        throw error(errc::shape_mismatch, "mediator_to_family arity mismatch");
    int t = us.empty() ? -1 : x_->dom(us[0]);
    if (us.empty()) {
        // unique map into the empty product (terminal): search every object
        throw error(errc::input_error, "mediator_to_family needs at least one leg; use to_terminal");
    }
    for (size_t i = 0; i < us.size(); ++i)
        if (x_->dom(us[i]) != t || x_->cod(us[i]) != xs[i])
            throw error(errc::not_a_cone, "mediator_to_family legs do not form a cone");
    for (int m : x_->hom(t, p->obj)) {
        bool ok = true;
        for (size_t i = 0; i < us.size() && ok; ++i)
            if (x_->compose(p->legs[i], m) != us[i]) ok = false;
        if (ok) return m;
    }
    throw error(errc::missing_limit, "chosen family product lost its mediator");
}

int x_structure::mediator_from_coproduct(int x, int y, int u, int v) {
    auto p = coproduct(x, y);
    if (!p) missing(errc::missing_colimit, "no coproduct of the requested pair");
    if (x_->cod(u) != x_->cod(v) || x_->dom(u) != x || x_->dom(v) != y)
        throw error(errc::not_a_cone, "mediator_from_coproduct legs do not form a cocone");
    for (int m : x_->hom(p->obj, x_->cod(u)))
        if (x_->compose(m, p->in1) == u && x_->compose(m, p->in2) == v) return m;
    throw error(errc::missing_colimit, "chosen coproduct lost its mediator");
}

int x_structure::mediator_from_family(const std::vector<int> &xs, const std::vector<int> &us) {
    auto p = coproduct_family(xs);
    if (!p) missing(errc::missing_colimit, "no coproduct of the requested family");
    if (us.size() != xs.size() || us.empty())
        throw error(errc::shape_mismatch, "mediator_from_family arity mismatch");
    int t = x_->cod(us[0]);
    for (size_t i = 0; i < us.size(); ++i)
        if (x_->cod(us[i]) != t || x_->dom(us[i]) != xs[i])
            throw error(errc::not_a_cone, "mediator_from_family legs do not form a cocone");
    for (int m : x_->hom(p->obj, t)) {
        bool ok = true;
        for (size_t i = 0; i < us.size() && ok; ++i)
            if (x_->compose(m, p->legs[i]) != us[i]) ok = false;
        if (ok) return m;
    }
    throw error(errc::missing_colimit, "chosen family coproduct lost its mediator");
}

int x_structure::mediator_to_pullback(int f, int g, int u, int v) {
    auto p = pullback(f, g);
    if (!p) missing(errc::missing_pullback, "no pullback of the requested cospan");
    if (x_->compose(f, u) != x_->compose(g, v))
        throw error(errc::not_a_cone, "mediator_to_pullback square does not commute");
    for (int m : x_->hom(x_->dom(u), p->obj))
        if (x_->compose(p->p1, m) == u && x_->compose(p->p2, m) == v) return m;
    throw error(errc::missing_limit, "chosen pullback lost its mediator");
}

int x_structure::mediator_to_equalizer(int f, int g, int u) {
    auto e = equalizer(f, g);
    if (!e) missing(errc::missing_limit, "no equalizer of the requested pair");
    if (x_->compose(f, u) != x_->compose(g, u))
        throw error(errc::not_a_cone, "mediator_to_equalizer leg does not equalize");
    for (int m : x_->hom(x_->dom(u), e->obj))
        if (x_->compose(e->incl, m) == u) return m;
    throw error(errc::missing_limit, "chosen equalizer lost its mediator");
}

int x_structure::mediator_from_coequalizer(int f, int g, int u) {
    auto e = coequalizer(f, g);
    if (!e) missing(errc::missing_colimit, "no coequalizer of the requested pair");
    if (x_->compose(u, f) != x_->compose(u, g))
        throw error(errc::not_a_cone, "mediator_from_coequalizer leg does not coequalize");
    for (int m : x_->hom(e->obj, x_->cod(u)))
        if (x_->compose(m, e->proj) == u) return m;
    throw error(errc::missing_colimit, "chosen coequalizer lost its mediator");
}

int x_structure::to_terminal(int t) {
    auto top = terminal();
    if (!top) missing(errc::no_terminal_object, "no terminal object");
    const auto &h = x_->hom(t, *top);
    if (h.size() != 1) throw error(errc::missing_limit, "terminal object lost its property");
    return h[0];
}

int x_structure::from_initial(int t) {
    auto bot = initial();
    if (!bot) missing(errc::no_initial_object, "no initial object");
    const auto &h = x_->hom(*bot, t);
    if (h.size() != 1) throw error(errc::missing_colimit, "initial object lost its property");
    return h[0];
}

int x_structure::product_mor(int f, int g) {
    auto pd = product(x_->dom(f), x_->dom(g));
    if (!pd) missing(errc::missing_products, "no product of the source pair");
    return mediator_to_product(x_->cod(f), x_->cod(g), x_->compose(f, pd->pr1),
                               x_->compose(g, pd->pr2));
}

int x_structure::family_mor(const std::vector<int> &doms, const std::vector<int> &fs) {
    auto pd = product_family(doms);
    if (!pd) missing(errc::missing_products, "no product of the source family");
    std::vector<int> cods, legs;
    for (size_t i = 0; i < fs.size(); ++i) {
        cods.push_back(x_->cod(fs[i]));
        legs.push_back(x_->compose(fs[i], pd->legs[i]));
    }
    if (fs.empty()) {
        auto qd = product_family({});
        if (!qd) missing(errc::no_terminal_object, "no terminal object");
        return to_terminal(pd->obj);
    }
    return mediator_to_family(cods, legs);
}

int x_structure::curry(int a, int b, int c, int f) {
    auto e = exponential(b, c);
    if (!e) missing(errc::missing_exponential, "no exponential for the requested pair");
    auto pa = product(a, b);
    if (!pa) missing(errc::missing_products, "no product with the exponent base");
    if (x_->dom(f) != pa->obj || x_->cod(f) != c)
        throw error(errc::shape_mismatch, "curry argument has wrong endpoints");
    std::vector<int> hits;
    for (int g : x_->hom(a, e->obj))
        if (uncurry(a, b, c, g) == f) hits.push_back(g);
    if (hits.size() != 1)
        throw error(errc::bijective_failure,
                    "currying is not a bijection at the requested objects");
    return hits[0];
}

int x_structure::uncurry(int a, int b, int c, int g) {
    auto e = exponential(b, c);
    if (!e) missing(errc::missing_exponential, "no exponential for the requested pair");
    if (x_->dom(g) != a || x_->cod(g) != e->obj)
        throw error(errc::shape_mismatch, "uncurry argument has wrong endpoints");
    int gx = product_mor(g, x_->identity(b));
    return x_->compose(e->ev, gx);
}

std::optional<end_data> end_of(cat_ptr w, const functor &t, x_structure &xs) {
    int nw = w->object_count();
    int mw = w->morphism_count();
    if (t.source->object_count() != nw * nw || t.source->morphism_count() != mw * mw)
        throw error(errc::shape_mismatch, "end_of expects a functor on op(w) x w");
    std::vector<int> diag;
    for (int i = 0; i < nw; ++i) diag.push_back(t.ob(i * nw + i));
    auto p = xs.product_family(diag);
    if (!p) return std::nullopt;
    std::vector<int> arrows;   // non-identity morphisms of w
    for (int m = 0; m < mw; ++m)
        if (!w->is_identity(m)) arrows.push_back(m);
    if (arrows.empty()) return end_data{p->obj, p->legs};
    std::vector<int> qobjs, legs0, legs1;
    for (int h : arrows) {
        int a = w->dom(h), b = w->cod(h);
        qobjs.push_back(t.ob(a * nw + b));
        legs0.push_back(xs.cat()->compose(t.mor(w->identity(a) * mw + h), p->legs[a]));
        legs1.push_back(xs.cat()->compose(t.mor(h * mw + w->identity(b)), p->legs[b]));
    }
    if (!xs.product_family(qobjs)) return std::nullopt;
    int u0 = xs.mediator_to_family(qobjs, legs0);
    int u1 = xs.mediator_to_family(qobjs, legs1);
    auto e = xs.equalizer(u0, u1);
    if (!e) return std::nullopt;
    std::vector<int> legs(nw);
    for (int i = 0; i < nw; ++i) legs[i] = xs.cat()->compose(p->legs[i], e->incl);
    return end_data{e->obj, legs};
}

check_detail complete_lattice_check(cat_ptr x) {
    for (int a = 0; a < x->object_count(); ++a)
        for (int b = 0; b < x->object_count(); ++b)
            if (x->hom(a, b).size() > 1)
                return {false, "not thin: parallel morphisms " + x->objects[a] + " -> " +
                                   x->objects[b]};
    for (int a = 0; a < x->object_count(); ++a)
        for (int b = a + 1; b < x->object_count(); ++b)
            if (x->isomorphic_objects(a, b))
                return {false, "not skeletal: " + x->objects[a] + " and " + x->objects[b] +
                                   " are isomorphic"};
    x_structure xs(x);
    if (!xs.terminal()) return {false, "no greatest element"};
    if (!xs.initial()) return {false, "no least element"};
    for (int a = 0; a < x->object_count(); ++a)
        for (int b = a; b < x->object_count(); ++b) {
            if (!xs.product(a, b))
                return {false, "no meet of " + x->objects[a] + " and " + x->objects[b]};
            if (!xs.coproduct(a, b))
                return {false, "no join of " + x->objects[a] + " and " + x->objects[b]};
        }
    return {true, "complete lattice with " + std::to_string(x->object_count()) + " elements"};
}

check_detail strict_initial_check(cat_ptr x) {
    x_structure xs(x);
    auto bot = xs.initial();
    if (!bot) return {false, "no initial object"};
    for (int m = 0; m < x->morphism_count(); ++m) {
        if (x->cod(m) != *bot) continue;
        if (!x->is_iso(m))
            return {false, "morphism " + x->morphisms[m].name +
                               " into the initial object is not invertible"};
    }
    return {true, "initial object " + x->objects[*bot] + " is strict"};
}

} // namespace laxcat
