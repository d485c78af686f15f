#include "laxcat/fincat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace laxcat {

const char *errc_name(errc code) {
    switch (code) {
    case errc::non_total_composition: return "NonTotalComposition";
    case errc::identity_law_violation: return "IdentityLawViolation";
    case errc::associativity_violation: return "AssociativityViolation";
    case errc::invalid_functor: return "InvalidFunctor";
    case errc::invalid_nat_trans: return "InvalidNatTrans";
    case errc::not_parallel: return "NotParallel";
    case errc::not_composable: return "NotComposable";
    case errc::object_not_found: return "ObjectNotFound";
    case errc::morphism_not_found: return "MorphismNotFound";
    case errc::size_limit_exceeded: return "SizeLimitExceeded";
    case errc::syntax_error: return "SyntaxError";
    case errc::duplicate_name: return "DuplicateName";
    case errc::unknown_reference: return "UnknownReference";
    case errc::not_antisymmetric: return "NotAntisymmetric";
    case errc::cyclic_graph: return "CyclicGraph";
    case errc::not_a_cone: return "NotACone";
    case errc::missing_products: return "MissingProducts";
    case errc::missing_pullbacks: return "MissingPullbacks";
    case errc::missing_pullback: return "MissingPullback";
    case errc::missing_limit: return "MissingLimit";
    case errc::missing_colimit: return "MissingColimit";
    case errc::missing_exponential: return "MissingExponential";
    case errc::missing_end: return "MissingEnd";
    case errc::no_initial_object: return "NoInitialObject";
    case errc::no_terminal_object: return "NoTerminalObject";
    case errc::no_common_codomain: return "NoCommonCodomain";
    case errc::strict_initial_missing: return "StrictInitialMissing";
    case errc::coequalizer_not_finite_within_bound: return "CoequalizerNotFiniteWithinBound";
    case errc::bijective_failure: return "BijectiveFailure";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::not_a_pullback_square: return "NotAPullbackSquare";
    case errc::not_fully_faithful: return "NotFullyFaithful";
    case errc::input_error: return "InputError";
    }
    return "UnknownError";
}

bool is_hypothesis_errc(errc code) {
    switch (code) {
    case errc::missing_products:
    case errc::missing_pullbacks:
    case errc::missing_pullback:
    case errc::missing_limit:
    case errc::missing_colimit:
    case errc::missing_exponential:
    case errc::missing_end:
    case errc::no_initial_object:
    case errc::no_terminal_object:
    case errc::strict_initial_missing:
    case errc::coequalizer_not_finite_within_bound:
        return true;
    default:
        return false;
    }
}

bounds &bounds::current() {
    static bounds instance = [] {
        bounds b;
        if (const char *env = std::getenv("LAXCAT_BOUND")) {
            int v = std::atoi(env);
            if (v > 0) b.saturation_rounds = v;
        }
        return b;
    }();
    return instance;
}

namespace {
std::uint64_t g_shuffle_seed = [] {
    if (const char *env = std::getenv("LAXCAT_SHUFFLE"))
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    return std::uint64_t{0};
}();
} // namespace

std::uint64_t shuffle_seed() { return g_shuffle_seed; }
void set_shuffle_seed(std::uint64_t seed) { g_shuffle_seed = seed; }

namespace {

template <typename T> void maybe_shuffle(std::vector<T> &v) {
    if (g_shuffle_seed == 0) return;
    std::mt19937_64 rng(g_shuffle_seed);
    std::shuffle(v.begin(), v.end(), rng);
}

void check_unique_names(const std::vector<std::string> &names, const std::string &what) {
    std::set<std::string> seen;
    for (const auto &n : names) {
        if (n.empty())
            throw error(errc::input_error, what + " with empty name");
        if (!seen.insert(n).second)
            throw error(errc::duplicate_name, "duplicate " + what + " name '" + n + "'");
    }
}

} // namespace

int fin_category::compose(int g, int f) const {
    if (cod(f) != dom(g))
        throw error(errc::not_composable,
                    "cannot compose " + morphisms[g].name + " after " + morphisms[f].name);
    return compose_[g][f];
}

bool fin_category::is_iso(int m) const { return inverse(m).has_value(); }

std::optional<int> fin_category::inverse(int m) const {
    for (int g : hom(cod(m), dom(m)))
        if (compose_[g][m] == identity_[dom(m)] && compose_[m][g] == identity_[cod(m)])
            return g;
    return std::nullopt;
}

bool fin_category::isomorphic_objects(int x, int y) const {
    if (x == y) return true;
    for (int m : hom(x, y))
        if (is_iso(m)) return true;
    return false;
}

std::optional<int> fin_category::object_index(const std::string &n) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects[i] == n) return i;
    return std::nullopt;
}

std::optional<int> fin_category::morphism_index(const std::string &n) const {
    for (int i = 0; i < morphism_count(); ++i)
        if (morphisms[i].name == n) return i;
    return std::nullopt;
}

bool fin_category::is_thin() const {
    for (int x = 0; x < object_count(); ++x)
        for (int y = 0; y < object_count(); ++y)
            if (hom(x, y).size() > 1) return false;
    return true;
}

bool fin_category::operator==(const fin_category &other) const {
    if (objects != other.objects) return false;
    if (morphisms.size() != other.morphisms.size()) return false;
    for (size_t i = 0; i < morphisms.size(); ++i) {
        if (morphisms[i].name != other.morphisms[i].name ||
            morphisms[i].dom != other.morphisms[i].dom ||
            morphisms[i].cod != other.morphisms[i].cod)
            return false;
    }
    return identity_ == other.identity_ && compose_ == other.compose_;
}

void fin_category::build_hom_tables() {
    int n = object_count();
    hom_.assign(n, std::vector<std::vector<int>>(n));
    for (int m = 0; m < morphism_count(); ++m)
        hom_[dom(m)][cod(m)].push_back(m);
}

fin_category validate_category(const raw_category &raw) {
    const bounds &b = bounds::current();
    if (static_cast<int>(raw.objects.size()) > b.max_objects)
        throw error(errc::size_limit_exceeded,
                    "category '" + raw.name + "' has " + std::to_string(raw.objects.size()) +
                        " objects, cap is " + std::to_string(b.max_objects));
    if (static_cast<int>(raw.morphisms.size()) > b.max_morphisms)
        throw error(errc::size_limit_exceeded,
                    "category '" + raw.name + "' has " + std::to_string(raw.morphisms.size()) +
                        " morphisms, cap is " + std::to_string(b.max_morphisms));

    check_unique_names(raw.objects, "object");
    {
        std::vector<std::string> mnames;
        for (const auto &m : raw.morphisms) mnames.push_back(m.name);
        check_unique_names(mnames, "morphism");
    }

    int n = static_cast<int>(raw.objects.size());
    int mm = static_cast<int>(raw.morphisms.size());
    for (const auto &m : raw.morphisms)
        if (m.dom < 0 || m.dom >= n || m.cod < 0 || m.cod >= n)
            throw error(errc::input_error, "morphism '" + m.name + "' has out-of-range endpoints");
    if (static_cast<int>(raw.identity.size()) != n)
        throw error(errc::input_error, "identity table size mismatch in '" + raw.name + "'");
    if (static_cast<int>(raw.compose.size()) != mm)
        throw error(errc::input_error, "composition table size mismatch in '" + raw.name + "'");
    for (const auto &row : raw.compose)
        if (static_cast<int>(row.size()) != mm)
            throw error(errc::input_error, "composition table row size mismatch in '" + raw.name + "'");
    for (int o = 0; o < n; ++o) {
        int id = raw.identity[o];
        if (id < 0 || id >= mm || raw.morphisms[id].dom != o || raw.morphisms[id].cod != o)
            throw error(errc::identity_law_violation,
                        "identity of object '" + raw.objects[o] + "' is not an endomorphism of it");
    }

    auto mname = [&](int m) { return raw.morphisms[m].name; };

    // totality: defined exactly on composable pairs, endpoints match
    for (int g = 0; g < mm; ++g) {
        for (int f = 0; f < mm; ++f) {
            int c = raw.compose[g][f];
            bool composable = raw.morphisms[f].cod == raw.morphisms[g].dom;
            if (!composable) {
                if (c != -1)
                    throw error(errc::non_total_composition,
                                "compose(" + mname(g) + "," + mname(f) +
                                    ") defined on a non-composable pair");
                continue;
            }
            if (c < 0 || c >= mm)
                throw error(errc::non_total_composition,
                            "compose(" + mname(g) + "," + mname(f) + ") is undefined");
            if (raw.morphisms[c].dom != raw.morphisms[f].dom ||
                raw.morphisms[c].cod != raw.morphisms[g].cod)
                throw error(errc::non_total_composition,
                            "compose(" + mname(g) + "," + mname(f) + ") = " + mname(c) +
                                " has wrong endpoints");
        }
    }

    // identity laws
    for (int f = 0; f < mm; ++f) {
        int idc = raw.identity[raw.morphisms[f].cod];
        int idd = raw.identity[raw.morphisms[f].dom];
        if (raw.compose[idc][f] != f || raw.compose[f][idd] != f)
            throw error(errc::identity_law_violation,
                        "identity law fails at morphism " + mname(f));
    }

    // associativity
    for (int h = 0; h < mm; ++h)
        for (int g = 0; g < mm; ++g) {
            if (raw.morphisms[g].cod != raw.morphisms[h].dom) continue;
            for (int f = 0; f < mm; ++f) {
                if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
                if (raw.compose[h][raw.compose[g][f]] != raw.compose[raw.compose[h][g]][f])
                    throw error(errc::associativity_violation,
                                "associativity fails on (" + mname(h) + "," + mname(g) + "," +
                                    mname(f) + ")");
            }
        }

    fin_category c;
    c.name = raw.name;
    c.objects = raw.objects;
    c.morphisms = raw.morphisms;
    c.identity_ = raw.identity;
    c.compose_ = raw.compose;
    c.build_hom_tables();
    return c;
}

cat_ptr validate_category_ptr(const raw_category &raw) {
    return std::make_shared<const fin_category>(validate_category(raw));
}

bool functor::operator==(const functor &other) const {
    return *source == *other.source && *target == *other.target && omap == other.omap &&
           mmap == other.mmap;
}

functor make_functor(std::string name, cat_ptr source, cat_ptr target, std::vector<int> omap,
                     std::vector<int> mmap) {
    if (!source || !target)
        throw error(errc::invalid_functor, "functor '" + name + "' with null endpoint");
    if (static_cast<int>(omap.size()) != source->object_count() ||
        static_cast<int>(mmap.size()) != source->morphism_count())
        throw error(errc::invalid_functor, "functor '" + name + "' map size mismatch");
    for (int o : omap)
        if (o < 0 || o >= target->object_count())
            throw error(errc::invalid_functor, "functor '" + name + "' object image out of range");
    for (int m : mmap)
        if (m < 0 || m >= target->morphism_count())
            throw error(errc::invalid_functor, "functor '" + name + "' morphism image out of range");
    for (int m = 0; m < source->morphism_count(); ++m) {
        if (target->dom(mmap[m]) != omap[source->dom(m)] ||
            target->cod(mmap[m]) != omap[source->cod(m)])
            throw error(errc::invalid_functor,
                        "functor '" + name + "' does not preserve endpoints of " +
                            source->morphisms[m].name);
    }
    for (int o = 0; o < source->object_count(); ++o)
        if (mmap[source->identity(o)] != target->identity(omap[o]))
            throw error(errc::invalid_functor,
                        "functor '" + name + "' does not preserve the identity of " +
                            source->objects[o]);
    for (int g = 0; g < source->morphism_count(); ++g)
        for (int f = 0; f < source->morphism_count(); ++f) {
            if (source->cod(f) != source->dom(g)) continue;
            if (target->compose(mmap[g], mmap[f]) != mmap[source->compose(g, f)])
                throw error(errc::invalid_functor,
                            "functor '" + name + "' does not preserve compose(" +
                                source->morphisms[g].name + "," + source->morphisms[f].name + ")");
        }
    functor r;
    r.name = std::move(name);
    r.source = std::move(source);
    r.target = std::move(target);
    r.omap = std::move(omap);
    r.mmap = std::move(mmap);
    return r;
}

functor identity_functor(cat_ptr c) {
    std::vector<int> omap(c->object_count()), mmap(c->morphism_count());
    std::iota(omap.begin(), omap.end(), 0);
    std::iota(mmap.begin(), mmap.end(), 0);
    std::string n = "id(" + c->name + ")";
    return make_functor(n, c, c, std::move(omap), std::move(mmap));
}

functor constant_functor(std::string name, cat_ptr source, cat_ptr target, int value) {
    std::vector<int> omap(source->object_count(), value);
    std::vector<int> mmap(source->morphism_count(), target->identity(value));
    return make_functor(std::move(name), std::move(source), std::move(target), std::move(omap),
                        std::move(mmap));
}

functor compose_functor(const functor &g, const functor &f) {
    if (!(*f.target == *g.source))
        throw error(errc::not_composable,
                    "cannot compose functor " + g.name + " after " + f.name);
    std::vector<int> omap(f.source->object_count()), mmap(f.source->morphism_count());
    for (int o = 0; o < f.source->object_count(); ++o) omap[o] = g.ob(f.ob(o));
    for (int m = 0; m < f.source->morphism_count(); ++m) mmap[m] = g.mor(f.mor(m));
    return make_functor("comp(" + g.name + "," + f.name + ")", f.source, g.target,
                        std::move(omap), std::move(mmap));
}

bool nat_trans::operator==(const nat_trans &other) const {
    return source == other.source && target == other.target && components == other.components;
}

nat_trans make_nat_trans(std::string name, functor source, functor target,
                         std::vector<int> components) {
    if (!(*source.source == *target.source) || !(*source.target == *target.target))
        throw error(errc::not_parallel, "transformation '" + name + "' between non-parallel functors");
    const fin_category &w = *source.source;
    const fin_category &x = *source.target;
    if (static_cast<int>(components.size()) != w.object_count())
        throw error(errc::invalid_nat_trans, "transformation '" + name + "' component count mismatch");
    for (int o = 0; o < w.object_count(); ++o) {
        int c = components[o];
        if (c < 0 || c >= x.morphism_count() || x.dom(c) != source.ob(o) || x.cod(c) != target.ob(o))
            throw error(errc::invalid_nat_trans,
                        "component at '" + w.objects[o] + "' of '" + name +
                            "' has wrong endpoints");
    }
    for (int m = 0; m < w.morphism_count(); ++m) {
        int a = w.dom(m), b = w.cod(m);
        if (x.compose(target.mor(m), components[a]) != x.compose(components[b], source.mor(m)))
            throw error(errc::invalid_nat_trans,
                        "naturality square of '" + name + "' fails at " + w.morphisms[m].name);
    }
    nat_trans t;
    t.name = std::move(name);
    t.source = std::move(source);
    t.target = std::move(target);
    t.components = std::move(components);
    return t;
}

nat_trans identity_nat_trans(const functor &f) {
    std::vector<int> comps(f.source->object_count());
    for (int o = 0; o < f.source->object_count(); ++o)
        comps[o] = f.target->identity(f.ob(o));
    return make_nat_trans("id(" + f.name + ")", f, f, std::move(comps));
}

nat_trans compose_nat_trans(const nat_trans &b, const nat_trans &a) {
    if (!(a.target == b.source))
        throw error(errc::not_composable, "vertical composite of non-matching transformations");
    const fin_category &x = *a.source.target;
    std::vector<int> comps(a.components.size());
    for (size_t o = 0; o < comps.size(); ++o)
        comps[o] = x.compose(b.components[o], a.components[o]);
    return make_nat_trans("comp(" + b.name + "," + a.name + ")", a.source, b.target,
                          std::move(comps));
}

nat_trans whisker_right(const nat_trans &t, const functor &f) {
    if (!(*f.target == *t.source.source))
        throw error(errc::not_composable, "whisker_right shape mismatch");
    std::vector<int> comps(f.source->object_count());
    for (int o = 0; o < f.source->object_count(); ++o)
        comps[o] = t.at(f.ob(o));
    return make_nat_trans("wr(" + t.name + "," + f.name + ")",
                          compose_functor(t.source, f), compose_functor(t.target, f),
                          std::move(comps));
}

nat_trans whisker_left(const functor &h, const nat_trans &t) {
    if (!(*h.source == *t.source.target))
        throw error(errc::not_composable, "whisker_left shape mismatch");
    std::vector<int> comps(t.components.size());
    for (size_t o = 0; o < comps.size(); ++o)
        comps[o] = h.mor(t.components[o]);
    return make_nat_trans("wl(" + h.name + "," + t.name + ")",
                          compose_functor(h, t.source), compose_functor(h, t.target),
                          std::move(comps));
}

std::vector<functor> enumerate_functors(cat_ptr w, cat_ptr y) {
    std::vector<functor> out;
    int nw = w->object_count();
    if (nw > 0 && y->object_count() == 0) return out;

    std::vector<int> omap(nw, 0);
    int counter = 0;
    // odometer over object maps, lexicographic
    while (true) {
        // DFS over morphism images in declaration order
        int mw = w->morphism_count();
        std::vector<int> mmap(mw, -1);
        std::vector<std::vector<int>> cands(mw);
        bool feasible = true;
        for (int m = 0; m < mw && feasible; ++m) {
            if (w->is_identity(m)) {
                cands[m] = {y->identity(omap[w->dom(m)])};
            } else {
                cands[m] = y->hom(omap[w->dom(m)], omap[w->cod(m)]);
                if (cands[m].empty()) feasible = false;
            }
        }
        if (feasible) {
            std::vector<int> choice(mw, 0);
            int k = 0;
            auto consistent = [&](int k2, int v) {
                mmap[k2] = v;
                // pairs whose factors and composite are all assigned (index <= k2)
                for (int i = 0; i <= k2; ++i) {
                    if (w->cod(i) == w->dom(k2)) {
                        int c = w->compose(k2, i);
                        if (c <= k2 && y->compose(v, mmap[i]) != mmap[c]) { mmap[k2] = -1; return false; }
                    }
                    if (w->cod(k2) == w->dom(i)) {
                        int c = w->compose(i, k2);
                        if (c <= k2 && y->compose(mmap[i], v) != mmap[c]) { mmap[k2] = -1; return false; }
                    }
                }
                for (int i = 0; i < k2; ++i)
                    for (int j = 0; j < k2; ++j) {
                        if (w->cod(j) != w->dom(i)) continue;
                        if (w->compose(i, j) == k2 && y->compose(mmap[i], mmap[j]) != v) {
                            mmap[k2] = -1;
                            return false;
                        }
                    }
                return true;
            };
            if (mw == 0) {
                out.push_back(make_functor("F" + std::to_string(counter++), w, y, omap, {}));
            } else {
                while (k >= 0) {
                    if (choice[k] >= static_cast<int>(cands[k].size())) {
                        choice[k] = 0;
                        mmap[k] = -1;
                        --k;
                        if (k >= 0) { mmap[k] = -1; ++choice[k]; }
                        continue;
                    }
                    if (!consistent(k, cands[k][choice[k]])) {
                        ++choice[k];
                        continue;
                    }
                    if (k == mw - 1) {
                        out.push_back(make_functor("F" + std::to_string(counter++), w, y, omap, mmap));
                        mmap[k] = -1;
                        ++choice[k];
                    } else {
                        ++k;
                    }
                }
            }
        }
        // advance odometer
        int pos = nw - 1;
        while (pos >= 0) {
            if (++omap[pos] < y->object_count()) break;
            omap[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    if (shuffle_seed() != 0) {
        maybe_shuffle(out);
        std::sort(out.begin(), out.end(), [](const functor &a, const functor &b) {
            if (a.omap != b.omap) return a.omap < b.omap;
            return a.mmap < b.mmap;
        });
        for (size_t i = 0; i < out.size(); ++i) out[i].name = "F" + std::to_string(i);
    }
    return out;
}

std::vector<nat_trans> enumerate_nat_trans(const functor &f, const functor &g) {
    if (!(*f.source == *g.source) || !(*f.target == *g.target))
        throw error(errc::not_parallel, "enumerate_nat_trans on non-parallel functors");
    const fin_category &w = *f.source;
    const fin_category &x = *f.target;
    std::vector<nat_trans> out;
    int nw = w.object_count();
    std::vector<int> comp(nw, -1);
    int counter = 0;

    auto consistent = [&](int o, int v) {
        comp[o] = v;
        for (int m = 0; m < w.morphism_count(); ++m) {
            int a = w.dom(m), b = w.cod(m);
            if (comp[a] < 0 || comp[b] < 0) continue;
            if (x.compose(g.mor(m), comp[a]) != x.compose(comp[b], f.mor(m))) {
                comp[o] = -1;
                return false;
            }
        }
        return true;
    };

    if (nw == 0) {
        out.push_back(make_nat_trans("n0", f, g, {}));
        return out;
    }
    std::vector<int> choice(nw, 0);
    int k = 0;
    while (k >= 0) {
        const auto &cands = x.hom(f.ob(k), g.ob(k));
        if (choice[k] >= static_cast<int>(cands.size())) {
            choice[k] = 0;
            comp[k] = -1;
            --k;
            if (k >= 0) { comp[k] = -1; ++choice[k]; }
            continue;
        }
        if (!consistent(k, cands[choice[k]])) {
            ++choice[k];
            continue;
        }
        if (k == nw - 1) {
            out.push_back(make_nat_trans("n" + std::to_string(counter++), f, g, comp));
            comp[k] = -1;
            ++choice[k];
        } else {
            ++k;
        }
    }
    if (shuffle_seed() != 0) {
        maybe_shuffle(out);
        std::sort(out.begin(), out.end(), [](const nat_trans &a, const nat_trans &b) {
            return a.components < b.components;
        });
        for (size_t i = 0; i < out.size(); ++i) out[i].name = "n" + std::to_string(i);
    }
    return out;
}

std::string fresh_name(std::vector<std::string> &used, const std::string &base) {
    auto taken = [&](const std::string &n) {
        return std::find(used.begin(), used.end(), n) != used.end();
    };
    std::string name = base;
    for (int suffix = 2; taken(name); ++suffix)
        name = base + "_" + std::to_string(suffix);
    used.push_back(name);
    return name;
}

cat_ptr opposite(cat_ptr c) {
    raw_category raw;
    raw.name = "op(" + c->name + ")";
    raw.objects = c->objects;
    raw.morphisms = c->morphisms;
    for (auto &m : raw.morphisms) std::swap(m.dom, m.cod);
    raw.identity.resize(c->object_count());
    for (int o = 0; o < c->object_count(); ++o) raw.identity[o] = c->identity(o);
    int mm = c->morphism_count();
    raw.compose.assign(mm, std::vector<int>(mm, -1));
    for (int g = 0; g < mm; ++g)
        for (int f = 0; f < mm; ++f)
            if (c->dom(f) == c->cod(g)) raw.compose[g][f] = c->compose(f, g);
    return validate_category_ptr(raw);
}

cat_ptr product_category(cat_ptr a, cat_ptr b) {
    const bounds &lim = bounds::current();
    long long nobj = static_cast<long long>(a->object_count()) * b->object_count();
    long long nmor = static_cast<long long>(a->morphism_count()) * b->morphism_count();
    if (nobj > lim.max_objects || nmor > lim.max_morphisms)
        throw error(errc::size_limit_exceeded,
                    "product " + a->name + " x " + b->name + " exceeds size caps");
    raw_category raw;
    raw.name = "prod(" + a->name + "," + b->name + ")";
    std::vector<std::string> used;
    for (int i = 0; i < a->object_count(); ++i)
        for (int j = 0; j < b->object_count(); ++j)
            raw.objects.push_back(fresh_name(used, "(" + a->objects[i] + "," + b->objects[j] + ")"));
    std::vector<std::string> mused;
    int mb = b->morphism_count();
    for (int p = 0; p < a->morphism_count(); ++p)
        for (int q = 0; q < mb; ++q) {
            raw_morphism m;
            m.name = fresh_name(mused, "(" + a->morphisms[p].name + "," + b->morphisms[q].name + ")");
            m.dom = a->dom(p) * b->object_count() + b->dom(q);
            m.cod = a->cod(p) * b->object_count() + b->cod(q);
            raw.morphisms.push_back(m);
        }
    raw.identity.resize(raw.objects.size());
    for (int i = 0; i < a->object_count(); ++i)
        for (int j = 0; j < b->object_count(); ++j)
            raw.identity[i * b->object_count() + j] = a->identity(i) * mb + b->identity(j);
    int total = static_cast<int>(raw.morphisms.size());
    raw.compose.assign(total, std::vector<int>(total, -1));
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            int gp = g / mb, gq = g % mb, fp = f / mb, fq = f % mb;
            if (a->cod(fp) == a->dom(gp) && b->cod(fq) == b->dom(gq))
                raw.compose[g][f] = a->compose(gp, fp) * mb + b->compose(gq, fq);
        }
    return validate_category_ptr(raw);
}

cat_ptr coproduct_category(cat_ptr a, cat_ptr b) {
    raw_category raw;
    raw.name = "coprod(" + a->name + "," + b->name + ")";
    std::vector<std::string> used;
    for (const auto &o : a->objects) raw.objects.push_back(fresh_name(used, "inl:" + o));
    for (const auto &o : b->objects) raw.objects.push_back(fresh_name(used, "inr:" + o));
    std::vector<std::string> mused;
    for (const auto &m : a->morphisms) {
        raw_morphism r{fresh_name(mused, "inl:" + m.name), m.dom, m.cod};
        raw.morphisms.push_back(r);
    }
    int oa = a->object_count(), ma = a->morphism_count();
    for (const auto &m : b->morphisms) {
        raw_morphism r{fresh_name(mused, "inr:" + m.name), m.dom + oa, m.cod + oa};
        raw.morphisms.push_back(r);
    }
    for (int o = 0; o < oa; ++o) raw.identity.push_back(a->identity(o));
    for (int o = 0; o < b->object_count(); ++o) raw.identity.push_back(b->identity(o) + ma);
    int total = ma + b->morphism_count();
    raw.compose.assign(total, std::vector<int>(total, -1));
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (g < ma && f < ma && a->cod(f) == a->dom(g))
                raw.compose[g][f] = a->compose(g, f);
            if (g >= ma && f >= ma && b->cod(f - ma) == b->dom(g - ma))
                raw.compose[g][f] = b->compose(g - ma, f - ma) + ma;
        }
    return validate_category_ptr(raw);
}

funcat_result functor_category(cat_ptr w, cat_ptr y) {
    funcat_result res;
    res.objects = enumerate_functors(w, y);
    const bounds &lim = bounds::current();
    if (static_cast<int>(res.objects.size()) > lim.max_objects)
        throw error(errc::size_limit_exceeded,
                    "functor category Cat[" + w->name + "," + y->name + "] exceeds object cap");
    int n = static_cast<int>(res.objects.size());
    raw_category raw;
    raw.name = "funcat(" + w->name + "," + y->name + ")";
    for (int i = 0; i < n; ++i) raw.objects.push_back("F" + std::to_string(i));
    // second index: morphisms grouped by (source, target) pair in lex order
    std::vector<std::vector<std::vector<int>>> idx(n, std::vector<std::vector<int>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto ts = enumerate_nat_trans(res.objects[i], res.objects[j]);
            for (auto &t : ts) {
                int mi = static_cast<int>(res.morphisms.size());
                if (mi >= lim.max_morphisms)
                    throw error(errc::size_limit_exceeded,
                                "functor category Cat[" + w->name + "," + y->name +
                                    "] exceeds morphism cap");
                t.name = "n" + std::to_string(mi);
                idx[i][j].push_back(mi);
                raw.morphisms.push_back({t.name, i, j});
                res.morphisms.push_back(std::move(t));
            }
        }
    raw.identity.resize(n, -1);
    for (int i = 0; i < n; ++i) {
        nat_trans id = identity_nat_trans(res.objects[i]);
        for (int mi : idx[i][i])
            if (res.morphisms[mi].components == id.components) raw.identity[i] = mi;
    }
    int total = static_cast<int>(res.morphisms.size());
    raw.compose.assign(total, std::vector<int>(total, -1));
    const fin_category &x = *y;
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
            std::vector<int> comps(w->object_count());
            for (int o = 0; o < w->object_count(); ++o)
                comps[o] = x.compose(res.morphisms[g].components[o], res.morphisms[f].components[o]);
            for (int c : idx[raw.morphisms[f].dom][raw.morphisms[g].cod])
                if (res.morphisms[c].components == comps) raw.compose[g][f] = c;
        }
    res.cat = validate_category_ptr(raw);
    return res;
}

comma_result comma_over(const functor &f, int y) {
    const fin_category &w = *f.source;
    const fin_category &t = *f.target;
    if (y < 0 || y >= t.object_count())
        throw error(errc::object_not_found, "comma_over: no such object in " + t.name);
    comma_result res;
    raw_category raw;
    raw.name = "comma(" + f.name + "," + t.objects[y] + ")";
    std::vector<std::string> used;
    for (int ow = 0; ow < w.object_count(); ++ow)
        for (int h : t.hom(f.ob(ow), y)) {
            res.objects.emplace_back(ow, h);
            raw.objects.push_back(
                fresh_name(used, "(" + w.objects[ow] + "," + t.morphisms[h].name + ")"));
        }
    int n = static_cast<int>(res.objects.size());
    std::vector<std::string> mused;
    std::vector<std::vector<int>> mor_at; // (i,j,k) records
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [w1, h1] = res.objects[i];
            auto [w2, h2] = res.objects[j];
            for (int k : w.hom(w1, w2)) {
                if (t.compose(h2, f.mor(k)) != h1) continue;
                raw_morphism m;
                m.name = fresh_name(mused, "(" + w.morphisms[k].name + "," + t.morphisms[h1].name +
                                               "," + t.morphisms[h2].name + ")");
                m.dom = i;
                m.cod = j;
                raw.morphisms.push_back(m);
                res.morphism_arrows.push_back(k);
            }
        }
    int total = static_cast<int>(raw.morphisms.size());
    raw.identity.assign(n, -1);
    for (int mi = 0; mi < total; ++mi)
        if (raw.morphisms[mi].dom == raw.morphisms[mi].cod &&
            w.is_identity(res.morphism_arrows[mi]))
            raw.identity[raw.morphisms[mi].dom] = mi;
    raw.compose.assign(total, std::vector<int>(total, -1));
    for (int g = 0; g < total; ++g)
        for (int fm = 0; fm < total; ++fm) {
            if (raw.morphisms[fm].cod != raw.morphisms[g].dom) continue;
            int karr = w.compose(res.morphism_arrows[g], res.morphism_arrows[fm]);
            for (int c = 0; c < total; ++c)
                if (raw.morphisms[c].dom == raw.morphisms[fm].dom &&
                    raw.morphisms[c].cod == raw.morphisms[g].cod && res.morphism_arrows[c] == karr)
                    raw.compose[g][fm] = c;
        }
    res.cat = validate_category_ptr(raw);
    std::vector<int> omap(n), mmap(total);
    for (int i = 0; i < n; ++i) omap[i] = res.objects[i].first;
    for (int mi = 0; mi < total; ++mi) mmap[mi] = res.morphism_arrows[mi];
    res.projection = make_functor("proj(" + raw.name + ")", res.cat, f.source, std::move(omap),
                                  std::move(mmap));
    return res;
}

bool is_faithful(const functor &f) {
    const fin_category &w = *f.source;
    for (int x = 0; x < w.object_count(); ++x)
        for (int y = 0; y < w.object_count(); ++y) {
            const auto &h = w.hom(x, y);
            for (size_t i = 0; i < h.size(); ++i)
                for (size_t j = i + 1; j < h.size(); ++j)
                    if (f.mor(h[i]) == f.mor(h[j])) return false;
        }
    return true;
}

bool is_full(const functor &f) {
    const fin_category &w = *f.source;
    const fin_category &t = *f.target;
    for (int x = 0; x < w.object_count(); ++x)
        for (int y = 0; y < w.object_count(); ++y)
            for (int m : t.hom(f.ob(x), f.ob(y))) {
                bool hit = false;
                for (int h : w.hom(x, y))
                    if (f.mor(h) == m) { hit = true; break; }
                if (!hit) return false;
            }
    return true;
}

bool is_fully_faithful(const functor &f) { return is_faithful(f) && is_full(f); }

bool is_essentially_surjective(const functor &f) {
    const fin_category &t = *f.target;
    for (int y = 0; y < t.object_count(); ++y) {
        bool hit = false;
        for (int x = 0; x < f.source->object_count() && !hit; ++x)
            if (t.isomorphic_objects(f.ob(x), y)) hit = true;
        if (!hit) return false;
    }
    return true;
}

bool is_equivalence(const functor &f) {
    return is_fully_faithful(f) && is_essentially_surjective(f);
}

bool find_isomorphism(cat_ptr a, cat_ptr b) {
    if (a->object_count() != b->object_count() || a->morphism_count() != b->morphism_count())
        return false;
    for (const functor &f : enumerate_functors(a, b)) {
        std::vector<bool> oseen(b->object_count(), false), mseen(b->morphism_count(), false);
        bool bij = true;
        for (int o : f.omap) {
            if (oseen[o]) { bij = false; break; }
            oseen[o] = true;
        }
        if (!bij) continue;
        for (int m : f.mmap) {
            if (mseen[m]) { bij = false; break; }
            mseen[m] = true;
        }
        if (bij) return true;
    }
    return false;
}

} // namespace laxcat
