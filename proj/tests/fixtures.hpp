#pragma once

#include <map>
#include <tuple>

#include "laxcat/fincat.hpp"

// Hand-built fixture categories, independent of the presentation layer so
// they double as oracles for it.

namespace fixtures {

using laxcat::cat_ptr;
using laxcat::raw_category;
using laxcat::raw_morphism;

struct decl_mor {
    std::string name;
    int dom;
    int cod;
};

// identities come first (index o is id of object o); declared morphisms
// follow in order at offset n_objects. eqs list (g, f, gf) by absolute
// morphism index.
inline raw_category build_raw(std::string name, std::vector<std::string> objects,
                              std::vector<decl_mor> mors,
                              std::vector<std::tuple<int, int, int>> eqs) {
    raw_category raw;
    raw.name = std::move(name);
    raw.objects = std::move(objects);
    int n = static_cast<int>(raw.objects.size());
    for (int o = 0; o < n; ++o) {
        raw.morphisms.push_back({"id_" + raw.objects[o], o, o});
        raw.identity.push_back(o);
    }
    for (const auto &m : mors) raw.morphisms.push_back({m.name, m.dom, m.cod});
    int total = static_cast<int>(raw.morphisms.size());
    raw.compose.assign(total, std::vector<int>(total, -1));
    auto dom = [&](int m) { return raw.morphisms[m].dom; };
    auto cod = [&](int m) { return raw.morphisms[m].cod; };
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (cod(f) != dom(g)) continue;
            if (f < n) raw.compose[g][f] = g;
            else if (g < n) raw.compose[g][f] = f;
        }
    for (auto [g, f, gf] : eqs) raw.compose[g][f] = gf;
    return raw;
}

inline cat_ptr build(std::string name, std::vector<std::string> objects,
                     std::vector<decl_mor> mors, std::vector<std::tuple<int, int, int>> eqs) {
    return laxcat::validate_category_ptr(build_raw(std::move(name), std::move(objects),
                                                   std::move(mors), std::move(eqs)));
}

// thin category from a reflexive-transitive reachability matrix; non-identity
// morphisms named "a<=b" in row-major order
inline cat_ptr thin_cat(std::string name, std::vector<std::string> elems,
                        std::vector<std::vector<bool>> leq) {
    int n = static_cast<int>(elems.size());
    std::vector<decl_mor> mors;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && leq[a][b]) mors.push_back({elems[a] + "<=" + elems[b], a, b});
    raw_category raw = build_raw(std::move(name), std::move(elems), mors, {});
    int total = static_cast<int>(raw.morphisms.size());
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
            if (raw.compose[g][f] != -1) continue;
            for (int c = 0; c < total; ++c)
                if (raw.morphisms[c].dom == raw.morphisms[f].dom &&
                    raw.morphisms[c].cod == raw.morphisms[g].cod)
                    raw.compose[g][f] = c;
        }
    return laxcat::validate_category_ptr(raw);
}

// poset from a covering relation, closed reflexively and transitively
inline cat_ptr poset(std::string name, std::vector<std::string> elems,
                     std::vector<std::pair<int, int>> covers) {
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (auto [a, b] : covers) leq[a][b] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (leq[i][k] && leq[k][j]) leq[i][j] = true;
    return thin_cat(std::move(name), std::move(elems), leq);
}

inline cat_ptr one_cat() { return build("One", {"pt"}, {}, {}); }

inline cat_ptr empty_cat() { return build("Empty", {}, {}, {}); }

// the walking arrow: s -> t via a
inline cat_ptr two_cat() { return build("Two", {"s", "t"}, {{"a", 0, 1}}, {}); }

inline cat_ptr x2() { return poset("X2", {"0", "1"}, {{0, 1}}); }

inline cat_ptr x3() { return poset("X3", {"0", "m", "1"}, {{0, 1}, {1, 2}}); }

inline cat_ptr v_cat() { return poset("V", {"p", "q"}, {}); }

inline cat_ptr diamond() {
    return poset("Diamond", {"0", "p", "q", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

inline cat_ptr meetless_p3() { return poset("MeetlessP3", {"p", "q", "t"}, {{0, 2}, {1, 2}}); }

inline cat_ptr parallel_pair_cat() {
    return build("PP", {"a", "b"}, {{"f", 0, 1}, {"g", 0, 1}}, {});
}

// e -h-> a ⇉ b with k = f∘h = g∘h; declared indices start at 3
inline cat_ptr equalizer_cat() {
    return build("EQ", {"e", "a", "b"},
                 {{"h", 0, 1}, {"f", 1, 2}, {"g", 1, 2}, {"k", 0, 2}},
                 {{4, 3, 6}, {5, 3, 6}});
}

// every hom-set a singleton
inline cat_ptr indiscrete(int n) {
    std::vector<std::string> elems;
    for (int i = 0; i < n; ++i) elems.push_back("o" + std::to_string(i));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, true));
    return thin_cat("Ind" + std::to_string(n), std::move(elems), leq);
}

// q: e -> b split by s: b -> e, with idempotent t = s∘q; declared indices
// q=2 s=3 t=4, identities id_e=0 id_b=1
inline cat_ptr split_epi_cat() {
    return build("SplitEpi", {"e", "b"}, {{"q", 0, 1}, {"s", 1, 0}, {"t", 0, 0}},
                 {{3, 2, 4},    // s∘q = t
                  {2, 3, 1},    // q∘s = id_b
                  {4, 4, 4},    // t∘t = t
                  {2, 4, 2},    // q∘t = q
                  {4, 3, 3}});  // t∘s = s
}

// functor into a thin category determined by its object map
inline laxcat::functor thin_functor(std::string name, cat_ptr source, cat_ptr target,
                                    std::vector<int> omap) {
    std::vector<int> mmap(source->morphism_count(), -1);
    for (int m = 0; m < source->morphism_count(); ++m) {
        const auto &h = target->hom(omap[source->dom(m)], omap[source->cod(m)]);
        if (h.size() != 1)
            throw laxcat::error(laxcat::errc::invalid_functor,
                                "thin_functor: no unique image for " +
                                    source->morphisms[m].name);
        mmap[m] = h[0];
    }
    return laxcat::make_functor(std::move(name), std::move(source), std::move(target),
                                std::move(omap), std::move(mmap));
}

} // namespace fixtures
