#include "laxcat/laxcomma.hpp"

#include <algorithm>
#include <array>

namespace laxcat {

lax_object make_lax_object(functor structure) {
    return {std::move(structure)};
}

lax_morphism make_lax_morphism(functor f, nat_trans cell, functor target_structure) {
    const functor &a = cell.source;
    if (!(*a.source == *f.source))
        throw error(errc::invalid_nat_trans, "cell source not defined on the base of the map");
    if (!(*target_structure.source == *f.target))
        throw error(errc::invalid_nat_trans, "target structure not defined on the map's codomain");
    if (!(*a.target == *target_structure.target))
        throw error(errc::invalid_nat_trans, "source and target structures land in different categories");
    functor bf = compose_functor(target_structure, f);
    if (!(cell.target == bf))
        throw error(errc::invalid_nat_trans, "cell does not target the composite structure");
    return {std::move(f), std::move(cell), std::move(target_structure)};
}

lax_morphism identity_lax(const lax_object &a) {
    return {identity_functor(a.base()), identity_nat_trans(a.structure), a.structure};
}

lax_morphism compose_lax(const lax_morphism &g, const lax_morphism &f) {
    if (!(f.target() == g.source()))
        throw error(errc::not_composable, "lax morphisms do not match end to end");
    functor base = compose_functor(g.f, f.f);
    nat_trans pasted = compose_nat_trans(whisker_right(g.cell, f.f), f.cell);
    return make_lax_morphism(std::move(base), std::move(pasted), g.target_structure);
}

bool is_strict(const lax_morphism &m) {
    const auto &x = m.target_structure.target;
    for (int c : m.cell.components)
        if (!x->is_identity(c)) return false;
    return true;
}

std::vector<lax_morphism> enumerate_lax_hom(const lax_object &a, const lax_object &b) {
    std::vector<lax_morphism> out;
    for (const functor &f : enumerate_functors(a.base(), b.base())) {
        functor bf = compose_functor(b.structure, f);
        for (const nat_trans &t : enumerate_nat_trans(a.structure, bf))
            out.push_back({f, t, b.structure});
    }
    return out;
}

bool is_two_cell(const lax_morphism &m1, const lax_morphism &m2, const nat_trans &zeta) {
    if (!(m1.source() == m2.source()) || !(m1.target() == m2.target()))
        throw error(errc::not_parallel, "2-cells need parallel lax morphisms");
    if (!(zeta.source == m1.f) || !(zeta.target == m2.f))
        throw error(errc::invalid_nat_trans, "base transformation does not match the two maps");
    const auto &x = m1.target_structure.target;
    const auto &b = m1.target_structure;
    int n = m1.source().base()->object_count();
    for (int w = 0; w < n; ++w) {
        int lhs = x->compose(b.mor(zeta.at(w)), m1.cell.at(w));
        if (lhs != m2.cell.at(w)) return false;
    }
    return true;
}

std::vector<nat_trans> enumerate_two_cells(const lax_morphism &m1, const lax_morphism &m2) {
    std::vector<nat_trans> out;
    for (const nat_trans &z : enumerate_nat_trans(m1.f, m2.f))
        if (is_two_cell(m1, m2, z)) out.push_back(z);
    return out;
}

cat_ptr underlying_category(const lax_object &a) { return a.base(); }
functor underlying_functor(const lax_morphism &m) { return m.f; }

lax_morphism cartesian_lift(const lax_object &b, const functor &f) {
    if (!(*f.target == *b.base()))
        throw error(errc::not_composable, "lift needs a map into the object's base");
    functor pulled = compose_functor(b.structure, f);
    return {f, identity_nat_trans(pulled), b.structure};
}

lax_morphism cartesian_factor(const lax_morphism &lift, const lax_morphism &through,
                              const functor &h) {
    if (!(compose_functor(lift.f, h) == through.f))
        throw error(errc::shape_mismatch, "base maps do not factor through the lift");
    if (!(through.target() == lift.target()))
        throw error(errc::shape_mismatch, "morphisms target different lax objects");
    functor pulled = lift.cell.source;
    nat_trans cell = make_nat_trans("factor", through.cell.source, compose_functor(pulled, h),
                                    through.cell.components);
    return make_lax_morphism(h, std::move(cell), pulled);
}

lax_object lax_left(cat_ptr w, x_structure &xs) {
    auto z = xs.initial();
    if (!z) throw error(errc::no_initial_object, "base of the lax comma category lacks an initial object");
    std::string nm = "zero(" + w->name + ")";
    return {constant_functor(nm, std::move(w), xs.cat(), *z)};
}

lax_morphism lax_left_mor(const functor &f, x_structure &xs) {
    lax_object src = lax_left(f.source, xs);
    lax_object dst = lax_left(f.target, xs);
    std::vector<int> comps(f.source->object_count(), xs.cat()->identity(*xs.initial()));
    nat_trans cell = make_nat_trans("w", src.structure, compose_functor(dst.structure, f), comps);
    return {f, std::move(cell), dst.structure};
}

lax_object lax_right(cat_ptr w, x_structure &xs) {
    auto t = xs.terminal();
    if (!t) throw error(errc::no_terminal_object, "base of the lax comma category lacks a terminal object");
    std::string nm = "one(" + w->name + ")";
    return {constant_functor(nm, std::move(w), xs.cat(), *t)};
}

lax_morphism lax_right_mor(const functor &f, x_structure &xs) {
    lax_object src = lax_right(f.source, xs);
    lax_object dst = lax_right(f.target, xs);
    std::vector<int> comps(f.source->object_count(), xs.cat()->identity(*xs.terminal()));
    nat_trans cell = make_nat_trans("w", src.structure, compose_functor(dst.structure, f), comps);
    return {f, std::move(cell), dst.structure};
}

lax_morphism left_counit(const lax_object &b, x_structure &xs) {
    lax_object src = lax_left(b.base(), xs);
    functor idf = identity_functor(b.base());
    std::vector<int> comps(b.base()->object_count());
    for (int y = 0; y < b.base()->object_count(); ++y)
        comps[y] = xs.from_initial(b.structure.ob(y));
    nat_trans cell = make_nat_trans("iota", src.structure, compose_functor(b.structure, idf), comps);
    return {std::move(idf), std::move(cell), b.structure};
}

lax_morphism right_unit(const lax_object &a, x_structure &xs) {
    lax_object dst = lax_right(a.base(), xs);
    functor idf = identity_functor(a.base());
    std::vector<int> comps(a.base()->object_count());
    for (int w = 0; w < a.base()->object_count(); ++w)
        comps[w] = xs.to_terminal(a.structure.ob(w));
    nat_trans cell = make_nat_trans("tau", a.structure, compose_functor(dst.structure, idf), comps);
    return {std::move(idf), std::move(cell), dst.structure};
}

std::optional<int> truncation::find_object(const lax_object &o) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == o) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> truncation::find_morphism(const lax_morphism &m) const {
    for (size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i] == m) return static_cast<int>(i);
    return std::nullopt;
}

truncation truncate(std::vector<lax_object> objects) {
    const auto lim = bounds::current();
    int n = static_cast<int>(objects.size());
    if (n > lim.max_objects)
        throw error(errc::size_limit_exceeded, "truncation has too many objects");

    std::vector<std::vector<std::vector<lax_morphism>>> hom(n);
    size_t total = 0;
    for (int i = 0; i < n; ++i) {
        hom[i].resize(n);
        for (int j = 0; j < n; ++j) {
            hom[i][j] = enumerate_lax_hom(objects[i], objects[j]);
            total += hom[i][j].size();
            if (total > static_cast<size_t>(lim.max_morphisms))
                throw error(errc::size_limit_exceeded, "truncation has too many morphisms");
        }
    }

    // flatten: offset[i][j] = global index of hom[i][j][0]
    std::vector<std::vector<int>> offset(n, std::vector<int>(n, 0));
    std::vector<lax_morphism> flat;
    raw_category raw;
    raw.name = "trunc";
    for (int i = 0; i < n; ++i) raw.objects.push_back("O" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            offset[i][j] = static_cast<int>(flat.size());
            for (const auto &m : hom[i][j]) {
                raw.morphisms.push_back({"m" + std::to_string(flat.size()), i, j});
                flat.push_back(m);
            }
        }

    raw.identity.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        lax_morphism idm = identity_lax(objects[i]);
        for (size_t k = 0; k < hom[i][i].size(); ++k)
            if (hom[i][i][k] == idm) {
                raw.identity[i] = offset[i][i] + static_cast<int>(k);
                break;
            }
    }

    int m_total = static_cast<int>(flat.size());
    raw.compose.assign(m_total, std::vector<int>(m_total, -1));
    for (int g = 0; g < m_total; ++g)
        for (int f = 0; f < m_total; ++f) {
            const auto &mg = flat[g];
            const auto &mf = flat[f];
            if (!(mf.target() == mg.source())) continue;
            lax_morphism c = compose_lax(mg, mf);
            int i = raw.morphisms[f].dom, k = raw.morphisms[g].cod;
            for (size_t t = 0; t < hom[i][k].size(); ++t)
                if (hom[i][k][t] == c) {
                    raw.compose[g][f] = offset[i][k] + static_cast<int>(t);
                    break;
                }
        }

    truncation out;
    out.objects = std::move(objects);
    out.cat = validate_category_ptr(raw);
    out.morphisms = std::move(flat);
    return out;
}

namespace {

cat_ptr build_small(const std::string &name, const std::vector<std::string> &objects,
                    const std::vector<raw_morphism> &decls,
                    const std::vector<std::array<int, 3>> &eqs) {
    raw_category raw;
    raw.name = name;
    raw.objects = objects;
    int n = static_cast<int>(objects.size());
    for (int i = 0; i < n; ++i) raw.morphisms.push_back({"id_" + objects[i], i, i});
    for (const auto &d : decls) raw.morphisms.push_back(d);
    for (int i = 0; i < n; ++i) raw.identity.push_back(i);
    int m = static_cast<int>(raw.morphisms.size());
    raw.compose.assign(m, std::vector<int>(m, -1));
    for (int k = 0; k < m; ++k) {
        raw.compose[raw.morphisms[k].cod][k] = k;
        raw.compose[k][raw.morphisms[k].dom] = k;
    }
    for (const auto &e : eqs) raw.compose[e[0]][e[1]] = e[2];
    return validate_category_ptr(raw);
}

} // namespace

cat_ptr probe_one() {
    static cat_ptr c = build_small("One", {"pt"}, {}, {});
    return c;
}

cat_ptr probe_two() {
    static cat_ptr c = build_small("Two", {"s", "t"}, {{"a", 0, 1}}, {});
    return c;
}

cat_ptr probe_pp() {
    static cat_ptr c = build_small("PP", {"a", "b"}, {{"f", 0, 1}, {"g", 0, 1}}, {});
    return c;
}

std::vector<lax_object> canonical_probes(cat_ptr x, int n) {
    std::vector<lax_object> out;
    if (n <= 0) return out;
    for (int i = 0; i < x->object_count() && static_cast<int>(out.size()) < n; ++i)
        out.push_back({constant_functor("probe_const_" + x->objects[i], probe_one(), x, i)});
    if (static_cast<int>(out.size()) < n) {
        int k = 0;
        for (functor f : enumerate_functors(probe_two(), x)) {
            if (static_cast<int>(out.size()) >= n) break;
            f.name = "probe_two_" + std::to_string(k++);
            out.push_back({std::move(f)});
        }
    }
    if (static_cast<int>(out.size()) < n) {
        int k = 0;
        for (functor f : enumerate_functors(probe_pp(), x)) {
            if (static_cast<int>(out.size()) >= n) break;
            f.name = "probe_pp_" + std::to_string(k++);
            out.push_back({std::move(f)});
        }
    }
    if (static_cast<int>(out.size()) < n)
        throw error(errc::input_error, "probe supply exhausted for this base category");
    return out;
}

adjunction_report check_constant_structure_bijection(cat_ptr w, int c, const lax_object &other,
                                                     bool left, x_structure &xs) {
    lax_object cand{constant_functor("cand", w, xs.cat(), c)};
    int checked = 0;
    if (left) {
        for (const functor &f : enumerate_functors(w, other.base())) {
            functor bf = compose_functor(other.structure, f);
            auto cells = enumerate_nat_trans(cand.structure, bf);
            if (cells.size() != 1) {
                return {false, std::string(errc_name(errc::bijective_failure)) +
                                   ": base functor " + std::to_string(checked) + " into " +
                                   other.name() + " has " + std::to_string(cells.size()) +
                                   " lifts, expected exactly 1"};
            }
            ++checked;
        }
    } else {
        for (const functor &g : enumerate_functors(other.base(), w)) {
            functor cg = compose_functor(cand.structure, g);
            auto cells = enumerate_nat_trans(other.structure, cg);
            if (cells.size() != 1) {
                return {false, std::string(errc_name(errc::bijective_failure)) +
                                   ": base functor " + std::to_string(checked) + " out of " +
                                   other.name() + " has " + std::to_string(cells.size()) +
                                   " lifts, expected exactly 1"};
            }
            ++checked;
        }
    }
    return {true, "every base functor lifts uniquely (" + std::to_string(checked) + " checked)"};
}

adjunction_report check_triangle_identities(const std::vector<cat_ptr> &bases,
                                            const std::vector<lax_object> &objects, bool left,
                                            x_structure &xs) {
    if (left) {
        for (const auto &w : bases) {
            lax_object lw = lax_left(w, xs);
            lax_morphism tri = compose_lax(left_counit(lw, xs), lax_left_mor(identity_functor(w), xs));
            if (!(tri == identity_lax(lw)))
                return {false, "counit after embedded unit is not the identity on zero-structure over " + w->name};
        }
        for (const auto &b : objects) {
            functor u = compose_functor(underlying_functor(left_counit(b, xs)), identity_functor(b.base()));
            if (!(u == identity_functor(b.base())))
                return {false, "projected counit is not the identity on " + b.name()};
        }
    } else {
        for (const auto &a : objects) {
            functor u = compose_functor(identity_functor(a.base()), underlying_functor(right_unit(a, xs)));
            if (!(u == identity_functor(a.base())))
                return {false, "projected unit is not the identity on " + a.name()};
        }
        for (const auto &w : bases) {
            lax_object rw = lax_right(w, xs);
            lax_morphism tri = compose_lax(lax_right_mor(identity_functor(w), xs), right_unit(rw, xs));
            if (!(tri == identity_lax(rw)))
                return {false, "embedded counit after unit is not the identity on one-structure over " + w->name};
        }
    }
    return {true, "triangle identities hold on all probes"};
}

} // namespace laxcat
