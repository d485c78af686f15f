#pragma once

#include "laxcat/univprop.hpp"

namespace laxcat {

// Objects over a base category x: a small category together with a functor
// into x. Morphisms (f, cell): (w, a) -> (y, b) carry a natural
// transformation cell: a => b∘f; composition pastes cells:
// (g, chi)∘(f, gamma) = (g∘f, (chi whiskered by f) · gamma).

struct lax_object {
    functor structure;   // w -> x

    cat_ptr base() const { return structure.source; }
    cat_ptr over() const { return structure.target; }
    const std::string &name() const { return structure.name; }

    bool operator==(const lax_object &other) const { return structure == other.structure; }
};

struct lax_morphism {
    functor f;                 // base map w -> y
    nat_trans cell;            // a => b∘f
    functor target_structure;  // b

    lax_object source() const { return {cell.source}; }
    lax_object target() const { return {target_structure}; }

    bool operator==(const lax_morphism &other) const {
        return f == other.f && cell.components == other.cell.components &&
               target_structure == other.target_structure;
    }
};

lax_object make_lax_object(functor structure);
// validates cell: a => b∘f with matching shapes
lax_morphism make_lax_morphism(functor f, nat_trans cell, functor target_structure);

lax_morphism identity_lax(const lax_object &a);
lax_morphism compose_lax(const lax_morphism &g, const lax_morphism &f);
bool is_strict(const lax_morphism &m);

// complete hom-set, canonically ordered by (base functor, cell components)
std::vector<lax_morphism> enumerate_lax_hom(const lax_object &a, const lax_object &b);

// 2-cells zeta: (f1, c1) => (f2, c2) between parallel lax morphisms are
// transformations zeta: f1 => f2 with b(zeta_w)∘c1_w = c2_w for all w
bool is_two_cell(const lax_morphism &m1, const lax_morphism &m2, const nat_trans &zeta);
std::vector<nat_trans> enumerate_two_cells(const lax_morphism &m1, const lax_morphism &m2);

// the forgetful direction of the fibration
cat_ptr underlying_category(const lax_object &a);
functor underlying_functor(const lax_morphism &m);

// cartesian lift of f: w -> y over (y, b): the strict morphism
// ((w, b∘f), (f, id)) -> (y, b)
lax_morphism cartesian_lift(const lax_object &b, const functor &f);
// factorization of `through` across the lift along h with lift.f∘h = through.f
lax_morphism cartesian_factor(const lax_morphism &lift, const lax_morphism &through,
                              const functor &h);

// constant-structure embeddings: left needs an initial object of x, right a
// terminal one
lax_object lax_left(cat_ptr w, x_structure &xs);
lax_morphism lax_left_mor(const functor &f, x_structure &xs);
lax_object lax_right(cat_ptr w, x_structure &xs);
lax_morphism lax_right_mor(const functor &f, x_structure &xs);
// counit at b of the left embedding: (id, iota_b): (Y, 0const) -> (Y, b)
lax_morphism left_counit(const lax_object &b, x_structure &xs);
// unit at a of the right embedding: (id, tau_a): (w, a) -> (w, 1const)
lax_morphism right_unit(const lax_object &a, x_structure &xs);

// finite full subcategory of the lax comma category on the given objects,
// materialized as a plain category (objects O0..., morphisms m0...)
struct truncation {
    std::vector<lax_object> objects;
    cat_ptr cat;
    std::vector<lax_morphism> morphisms;   // parallel to cat->morphisms

    std::optional<int> find_object(const lax_object &o) const;
    std::optional<int> find_morphism(const lax_morphism &m) const;
};
truncation truncate(std::vector<lax_object> objects);

// deterministic probe objects over x: singleton-based constants first, then
// walking-arrow structures, then parallel-pair structures
std::vector<lax_object> canonical_probes(cat_ptr x, int n);
cat_ptr probe_one();
cat_ptr probe_two();
cat_ptr probe_pp();

struct adjunction_report {
    bool ok = false;
    std::string detail;
};

// hom-count bijection for a claimed constant-structure adjoint: with c the
// initial (left=true) or terminal (left=false) object the counts must agree
// for every target/source; any other c is expected to fail and the report
// names the offending pair
adjunction_report check_constant_structure_bijection(cat_ptr w, int c, const lax_object &other,
                                                     bool left, x_structure &xs);
// triangle identities for both constant-structure adjunctions over the probes
adjunction_report check_triangle_identities(const std::vector<cat_ptr> &bases,
                                            const std::vector<lax_object> &objects, bool left,
                                            x_structure &xs);

} // namespace laxcat
