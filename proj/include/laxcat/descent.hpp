#pragma once

#include "laxcat/laxstruct.hpp"

namespace laxcat {

// Slice c/v as the comma category of the identity over v. Objects are the
// morphisms into v, morphisms are commuting triangles.
struct slice_data {
    int vertex;
    comma_result com;
    int find_object(int w, int m) const;                 // (dom, arrow into vertex)
    int find_morphism(int from, int to, int under) const;
};
slice_data slice_over(cat_ptr c, int vertex);

// The adjunction (postcompose with q) -| (pull back along q) between the
// slices over dom(q) and cod(q), and the monad it induces on c/dom(q).
// Pullbacks are taken with the canonical chooser, so all of this is
// deterministic.
struct descent_monad_data {
    cat_ptr c;
    int q;
    slice_data dom_slice;    // c/dom(q)
    slice_data cod_slice;    // c/cod(q)
    functor sigma;           // c/dom(q) -> c/cod(q)
    functor pullback_along;  // c/cod(q) -> c/dom(q)
    functor monad;           // pullback_along . sigma
    nat_trans unit;          // id => monad
    nat_trans mult;          // monad.monad => monad
    nat_trans counit;        // sigma . pullback_along => id
};
descent_monad_data descent_monad(cat_ptr c, int q);

// Algebras for the monad: pairs (object m of c/dom(q), structure map xi)
// satisfying the unit and multiplication laws, with the morphisms between
// them that commute with the structure maps.
struct em_result {
    cat_ptr cat;
    std::vector<std::pair<int, int>> objects;   // (slice object, structure map)
    std::vector<int> morphisms;                 // underlying slice morphism
    int find_object(int slice_obj, int xi) const;
};
em_result em_category(const descent_monad_data &md);

// Comparison functor c/cod(q) -> algebras sending n to the pullback of n
// along q with its canonical structure map.
struct comparison_data {
    descent_monad_data monad;
    em_result em;
    functor k;
};
comparison_data comparison_functor(cat_ptr c, int q);

enum class descent_class { not_almost = 0, almost = 1, descent = 2, effective = 3 };
const char *descent_class_name(descent_class g);

struct descent_report {
    descent_class grade;
    bool faithful;
    bool fully_faithful;
    bool equivalence;
    std::string detail;
};
// Grade q by how much of c/cod(q) the comparison functor sees.
descent_report classify_descent(cat_ptr c, int q);

// Does some object of the embedded category hit the pullback apex of the
// image cospan? v must be fully faithful; f and g form a cospan in its
// source and the pullback is taken in its target.
struct obstruction_report {
    bool ok;
    int witness;        // source object with v(witness) iso to the apex, or -1
    std::string detail;
};
obstruction_report obstruction_check(const functor &v, int f, int g);

// Kernel pair then coequalizer: q is a regular epi when the induced map
// from the coequalizer back to cod(q) is invertible.
check_detail regular_epi_check(cat_ptr c, int q);

// Pulling a structured object back along a map into a zero structure
// leaves only zero structure: every fibre of the pullback of f against
// the zero embedding of p is initial.
check_detail verify_l_pullback_zero(const lax_morphism &f, const functor &p, x_structure &xs);

// Pulling any m back along the counit at its target gives the zero
// structure on the source of m, up to isomorphism.
check_detail verify_lu_pullback(const lax_morphism &m, x_structure &xs);

} // namespace laxcat
