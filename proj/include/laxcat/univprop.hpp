#pragma once

#include <map>
#include <optional>

#include "laxcat/fincat.hpp"

namespace laxcat {

// A diagram is a functor from a small shape category. Cones and cocones
// share one struct: for cones legs go apex -> F(o), for cocones F(o) -> apex.

struct cone {
    int apex = -1;
    std::vector<int> legs;

    bool operator==(const cone &other) const = default;
};

bool is_cone(const functor &d, const cone &c);
bool is_cocone(const functor &d, const cone &c);

// All cones over / cocones under a diagram, canonically ordered by
// (apex, legs); shuffled when a shuffle seed is set (callers that need
// determinism select by canonical key, not by position).
std::vector<cone> enumerate_cones(const functor &d);
std::vector<cone> enumerate_cocones(const functor &d);

// Factorizations of `test` through `vertex`: morphisms m with
// vertex.legs[o] ∘ m = test.legs[o] (cones), m ∘ vertex.legs[o] =
// test.legs[o] (cocones).
std::vector<int> cone_mediators(const functor &d, const cone &vertex, const cone &test);
std::vector<int> cocone_mediators(const functor &d, const cone &vertex, const cone &test);

// Exhaustive universal-property checks: every (co)cone factors exactly once.
bool is_limit(const functor &d, const cone &c);
bool is_colimit(const functor &d, const cone &c);

// Full scan over all candidates keeping the canonical minimum, so results
// do not depend on enumeration order.
std::optional<cone> find_limit(const functor &d);
std::optional<cone> find_colimit(const functor &d);

// shape categories, cached per size
cat_ptr discrete_shape(int n);   // objects d0, d1, ...
cat_ptr parallel_shape();        // a ⇉ b, arrows f g
cat_ptr cospan_shape();          // l -> m <- r, arrows f0: l->m, f1: r->m

functor discrete_diagram(cat_ptr target, const std::vector<int> &objects);
functor parallel_diagram(cat_ptr target, int f, int g);
functor cospan_diagram(cat_ptr target, int f, int g);   // cod(f) == cod(g)

struct prod_data { int obj; int pr1; int pr2; };
struct fam_data { int obj; std::vector<int> legs; };
struct pb_data { int obj; int p1; int p2; };
struct eq_data { int obj; int incl; };
struct coeq_data { int obj; int proj; };
struct coprod_data { int obj; int in1; int in2; };
struct exp_data { int obj; int ev; };    // ev: chosen_product(obj, base) -> out

// Canonical chooser for (co)limits in one base category. Choices are a
// function of the input data alone (found by canonical-minimum scan) and
// memoized, so mediator-based maps compose strictly.
class x_structure {
public:
    explicit x_structure(cat_ptr x) : x_(std::move(x)) {}

    const cat_ptr &cat() const { return x_; }

    std::optional<int> terminal();
    std::optional<int> initial();
    std::optional<prod_data> product(int x, int y);
    std::optional<fam_data> product_family(const std::vector<int> &xs);
    std::optional<coprod_data> coproduct(int x, int y);
    std::optional<fam_data> coproduct_family(const std::vector<int> &xs);
    std::optional<pb_data> pullback(int f, int g);      // common codomain
    std::optional<eq_data> equalizer(int f, int g);     // parallel pair
    std::optional<coeq_data> coequalizer(int f, int g);
    std::optional<exp_data> exponential(int b, int c);  // c^b with evaluation

    // unique factorizations through the chosen objects; throw the matching
    // missing_* error when the chosen object does not exist
    int mediator_to_product(int x, int y, int u, int v);           // u: t->x, v: t->y
    int mediator_to_family(const std::vector<int> &xs, const std::vector<int> &us);
    int mediator_from_coproduct(int x, int y, int u, int v);       // u: x->t, v: y->t
    int mediator_from_family(const std::vector<int> &xs, const std::vector<int> &us);
    int mediator_to_pullback(int f, int g, int u, int v);          // f∘u = g∘v
    int mediator_to_equalizer(int f, int g, int u);                // f∘u = g∘u
    int mediator_from_coequalizer(int f, int g, int u);            // u∘f = u∘g
    int to_terminal(int t);
    int from_initial(int t);

    // functorial actions induced by mediators
    int product_mor(int f, int g);                       // dom(f)×dom(g) -> cod(f)×cod(g)
    int family_mor(const std::vector<int> &doms, const std::vector<int> &fs);

    // cartesian-closed helpers: f: chosen_product(a,b) -> c
    int curry(int a, int b, int c, int f);
    int uncurry(int a, int b, int c, int g);             // g: a -> c^b

private:
    cat_ptr x_;
    std::optional<std::optional<int>> terminal_, initial_;
    std::map<std::pair<int, int>, std::optional<prod_data>> products_;
    std::map<std::vector<int>, std::optional<fam_data>> families_;
    std::map<std::pair<int, int>, std::optional<coprod_data>> coproducts_;
    std::map<std::vector<int>, std::optional<fam_data>> cofamilies_;
    std::map<std::pair<int, int>, std::optional<pb_data>> pullbacks_;
    std::map<std::pair<int, int>, std::optional<eq_data>> equalizers_;
    std::map<std::pair<int, int>, std::optional<coeq_data>> coequalizers_;
    std::map<std::pair<int, int>, std::optional<exp_data>> exponentials_;
};

// End of t: op(w) x w -> x over w, computed as the equalizer of the two
// canonical maps prod_w t(w,w) ⇉ prod_{h: w->y} t(w,y). The source of t
// must use the product_category(opposite(w), w) index layout. legs[w] is
// the projection end -> t(w,w).
struct end_data { int obj; std::vector<int> legs; };
std::optional<end_data> end_of(cat_ptr w, const functor &t, x_structure &xs);

struct check_detail {
    bool ok = false;
    std::string detail;   // witness description on failure, summary on success
};

// finite complete-lattice test: thin, skeletal, terminal and initial
// present, all binary meets and joins exist
check_detail complete_lattice_check(cat_ptr x);

// initial object exists and every morphism into it is an isomorphism
check_detail strict_initial_check(cat_ptr x);

} // namespace laxcat
