#pragma once

#include "laxcat/laxcomma.hpp"

namespace laxcat {

// Limits, colimits, exponentials and pointwise left extensions in the lax
// comma category over a fixed base. Chosen (co)limits in the base come from
// the x_structure chooser, so all induced actions are strictly functorial.

cat_ptr empty_category();

// terminal: singleton base with the terminal structure
lax_object terminal_laxcomma(x_structure &xs);
lax_morphism to_terminal_laxcomma(const lax_object &a, x_structure &xs);

// initial: empty base with the empty structure; the base category must have
// an initial object for this to be initial
lax_object initial_laxcomma(x_structure &xs);
lax_morphism from_initial_laxcomma(const lax_object &b, x_structure &xs);

struct lax_prod_data {
    lax_object obj;
    lax_morphism pr1, pr2;
};
lax_prod_data product_laxcomma(const lax_object &a, const lax_object &b, x_structure &xs);
lax_morphism product_mediator(const lax_prod_data &p, const lax_morphism &u,
                              const lax_morphism &v, x_structure &xs);
// (m1 x m2): src.obj -> dst.obj for m1: A -> C, m2: B -> D with
// src = A x B, dst = C x D
lax_morphism product_of_morphisms(const lax_prod_data &src, const lax_prod_data &dst,
                                  const lax_morphism &m1, const lax_morphism &m2,
                                  x_structure &xs);

struct lax_fam_data {
    lax_object obj;
    std::vector<lax_morphism> legs;
    std::vector<functor> extractors;   // base -> factor bases (empty for n = 0)
};
lax_fam_data product_family_laxcomma(const std::vector<lax_object> &as, x_structure &xs);
lax_morphism family_mediator(const lax_fam_data &p, const std::vector<lax_morphism> &us,
                             x_structure &xs);

struct lax_pb_data {
    lax_object obj;
    lax_morphism p1, p2;
    lax_morphism f, g;   // the cospan the square was built over
};
lax_pb_data pullback_laxcomma(const lax_morphism &f, const lax_morphism &g, x_structure &xs);
lax_morphism pullback_mediator(const lax_pb_data &p, const lax_morphism &u,
                               const lax_morphism &v, x_structure &xs);

struct lax_coprod_data {
    lax_object obj;
    lax_morphism in1, in2;
};
lax_coprod_data coproduct_laxcomma(const lax_object &a, const lax_object &b);
lax_morphism coproduct_mediator(const lax_coprod_data &c, const lax_morphism &u,
                                const lax_morphism &v);

// pointwise left extension of a: w -> x along f: w -> y, with its unit and
// the per-object colimit certificates used to build mediators
struct lan_site {
    comma_result comma;   // f down y
    functor diagram;      // a ∘ projection
    cone cocone;          // colimiting cocone, apex = ext(y)
};
struct lan_data {
    functor ext;      // y -> x
    nat_trans unit;   // a => ext ∘ f
    std::vector<lan_site> at;
};
lan_data left_kan(const functor &f, const functor &a, x_structure &xs);
// bijection ext => b  <->  a => b ∘ f: mate sends phi forward, transpose
// whiskers back along the unit
nat_trans kan_mate(const lan_data &lan, const functor &f, const nat_trans &phi,
                   const functor &b);
nat_trans kan_transpose_back(const lan_data &lan, const functor &f, const nat_trans &psi);
// the extension applied to a cell gamma: a => c (both extended along f)
nat_trans kan_on_cell(const lan_data &lan_a, const lan_data &lan_c, const nat_trans &gamma);

// coequalizer of the underlying functors by bounded congruence saturation;
// throws when the quotient does not stabilize within
// bounds::saturation_rounds or the morphism cap
struct coeq_base {
    cat_ptr quotient;
    functor j;   // y -> quotient
};
coeq_base coequalize_base(const functor &f, const functor &g);

struct lax_coeq_data {
    lax_morphism proj;   // (y, b) -> (quotient, d)
};
lax_coeq_data coequalizer_laxcomma(const lax_morphism &m1, const lax_morphism &m2,
                                   x_structure &xs);

// exponential (w, a) => (y, b): base is the functor category, the structure
// at h is the end over w of exp(a(w), b(h(w')))
struct lax_exp_data {
    lax_object obj;
    funcat_result fc;             // base of obj, with index maps
    std::vector<end_data> ends;   // per functor-category object
    lax_prod_data prod;           // obj x a
    lax_morphism ev;              // prod.obj -> b
};
lax_exp_data exponential_laxcomma(const lax_object &a, const lax_object &b, x_structure &xs);
// m: prod_ca.obj -> b with prod_ca = c x a gives the transpose c -> obj
lax_morphism curry_lax(const lax_exp_data &e, const lax_prod_data &prod_ca,
                       const lax_morphism &m, x_structure &xs);
lax_morphism uncurry_lax(const lax_exp_data &e, const lax_prod_data &prod_ca,
                         const lax_morphism &h, x_structure &xs);

} // namespace laxcat
