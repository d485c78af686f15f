#pragma once

#include "laxcat/descent.hpp"

namespace laxcat {

// invertibility over the base: the base functor is a bijection on objects
// and morphisms and every cell component is invertible
bool is_lax_iso(const lax_morphism &m);

// Structure on w whose value at each object is the product of the family
// values there, with the projection cells; the lifts project onto the
// members. This is the least structure making every leg a morphism.
struct lift_data {
    lax_object obj;
    std::vector<lax_morphism> lifts;
};
lift_data initial_lift(cat_ptr w, const std::vector<functor> &fs,
                       const std::vector<lax_object> &bs, x_structure &xs);

// Pull m back along both injections of a+b, reassemble the fibres, and
// check the comparison is invertible and the injections are disjoint.
check_detail check_extensivity_instance(const lax_object &a, const lax_object &b,
                                        const lax_morphism &m, x_structure &xs);

// Criterion (every family of structure values has a meet) plus behaviour:
// on a pass, a generated suite of lifts is verified against probes; on a
// failure, a concrete family with no lift is named when one exists.
struct topologicity_report {
    bool ok = false;
    check_detail lattice;
    std::string witness;
};
topologicity_report check_topologicity(cat_ptr x);

// One named check with ordered facts. Rendering is byte-stable: no
// timestamps, no durations, fixed ordering.
struct check_report {
    std::string check;
    bool ok = false;
    std::vector<std::pair<std::string, std::string>> facts;
    std::string render_text() const;
    std::string render_json() const;
};

const std::vector<std::string> &check_names();
check_report run_check(const std::string &name, cat_ptr x, int probes);

} // namespace laxcat
