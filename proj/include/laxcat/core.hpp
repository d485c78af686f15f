#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace laxcat {

// Error codes carried by every laxcat::error. Hypothesis codes mean "the
// construction's precondition on X failed" and map to CLI exit 2; input
// codes mean "the caller handed us bad data" and map to exit 3.
enum class errc {
    // validation
    non_total_composition,
    identity_law_violation,
    associativity_violation,
    invalid_functor,
    invalid_nat_trans,
    not_parallel,
    not_composable,
    object_not_found,
    morphism_not_found,
    size_limit_exceeded,
    // presentation
    syntax_error,
    duplicate_name,
    unknown_reference,
    not_antisymmetric,
    cyclic_graph,
    // universal properties / hypotheses on X
    not_a_cone,
    missing_products,
    missing_pullbacks,
    missing_pullback,
    missing_limit,
    missing_colimit,
    missing_exponential,
    missing_end,
    no_initial_object,
    no_terminal_object,
    no_common_codomain,
    strict_initial_missing,
    coequalizer_not_finite_within_bound,
    // adjunction verification
    bijective_failure,
    shape_mismatch,
    // descent
    not_a_pullback_square,
    not_fully_faithful,
    // cli
    input_error,
};

const char *errc_name(errc code);

// True for codes that report an unmet hypothesis ("if X has ..."), as
// opposed to malformed input. CLI exit code 2 vs 3.
bool is_hypothesis_errc(errc code);

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

// Process-wide size guards. Enumeration of functors is exponential, and
// coequalizers in Cat can be infinite, so every construction checks these
// before it builds. LAXCAT_BOUND overrides saturation_rounds.
struct bounds {
    int max_objects = 64;
    int max_morphisms = 512;
    int saturation_rounds = 32;

    static bounds &current();
};

// Deterministic shuffle hook. When the seed is nonzero (env LAXCAT_SHUFFLE
// or set_shuffle_seed), candidate generation order inside searches is
// permuted; all public results are selected by canonical key, so output
// must not change. Used by the determinism tests.
std::uint64_t shuffle_seed();
void set_shuffle_seed(std::uint64_t seed);

} // namespace laxcat
