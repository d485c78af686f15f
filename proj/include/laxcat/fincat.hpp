#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "laxcat/core.hpp"

namespace laxcat {

// A finite category presented by a total composition table. Objects and
// morphisms are indexed densely; names are for I/O and name-based equality.
// All values are immutable after validation.

struct raw_morphism {
    std::string name;
    int dom = -1;
    int cod = -1;
};

struct raw_category {
    std::string name;
    std::vector<std::string> objects;
    std::vector<raw_morphism> morphisms;
    std::vector<int> identity;               // object -> morphism index
    std::vector<std::vector<int>> compose;   // compose[g][f] = g∘f, -1 when not composable
};

class fin_category;
using cat_ptr = std::shared_ptr<const fin_category>;

class fin_category {
public:
    std::string name;
    std::vector<std::string> objects;
    std::vector<raw_morphism> morphisms;

    int object_count() const { return static_cast<int>(objects.size()); }
    int morphism_count() const { return static_cast<int>(morphisms.size()); }

    int dom(int m) const { return morphisms[m].dom; }
    int cod(int m) const { return morphisms[m].cod; }
    int identity(int o) const { return identity_[o]; }
    bool is_identity(int m) const { return identity_[morphisms[m].dom] == m && morphisms[m].dom == morphisms[m].cod; }

    // g∘f, defined when cod(f) = dom(g)
    int compose(int g, int f) const;

    const std::vector<int> &hom(int x, int y) const { return hom_[x][y]; }

    bool is_iso(int m) const;
    std::optional<int> inverse(int m) const;
    bool isomorphic_objects(int x, int y) const;

    std::optional<int> object_index(const std::string &n) const;
    std::optional<int> morphism_index(const std::string &n) const;

    bool is_thin() const;

    // structural equality (names included); the name-based notion of the rest
    // of the engine
    bool operator==(const fin_category &other) const;

    friend fin_category validate_category(const raw_category &raw);

private:
    std::vector<int> identity_;
    std::vector<std::vector<int>> compose_;
    std::vector<std::vector<std::vector<int>>> hom_;

    void build_hom_tables();
};

// Checks totality, identity laws and associativity, in that order, and
// returns the validated immutable value. Throws laxcat::error naming the
// first violated law and the offending morphisms.
fin_category validate_category(const raw_category &raw);
cat_ptr validate_category_ptr(const raw_category &raw);

struct functor {
    std::string name;
    cat_ptr source;
    cat_ptr target;
    std::vector<int> omap;
    std::vector<int> mmap;

    int ob(int o) const { return omap[o]; }
    int mor(int m) const { return mmap[m]; }

    bool operator==(const functor &other) const;
};

// Validates preservation of dom/cod, identities and composition.
functor make_functor(std::string name, cat_ptr source, cat_ptr target,
                     std::vector<int> omap, std::vector<int> mmap);
functor identity_functor(cat_ptr c);
functor constant_functor(std::string name, cat_ptr source, cat_ptr target, int value);
// g∘f
functor compose_functor(const functor &g, const functor &f);

struct nat_trans {
    std::string name;
    functor source;
    functor target;
    std::vector<int> components;   // source-category object -> morphism of target category

    int at(int o) const { return components[o]; }

    bool operator==(const nat_trans &other) const;
};

// Validates parallelness and all naturality squares.
nat_trans make_nat_trans(std::string name, functor source, functor target,
                         std::vector<int> components);
nat_trans identity_nat_trans(const functor &f);
// vertical composition b∘a
nat_trans compose_nat_trans(const nat_trans &b, const nat_trans &a);
// whiskering: (t ∗ f) for f into t's source-source, and (h ∗ t) for h out of
// the common target
nat_trans whisker_right(const nat_trans &t, const functor &f);
nat_trans whisker_left(const functor &h, const nat_trans &t);

// Complete, duplicate-free, canonically ordered (lexicographic on omap then
// mmap, declaration order) list of functors w -> y.
std::vector<functor> enumerate_functors(cat_ptr w, cat_ptr y);
// Canonically ordered list of natural transformations f => g.
std::vector<nat_trans> enumerate_nat_trans(const functor &f, const functor &g);

// Standard constructions. Index layout is part of the contract:
//   product: object (i,j) -> i*nB+j, morphism (p,q) -> p*mB+q
//   coproduct: A-objects first, then B-objects (same for morphisms)
//   opposite: indices unchanged, dom/cod swapped
cat_ptr opposite(cat_ptr c);
cat_ptr product_category(cat_ptr a, cat_ptr b);
cat_ptr coproduct_category(cat_ptr a, cat_ptr b);

struct funcat_result {
    cat_ptr cat;                      // objects F0..., morphisms n0...
    std::vector<functor> objects;
    std::vector<nat_trans> morphisms;
};
funcat_result functor_category(cat_ptr w, cat_ptr y);

struct comma_result {
    cat_ptr cat;                              // objects (w,h), morphisms by the W-arrow
    std::vector<std::pair<int, int>> objects; // (object of W, morphism f(w)->y in Y)
    std::vector<int> morphism_arrows;         // comma morphism -> underlying W-morphism
    functor projection;                       // comma -> W
};
// Comma category f↓y for f: W -> Y and y an object of Y.
comma_result comma_over(const functor &f, int y);

bool is_faithful(const functor &f);
bool is_full(const functor &f);
bool is_fully_faithful(const functor &f);
bool is_essentially_surjective(const functor &f);
bool is_equivalence(const functor &f);

// Exhaustive isomorphism-of-categories search (equality is name-based, so
// up-to-iso comparisons need this separately).
bool find_isomorphism(cat_ptr a, cat_ptr b);

// Unique-name helper for constructed categories: returns base, or base_2,
// base_3, ... on collision, scanning in canonical order.
std::string fresh_name(std::vector<std::string> &used, const std::string &base);

} // namespace laxcat
