#pragma once

#include <map>

#include "laxcat/fincat.hpp"

namespace laxcat {

// Text format: whitespace-separated tokens over the name charset
// [A-Za-z0-9_()<=,:+-] with '{' '}' ';' '.' self-delimiting and '#'
// starting a comment that runs to end of line. A token that is exactly
// ":", "->", "=>", "=", "<=" or "," acts as punctuation; anything longer
// is a name, so names like "p<=q" or "inl:a" stay single tokens.
//
// Document forms:
//   category N { objects: a b ; mor f : a -> b ; eq g . f = h ; }
//   poset N { 0 <= 1 p }                (bare names are isolated elements)
//   freeacyclic N { objects: v w ; edge e : v -> w ; }
//   functor F : C -> D { obj a -> x ; mor f -> u ; }
//   nattrans t : F => G { at w : m ; }  (target may be a composite "b . f")
//
// Identities are implicit everywhere and named id_OBJ; declaring one is a
// duplicate-name error. A category's composition table lists identities
// automatically; every other composable pair needs exactly one eq.

struct document {
    enum class kind { category, poset, freeacyclic, functor_map, nattrans };

    struct mor_decl {
        std::string name, dom, cod;
    };
    struct eq_decl {
        std::string g, f, result;
    };

    kind k = kind::category;
    std::string name;
    int line = 1, col = 1;

    std::vector<std::string> objects;                           // category, freeacyclic, poset elements
    std::vector<mor_decl> mors;                                 // category mors / freeacyclic edges
    std::vector<eq_decl> eqs;                                   // category
    std::vector<std::pair<std::string, std::string>> relations; // poset

    std::string source, target;                                 // functor / nattrans headers
    std::string target_post;                                    // nonempty for composite target "target . target_post"
    std::vector<std::pair<std::string, std::string>> obj_map;   // functor
    std::vector<std::pair<std::string, std::string>> mor_map;   // functor
    std::vector<std::pair<std::string, std::string>> components; // nattrans
};

// Throws laxcat::error with "line L col C:" prefixed messages.
std::vector<document> parse_documents(const std::string &text);

// Elaboration environment: documents bind names in order, later documents
// may reference earlier ones.
struct doc_env {
    enum class entry_kind { category, functor_map, nattrans };
    std::vector<std::pair<std::string, entry_kind>> order;
    std::map<std::string, cat_ptr> categories;
    std::map<std::string, functor> functors;
    std::map<std::string, nat_trans> transformations;

    cat_ptr category(const std::string &name) const;
    const functor &functor_named(const std::string &name) const;
    const nat_trans &transformation(const std::string &name) const;
};

doc_env elaborate(const std::vector<document> &docs);
doc_env elaborate(const std::vector<document> &docs, doc_env base);
doc_env read_workspace(const std::string &text);

// Canonical form: LF line endings, newline terminated, two-space indent,
// category dialect with identities omitted and one eq per composable
// non-identity pair ordered by (g, f). parse + elaborate of the output
// reproduces the value.
std::string serialize(const fin_category &c);
std::string serialize(const functor &f);
std::string serialize(const nat_trans &t);
// nattrans header with an explicit target expression such as "b . f"
std::string serialize_with_target(const nat_trans &t, const std::string &target_expr);

} // namespace laxcat
