#include "laxcat/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace laxcat {

namespace {

bool name_char(char c) {
    if (std::isalnum(static_cast<unsigned char>(c))) return true;
    return std::string("_()<=,:+-").find(c) != std::string::npos;
}

bool self_delim(char c) { return c == '{' || c == '}' || c == ';' || c == '.'; }

bool operator_token(const std::string &s) {
    return s == ":" || s == "->" || s == "=>" || s == "=" || s == "<=" || s == ",";
}

struct token {
    std::string text;
    int line;
    int col;
};

[[noreturn]] void fail_at(int line, int col, errc code, const std::string &msg) {
    throw error(code, "line " + std::to_string(line) + " col " + std::to_string(col) + ": " + msg);
}

std::vector<token> tokenize(const std::string &text) {
    std::vector<token> out;
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (self_delim(c)) {
            out.push_back({std::string(1, c), line, col});
            ++col;
            ++i;
            continue;
        }
        if (name_char(c) || c == '>') {
            int start_col = col;
            std::string t;
            while (i < text.size() && (name_char(text[i]) || text[i] == '>')) {
                t += text[i];
                ++i;
                ++col;
            }
            out.push_back({std::move(t), line, start_col});
            continue;
        }
        fail_at(line, col, errc::syntax_error,
                std::string("unexpected character '") + c + "'");
    }
    return out;
}

struct cursor {
    std::vector<token> toks;
    size_t i = 0;

    bool at_end() const { return i >= toks.size(); }

    const token &peek() const {
        if (at_end()) {
            int l = toks.empty() ? 1 : toks.back().line;
            int c = toks.empty() ? 1 : toks.back().col;
            fail_at(l, c, errc::syntax_error, "unexpected end of input");
        }
        return toks[i];
    }

    token next() {
        const token &t = peek();
        ++i;
        return t;
    }

    void expect(const std::string &text) {
        const token &t = peek();
        if (t.text != text)
            fail_at(t.line, t.col, errc::syntax_error,
                    "expected '" + text + "', found '" + t.text + "'");
        ++i;
    }

    std::string name() {
        const token &t = peek();
        if (operator_token(t.text) || self_delim(t.text[0]))
            fail_at(t.line, t.col, errc::syntax_error,
                    "expected a name, found '" + t.text + "'");
        for (char c : t.text)
            if (!name_char(c))
                fail_at(t.line, t.col, errc::syntax_error,
                        "invalid character '" + std::string(1, c) + "' in name '" + t.text + "'");
        ++i;
        return t.text;
    }
};

document parse_category(cursor &cur) {
    document d;
    d.k = document::kind::category;
    const token &kw = cur.peek();
    d.line = kw.line;
    d.col = kw.col;
    cur.expect("category");
    d.name = cur.name();
    cur.expect("{");
    cur.expect("objects:");
    while (cur.peek().text != ";") d.objects.push_back(cur.name());
    cur.expect(";");
    while (cur.peek().text != "}") {
        if (cur.peek().text == "mor") {
            cur.next();
            document::mor_decl m;
            m.name = cur.name();
            cur.expect(":");
            m.dom = cur.name();
            cur.expect("->");
            m.cod = cur.name();
            cur.expect(";");
            d.mors.push_back(std::move(m));
        } else if (cur.peek().text == "eq") {
            cur.next();
            document::eq_decl e;
            e.g = cur.name();
            cur.expect(".");
            e.f = cur.name();
            cur.expect("=");
            e.result = cur.name();
            cur.expect(";");
            d.eqs.push_back(std::move(e));
        } else {
            const token &t = cur.peek();
            fail_at(t.line, t.col, errc::syntax_error,
                    "expected 'mor', 'eq' or '}', found '" + t.text + "'");
        }
    }
    cur.expect("}");
    return d;
}

document parse_poset(cursor &cur) {
    document d;
    d.k = document::kind::poset;
    const token &kw = cur.peek();
    d.line = kw.line;
    d.col = kw.col;
    cur.expect("poset");
    d.name = cur.name();
    cur.expect("{");
    auto mention = [&](const std::string &e) {
        if (std::find(d.objects.begin(), d.objects.end(), e) == d.objects.end())
            d.objects.push_back(e);
    };
    while (cur.peek().text != "}") {
        if (cur.peek().text == ";") {
            cur.next();
            continue;
        }
        std::string a = cur.name();
        mention(a);
        if (!cur.at_end() && cur.peek().text == "<=") {
            cur.next();
            std::string b = cur.name();
            mention(b);
            d.relations.emplace_back(a, b);
        }
    }
    cur.expect("}");
    return d;
}

document parse_freeacyclic(cursor &cur) {
    document d;
    d.k = document::kind::freeacyclic;
    const token &kw = cur.peek();
    d.line = kw.line;
    d.col = kw.col;
    cur.expect("freeacyclic");
    d.name = cur.name();
    cur.expect("{");
    cur.expect("objects:");
    while (cur.peek().text != ";") d.objects.push_back(cur.name());
    cur.expect(";");
    while (cur.peek().text != "}") {
        cur.expect("edge");
        document::mor_decl m;
        m.name = cur.name();
        cur.expect(":");
        m.dom = cur.name();
        cur.expect("->");
        m.cod = cur.name();
        cur.expect(";");
        d.mors.push_back(std::move(m));
    }
    cur.expect("}");
    return d;
}

document parse_functor(cursor &cur) {
    document d;
    d.k = document::kind::functor_map;
    const token &kw = cur.peek();
    d.line = kw.line;
    d.col = kw.col;
    cur.expect("functor");
    d.name = cur.name();
    cur.expect(":");
    d.source = cur.name();
    cur.expect("->");
    d.target = cur.name();
    cur.expect("{");
    while (cur.peek().text != "}") {
        if (cur.peek().text == "obj") {
            cur.next();
            std::string a = cur.name();
            cur.expect("->");
            std::string x = cur.name();
            cur.expect(";");
            d.obj_map.emplace_back(std::move(a), std::move(x));
        } else if (cur.peek().text == "mor") {
            cur.next();
            std::string m = cur.name();
            cur.expect("->");
            std::string u = cur.name();
            cur.expect(";");
            d.mor_map.emplace_back(std::move(m), std::move(u));
        } else {
            const token &t = cur.peek();
            fail_at(t.line, t.col, errc::syntax_error,
                    "expected 'obj', 'mor' or '}', found '" + t.text + "'");
        }
    }
    cur.expect("}");
    return d;
}

document parse_nattrans(cursor &cur) {
    document d;
    d.k = document::kind::nattrans;
    const token &kw = cur.peek();
    d.line = kw.line;
    d.col = kw.col;
    cur.expect("nattrans");
    d.name = cur.name();
    cur.expect(":");
    d.source = cur.name();
    cur.expect("=>");
    d.target = cur.name();
    if (!cur.at_end() && cur.peek().text == ".") {
        cur.next();
        d.target_post = cur.name();
    }
    cur.expect("{");
    while (cur.peek().text != "}") {
        cur.expect("at");
        std::string w = cur.name();
        cur.expect(":");
        std::string m = cur.name();
        cur.expect(";");
        d.components.emplace_back(std::move(w), std::move(m));
    }
    cur.expect("}");
    return d;
}

cat_ptr elaborate_category(const document &d) {
    raw_category raw;
    raw.name = d.name;
    raw.objects = d.objects;
    int n = static_cast<int>(d.objects.size());
    std::map<std::string, int> oidx;
    for (int o = 0; o < n; ++o) {
        if (!oidx.emplace(d.objects[o], o).second)
            throw error(errc::duplicate_name,
                        "category '" + d.name + "': duplicate object '" + d.objects[o] + "'");
    }
    std::map<std::string, int> midx;
    for (int o = 0; o < n; ++o) {
        raw.morphisms.push_back({"id_" + d.objects[o], o, o});
        raw.identity.push_back(o);
        midx.emplace(raw.morphisms.back().name, o);
    }
    for (const auto &m : d.mors) {
        if (midx.count(m.name))
            throw error(errc::duplicate_name,
                        "category '" + d.name + "': duplicate morphism '" + m.name + "'");
        auto di = oidx.find(m.dom), ci = oidx.find(m.cod);
        if (di == oidx.end())
            throw error(errc::unknown_reference,
                        "category '" + d.name + "': morphism '" + m.name +
                            "' uses unknown object '" + m.dom + "'");
        if (ci == oidx.end())
            throw error(errc::unknown_reference,
                        "category '" + d.name + "': morphism '" + m.name +
                            "' uses unknown object '" + m.cod + "'");
        midx.emplace(m.name, static_cast<int>(raw.morphisms.size()));
        raw.morphisms.push_back({m.name, di->second, ci->second});
    }
    int total = static_cast<int>(raw.morphisms.size());
    raw.compose.assign(total, std::vector<int>(total, -1));
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
            if (f < n) raw.compose[g][f] = g;
            else if (g < n) raw.compose[g][f] = f;
        }
    for (const auto &e : d.eqs) {
        auto resolve = [&](const std::string &nm) {
            auto it = midx.find(nm);
            if (it == midx.end())
                throw error(errc::unknown_reference,
                            "category '" + d.name + "': eq uses unknown morphism '" + nm + "'");
            return it->second;
        };
        int g = resolve(e.g), f = resolve(e.f), r = resolve(e.result);
        if (raw.morphisms[f].cod != raw.morphisms[g].dom)
            throw error(errc::not_composable, "category '" + d.name + "': eq " + e.g + " . " +
                                                  e.f + " names a non-composable pair");
        if (raw.compose[g][f] != -1 && raw.compose[g][f] != r)
            throw error(errc::syntax_error, "category '" + d.name + "': conflicting eq for " +
                                                e.g + " . " + e.f);
        raw.compose[g][f] = r;
    }
    return validate_category_ptr(raw);
}

cat_ptr elaborate_poset(const document &d) {
    int n = static_cast<int>(d.objects.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx.emplace(d.objects[i], i);
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (const auto &[a, b] : d.relations) leq[idx[a]][idx[b]] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (leq[i][k] && leq[k][j]) leq[i][j] = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (leq[i][j] && leq[j][i])
                throw error(errc::not_antisymmetric, "poset '" + d.name + "': elements '" +
                                                         d.objects[i] + "' and '" + d.objects[j] +
                                                         "' violate antisymmetry");
    raw_category raw;
    raw.name = d.name;
    raw.objects = d.objects;
    for (int o = 0; o < n; ++o) {
        raw.morphisms.push_back({"id_" + d.objects[o], o, o});
        raw.identity.push_back(o);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && leq[a][b])
                raw.morphisms.push_back({d.objects[a] + "<=" + d.objects[b], a, b});
    int total = static_cast<int>(raw.morphisms.size());
    raw.compose.assign(total, std::vector<int>(total, -1));
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
            for (int c = 0; c < total; ++c)
                if (raw.morphisms[c].dom == raw.morphisms[f].dom &&
                    raw.morphisms[c].cod == raw.morphisms[g].cod)
                    raw.compose[g][f] = c;
        }
    return validate_category_ptr(raw);
}

cat_ptr elaborate_freeacyclic(const document &d) {
    int n = static_cast<int>(d.objects.size());
    std::map<std::string, int> oidx;
    for (int i = 0; i < n; ++i) {
        if (!oidx.emplace(d.objects[i], i).second)
            throw error(errc::duplicate_name,
                        "freeacyclic '" + d.name + "': duplicate object '" + d.objects[i] + "'");
    }
    struct edge {
        std::string name;
        int dom, cod;
    };
    std::vector<edge> edges;
    std::set<std::string> edge_names;
    for (const auto &m : d.mors) {
        if (!edge_names.insert(m.name).second)
            throw error(errc::duplicate_name,
                        "freeacyclic '" + d.name + "': duplicate edge '" + m.name + "'");
        auto di = oidx.find(m.dom), ci = oidx.find(m.cod);
        if (di == oidx.end() || ci == oidx.end())
            throw error(errc::unknown_reference, "freeacyclic '" + d.name + "': edge '" + m.name +
                                                     "' uses an unknown object");
        edges.push_back({m.name, di->second, ci->second});
    }
    // cycle detection over the edge graph
    {
        std::vector<int> state(n, 0);
        auto dfs = [&](auto &&self, int v) -> bool {
            state[v] = 1;
            for (const auto &e : edges) {
                if (e.dom != v) continue;
                if (state[e.cod] == 1) return false;
                if (state[e.cod] == 0 && !self(self, e.cod)) return false;
            }
            state[v] = 2;
            return true;
        };
        for (int v = 0; v < n; ++v)
            if (state[v] == 0 && !dfs(dfs, v))
                throw error(errc::cyclic_graph,
                            "freeacyclic '" + d.name + "': the edge graph has a cycle");
    }
    // paths by length, then generation order (lexicographic on edge indices)
    struct path {
        std::vector<int> seq;
        int dom, cod;
    };
    std::vector<path> paths;
    std::vector<path> frontier;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        frontier.push_back({{e}, edges[e].dom, edges[e].cod});
    const bounds &lim = bounds::current();
    while (!frontier.empty()) {
        paths.insert(paths.end(), frontier.begin(), frontier.end());
        if (n + static_cast<int>(paths.size()) > lim.max_morphisms)
            throw error(errc::size_limit_exceeded,
                        "freeacyclic '" + d.name + "' exceeds the morphism cap");
        std::vector<path> next;
        for (const auto &p : frontier)
            for (int e = 0; e < static_cast<int>(edges.size()); ++e)
                if (edges[e].dom == p.cod) {
                    path q = p;
                    q.seq.push_back(e);
                    q.cod = edges[e].cod;
                    next.push_back(std::move(q));
                }
        frontier = std::move(next);
    }
    auto path_name = [&](const std::vector<int> &seq) {
        if (seq.size() == 1) return edges[seq[0]].name;
        std::string s = "(";
        for (size_t i = 0; i < seq.size(); ++i) {
            if (i) s += ",";
            s += edges[seq[i]].name;
        }
        return s + ")";
    };
    raw_category raw;
    raw.name = d.name;
    raw.objects = d.objects;
    std::map<std::string, int> names;
    for (int o = 0; o < n; ++o) {
        raw.morphisms.push_back({"id_" + d.objects[o], o, o});
        raw.identity.push_back(o);
        names.emplace(raw.morphisms.back().name, o);
    }
    std::map<std::vector<int>, int> by_seq;
    for (const auto &p : paths) {
        std::string nm = path_name(p.seq);
        if (names.count(nm))
            throw error(errc::duplicate_name, "freeacyclic '" + d.name + "': generated path name '" +
                                                  nm + "' collides with another morphism");
        int mi = static_cast<int>(raw.morphisms.size());
        names.emplace(nm, mi);
        by_seq.emplace(p.seq, mi);
        raw.morphisms.push_back({nm, p.dom, p.cod});
    }
    int total = static_cast<int>(raw.morphisms.size());
    raw.compose.assign(total, std::vector<int>(total, -1));
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
            if (f < n) raw.compose[g][f] = g;
            else if (g < n) raw.compose[g][f] = f;
            else {
                std::vector<int> seq = paths[f - n].seq;
                seq.insert(seq.end(), paths[g - n].seq.begin(), paths[g - n].seq.end());
                raw.compose[g][f] = by_seq.at(seq);
            }
        }
    return validate_category_ptr(raw);
}

functor elaborate_functor(const document &d, const doc_env &env) {
    cat_ptr src = env.category(d.source);
    cat_ptr tgt = env.category(d.target);
    std::vector<int> omap(src->object_count(), -1);
    for (const auto &[a, x] : d.obj_map) {
        auto ai = src->object_index(a);
        if (!ai)
            throw error(errc::unknown_reference, "functor '" + d.name + "': unknown object '" +
                                                     a + "' in " + src->name);
        auto xi = tgt->object_index(x);
        if (!xi)
            throw error(errc::unknown_reference, "functor '" + d.name + "': unknown object '" +
                                                     x + "' in " + tgt->name);
        if (omap[*ai] != -1)
            throw error(errc::syntax_error,
                        "functor '" + d.name + "': object '" + a + "' mapped twice");
        omap[*ai] = *xi;
    }
    for (int o = 0; o < src->object_count(); ++o)
        if (omap[o] == -1)
            throw error(errc::invalid_functor, "functor '" + d.name + "': no image for object '" +
                                                   src->objects[o] + "'");
    std::vector<int> mmap(src->morphism_count(), -1);
    for (int o = 0; o < src->object_count(); ++o)
        mmap[src->identity(o)] = tgt->identity(omap[o]);
    for (const auto &[m, u] : d.mor_map) {
        auto mi = src->morphism_index(m);
        if (!mi)
            throw error(errc::unknown_reference, "functor '" + d.name + "': unknown morphism '" +
                                                     m + "' in " + src->name);
        auto ui = tgt->morphism_index(u);
        if (!ui)
            throw error(errc::unknown_reference, "functor '" + d.name + "': unknown morphism '" +
                                                     u + "' in " + tgt->name);
        if (src->is_identity(*mi)) {
            if (*ui != mmap[*mi])
                throw error(errc::invalid_functor,
                            "functor '" + d.name + "': identity '" + m + "' mapped to a non-identity");
            continue;
        }
        if (mmap[*mi] != -1)
            throw error(errc::syntax_error,
                        "functor '" + d.name + "': morphism '" + m + "' mapped twice");
        mmap[*mi] = *ui;
    }
    for (int m = 0; m < src->morphism_count(); ++m)
        if (mmap[m] == -1)
            throw error(errc::invalid_functor, "functor '" + d.name +
                                                   "': no image for morphism '" +
                                                   src->morphisms[m].name + "'");
    return make_functor(d.name, src, tgt, std::move(omap), std::move(mmap));
}

nat_trans elaborate_nattrans(const document &d, const doc_env &env) {
    functor src = env.functor_named(d.source);
    functor tgt = env.functor_named(d.target);
    if (!d.target_post.empty())
        tgt = compose_functor(tgt, env.functor_named(d.target_post));
    const fin_category &w = *src.source;
    const fin_category &x = *src.target;
    std::vector<int> comps(w.object_count(), -1);
    for (const auto &[wn, mn] : d.components) {
        auto wi = w.object_index(wn);
        if (!wi)
            throw error(errc::unknown_reference, "nattrans '" + d.name + "': unknown object '" +
                                                     wn + "' in " + w.name);
        auto mi = x.morphism_index(mn);
        if (!mi)
            throw error(errc::unknown_reference, "nattrans '" + d.name + "': unknown morphism '" +
                                                     mn + "' in " + x.name);
        if (comps[*wi] != -1)
            throw error(errc::syntax_error,
                        "nattrans '" + d.name + "': component at '" + wn + "' given twice");
        comps[*wi] = *mi;
    }
    for (int o = 0; o < w.object_count(); ++o)
        if (comps[o] == -1)
            throw error(errc::invalid_nat_trans, "nattrans '" + d.name +
                                                     "': no component at '" + w.objects[o] + "'");
    return make_nat_trans(d.name, std::move(src), std::move(tgt), std::move(comps));
}

} // namespace

std::vector<document> parse_documents(const std::string &text) {
    cursor cur{tokenize(text)};
    std::vector<document> docs;
    while (!cur.at_end()) {
        const token &t = cur.peek();
        if (t.text == "category") docs.push_back(parse_category(cur));
        else if (t.text == "poset") docs.push_back(parse_poset(cur));
        else if (t.text == "freeacyclic") docs.push_back(parse_freeacyclic(cur));
        else if (t.text == "functor") docs.push_back(parse_functor(cur));
        else if (t.text == "nattrans") docs.push_back(parse_nattrans(cur));
        else
            fail_at(t.line, t.col, errc::syntax_error,
                    "expected a document keyword, found '" + t.text + "'");
    }
    return docs;
}

cat_ptr doc_env::category(const std::string &name) const {
    auto it = categories.find(name);
    if (it == categories.end())
        throw error(errc::unknown_reference, "unknown category '" + name + "'");
    return it->second;
}

const functor &doc_env::functor_named(const std::string &name) const {
    auto it = functors.find(name);
    if (it == functors.end())
        throw error(errc::unknown_reference, "unknown functor '" + name + "'");
    return it->second;
}

const nat_trans &doc_env::transformation(const std::string &name) const {
    auto it = transformations.find(name);
    if (it == transformations.end())
        throw error(errc::unknown_reference, "unknown transformation '" + name + "'");
    return it->second;
}

doc_env elaborate(const std::vector<document> &docs, doc_env env) {
    auto bind = [&](const std::string &name, doc_env::entry_kind k) {
        if (env.categories.count(name) || env.functors.count(name) ||
            env.transformations.count(name))
            throw error(errc::duplicate_name, "document name '" + name + "' already bound");
        env.order.emplace_back(name, k);
    };
    for (const document &d : docs) {
        switch (d.k) {
        case document::kind::category:
            bind(d.name, doc_env::entry_kind::category);
            env.categories.emplace(d.name, elaborate_category(d));
            break;
        case document::kind::poset:
            bind(d.name, doc_env::entry_kind::category);
            env.categories.emplace(d.name, elaborate_poset(d));
            break;
        case document::kind::freeacyclic:
            bind(d.name, doc_env::entry_kind::category);
            env.categories.emplace(d.name, elaborate_freeacyclic(d));
            break;
        case document::kind::functor_map:
            bind(d.name, doc_env::entry_kind::functor_map);
            env.functors.emplace(d.name, elaborate_functor(d, env));
            break;
        case document::kind::nattrans:
            bind(d.name, doc_env::entry_kind::nattrans);
            env.transformations.emplace(d.name, elaborate_nattrans(d, env));
            break;
        }
    }
    return env;
}

doc_env elaborate(const std::vector<document> &docs) { return elaborate(docs, doc_env{}); }

doc_env read_workspace(const std::string &text) { return elaborate(parse_documents(text)); }

std::string serialize(const fin_category &c) {
    std::string out = "category " + c.name + " {";
    if (c.object_count() == 0) return out + " objects: ; }\n";
    out += "\n  objects:";
    for (const auto &o : c.objects) out += " " + o;
    out += " ;\n";
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m)) continue;
        out += "  mor " + c.morphisms[m].name + " : " + c.objects[c.dom(m)] + " -> " +
               c.objects[c.cod(m)] + " ;\n";
    }
    for (int g = 0; g < c.morphism_count(); ++g) {
        if (c.is_identity(g)) continue;
        for (int f = 0; f < c.morphism_count(); ++f) {
            if (c.is_identity(f) || c.cod(f) != c.dom(g)) continue;
            out += "  eq " + c.morphisms[g].name + " . " + c.morphisms[f].name + " = " +
                   c.morphisms[c.compose(g, f)].name + " ;\n";
        }
    }
    return out + "}\n";
}

std::string serialize(const functor &f) {
    std::string head =
        "functor " + f.name + " : " + f.source->name + " -> " + f.target->name + " {";
    std::string body;
    for (int o = 0; o < f.source->object_count(); ++o)
        body += "  obj " + f.source->objects[o] + " -> " + f.target->objects[f.ob(o)] + " ;\n";
    for (int m = 0; m < f.source->morphism_count(); ++m) {
        if (f.source->is_identity(m)) continue;
        body += "  mor " + f.source->morphisms[m].name + " -> " +
                f.target->morphisms[f.mor(m)].name + " ;\n";
    }
    if (body.empty()) return head + " }\n";
    return head + "\n" + body + "}\n";
}

std::string serialize_with_target(const nat_trans &t, const std::string &target_expr) {
    std::string head = "nattrans " + t.name + " : " + t.source.name + " => " + target_expr + " {";
    std::string body;
    const fin_category &w = *t.source.source;
    const fin_category &x = *t.source.target;
    for (int o = 0; o < w.object_count(); ++o)
        body += "  at " + w.objects[o] + " : " + x.morphisms[t.at(o)].name + " ;\n";
    if (body.empty()) return head + " }\n";
    return head + "\n" + body + "}\n";
}

std::string serialize(const nat_trans &t) { return serialize_with_target(t, t.target.name); }

} // namespace laxcat
