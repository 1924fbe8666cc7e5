#pragma once

// JSON input documents and category serialization.
//
//   {"field": "p:101" | "rational",                        (optional)
//    "group": {"elements": [...], "table": [[...], ...]},   names or indices
//    "category": {"objects": [...],
//                 "morphisms": [{"name", "src", "tgt", "degree"?}, ...],
//                 "identities": {obj: combo},
//                 "composition": [{"g", "f", "result": combo}, ...]},
//    "action": {"on_objects": {elem: {obj: obj}},
//               "on_morphisms": {elem: {mor: combo}}},       (optional)
//    "transversal": [obj, ...]}                               (optional)
//
// A combo is a morphism name, or {name: scalar} with scalars given as
// integers or strings "a/b". Unlisted composites are zero; unlisted
// action entries are the identity.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skewcat/error.hpp"
#include "skewcat/field.hpp"
#include "skewcat/group.hpp"
#include "skewcat/lincat.hpp"

namespace skewcat::io {

using json = nlohmann::ordered_json;

struct Term {
    std::string morphism;
    std::string coef;
};
using Combo = std::vector<Term>;

struct RawMorphism {
    std::string name, src, tgt;
    std::optional<std::string> degree;
};

struct RawComposite {
    std::string g, f;
    Combo result;
    std::string path;
};

struct Document {
    std::string source;
    std::optional<std::string> field;
    std::vector<std::string> elements;
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> objects;
    std::vector<RawMorphism> morphisms;
    std::vector<std::pair<std::string, Combo>> identities;
    std::vector<RawComposite> composition;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> on_objects;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, Combo>>>> on_morphisms;
    std::optional<std::vector<std::string>> transversal;
    bool has_action = false;
    bool has_degrees = false;
};

namespace detail {

class Reader {
  public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const
    {
        throw InputError(source_ + ": at " + (path.empty() ? "/" : path) + ": " + msg);
    }

    const json& field(const json& j, const std::string& path, const char* key) const
    {
        if (!j.is_object()) fail(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
        return *it;
    }

    std::string string(const json& j, const std::string& path) const
    {
        if (j.is_string()) return j.get<std::string>();
        fail(path, "expected a string");
    }

    /// Strings or integers (group table entries may be indices).
    std::string name_or_index(const json& j, const std::string& path, const std::vector<std::string>& names) const
    {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_unsigned() && j.get<std::uint64_t>() < names.size()) return names[j.get<std::size_t>()];
        fail(path, "expected an element name or index");
    }

    std::string scalar(const json& j, const std::string& path) const
    {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_integer()) return std::to_string(j.get<long long>());
        fail(path, "expected a scalar (integer or \"a/b\" string)");
    }

    Combo combo(const json& j, const std::string& path) const
    {
        Combo out;
        if (j.is_null()) return out;
        if (j.is_string()) {
            out.push_back({j.get<std::string>(), "1"});
            return out;
        }
        if (!j.is_object()) fail(path, "expected a morphism name or {name: scalar}");
        for (auto it = j.begin(); it != j.end(); ++it) out.push_back({it.key(), scalar(it.value(), path + "/" + it.key())});
        return out;
    }

    std::vector<std::string> string_list(const json& j, const std::string& path) const
    {
        if (!j.is_array()) fail(path, "expected an array");
        std::vector<std::string> out;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string(j[i], path + "/" + std::to_string(i)));
        return out;
    }

  private:
    std::string source_;
};

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace detail

inline Document parse_document(std::string_view text, const std::string& source = "<input>")
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
    }
    detail::Reader r(source);
    Document d;
    d.source = source;
    if (!j.is_object()) r.fail("", "document must be an object");

    if (auto it = j.find("field"); it != j.end()) d.field = r.string(*it, "/field");

    const json& g = r.field(j, "", "group");
    d.elements = r.string_list(r.field(g, "/group", "elements"), "/group/elements");
    const json& table = r.field(g, "/group", "table");
    if (!table.is_array()) r.fail("/group/table", "expected an array of rows");
    for (std::size_t a = 0; a < table.size(); ++a) {
        const std::string p = "/group/table/" + std::to_string(a);
        if (!table[a].is_array()) r.fail(p, "expected a row");
        d.table.emplace_back();
        for (std::size_t b = 0; b < table[a].size(); ++b)
            d.table.back().push_back(r.name_or_index(table[a][b], p + "/" + std::to_string(b), d.elements));
    }

    const json& c = r.field(j, "", "category");
    d.objects = r.string_list(r.field(c, "/category", "objects"), "/category/objects");
    const json& ms = r.field(c, "/category", "morphisms");
    if (!ms.is_array()) r.fail("/category/morphisms", "expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string p = "/category/morphisms/" + std::to_string(i);
        RawMorphism m{r.string(r.field(ms[i], p, "name"), p + "/name"), r.string(r.field(ms[i], p, "src"), p + "/src"),
                      r.string(r.field(ms[i], p, "tgt"), p + "/tgt"), std::nullopt};
        if (auto it = ms[i].find("degree"); it != ms[i].end()) {
            m.degree = r.string(*it, p + "/degree");
            d.has_degrees = true;
        }
        d.morphisms.push_back(std::move(m));
    }
    const json& ids = r.field(c, "/category", "identities");
    if (!ids.is_object()) r.fail("/category/identities", "expected an object");
    for (auto it = ids.begin(); it != ids.end(); ++it)
        d.identities.emplace_back(it.key(), r.combo(it.value(), "/category/identities/" + it.key()));
    if (auto it = c.find("composition"); it != c.end()) {
        if (!it->is_array()) r.fail("/category/composition", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string p = "/category/composition/" + std::to_string(i);
            const json& e = (*it)[i];
            d.composition.push_back({r.string(r.field(e, p, "g"), p + "/g"), r.string(r.field(e, p, "f"), p + "/f"),
                                     r.combo(r.field(e, p, "result"), p + "/result"), p});
        }
    }

    if (auto it = j.find("action"); it != j.end()) {
        d.has_action = true;
        const json& a = *it;
        if (!a.is_object()) r.fail("/action", "expected an object");
        if (auto oo = a.find("on_objects"); oo != a.end()) {
            if (!oo->is_object()) r.fail("/action/on_objects", "expected an object");
            for (auto s = oo->begin(); s != oo->end(); ++s) {
                const std::string p = "/action/on_objects/" + s.key();
                if (!s.value().is_object()) r.fail(p, "expected {object: object}");
                std::vector<std::pair<std::string, std::string>> perm;
                for (auto x = s.value().begin(); x != s.value().end(); ++x)
                    perm.emplace_back(x.key(), r.string(x.value(), p + "/" + x.key()));
                d.on_objects.emplace_back(s.key(), std::move(perm));
            }
        }
        if (auto om = a.find("on_morphisms"); om != a.end()) {
            if (!om->is_object()) r.fail("/action/on_morphisms", "expected an object");
            for (auto s = om->begin(); s != om->end(); ++s) {
                const std::string p = "/action/on_morphisms/" + s.key();
                if (!s.value().is_object()) r.fail(p, "expected {morphism: combo}");
                std::vector<std::pair<std::string, Combo>> images;
                for (auto f = s.value().begin(); f != s.value().end(); ++f)
                    images.emplace_back(f.key(), r.combo(f.value(), p + "/" + f.key()));
                d.on_morphisms.emplace_back(s.key(), std::move(images));
            }
        }
    }
    if (auto it = j.find("transversal"); it != j.end()) d.transversal = r.string_list(*it, "/transversal");
    return d;
}

inline Document load_document(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path.string());
}

/// Field selector: "rational", "p:<prime>" or a bare prime.
struct FieldSpec {
    bool rational = false;
    std::uint32_t prime = 101;

    std::string name() const { return rational ? "rational" : "p:" + std::to_string(prime); }
};

inline FieldSpec parse_field_spec(std::string_view s)
{
    if (s == "rational" || s == "Q") return {true, 0};
    std::string_view digits = s.starts_with("p:") ? s.substr(2) : s;
    std::uint64_t p = 0;
    if (digits.empty() || digits.size() > 10) throw InputError("bad field \"" + std::string(s) + "\"");
    for (char ch : digits) {
        if (ch < '0' || ch > '9') throw InputError("bad field \"" + std::string(s) + "\" (use rational or p:<prime>)");
        p = p * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    if (p >= (std::uint64_t(1) << 31) || !skewcat::detail::is_prime(static_cast<std::uint32_t>(p)))
        throw InputError("field modulus " + std::string(digits) + " is not a prime below 2^31");
    return {false, static_cast<std::uint32_t>(p)};
}

/// Group table in index form; axioms are not checked here.
inline std::vector<std::vector<std::size_t>> group_table_indices(const Document& d)
{
    auto index = [&](const std::string& n, std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < d.elements.size(); ++i)
            if (d.elements[i] == n) return i;
        throw InputError(d.source + ": at /group/table/" + std::to_string(a) + "/" + std::to_string(b) +
                         ": unknown element \"" + n + "\"");
    };
    std::vector<std::vector<std::size_t>> t;
    for (std::size_t a = 0; a < d.table.size(); ++a) {
        t.emplace_back();
        for (std::size_t b = 0; b < d.table[a].size(); ++b) t.back().push_back(index(d.table[a][b], a, b));
    }
    return t;
}

inline ValidationResult validate_document_group(const Document& d)
{
    return validate_group_table(d.elements, group_table_indices(d));
}

template <Field F>
struct Instance {
    FinGroup group;
    LinCat<F> cat;
    GActionOnCat<F> action;
    std::optional<GradedLinCat<F>> graded; // when the document gives degrees
    std::optional<std::vector<std::size_t>> transversal;
};

/// Builds the typed objects; throws AxiomViolation when the group table
/// is not a group (validate_document_group reports all failures).
template <Field F>
Instance<F> instantiate(const Document& d, const F& field)
{
    using Vec = typename LinCat<F>::Vec;
    auto fail = [&](const std::string& path, const std::string& msg) -> void {
        throw InputError(d.source + ": at " + path + ": " + msg);
    };
    FinGroup g = FinGroup::from_table(d.elements, group_table_indices(d));
    LinCat<F> c(field, d.objects);
    for (std::size_t i = 0; i < d.objects.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (d.objects[i] == d.objects[j]) fail("/category/objects/" + std::to_string(i), "duplicate object");

    auto object = [&](const std::string& n, const std::string& path) {
        auto x = c.find_object(n);
        if (!x) fail(path, "unknown object \"" + n + "\"");
        return *x;
    };
    auto morphism = [&](const std::string& n, const std::string& path) {
        auto m = c.find_morphism(n);
        if (!m) fail(path, "unknown morphism \"" + n + "\"");
        return *m;
    };
    auto element = [&](const std::string& n, const std::string& path) {
        auto s = g.find(n);
        if (!s) fail(path, "unknown group element \"" + n + "\"");
        return *s;
    };
    auto vec = [&](const Combo& combo, const std::string& path) {
        Vec v;
        for (const auto& t : combo) {
            try {
                v.push_back({morphism(t.morphism, path), field.parse(t.coef)});
            } catch (const InputError& e) {
                if (std::string(e.what()).starts_with(d.source)) throw;
                fail(path + "/" + t.morphism, e.what());
            }
        }
        normalize(v);
        return v;
    };
    auto guarded = [&](const std::string& path, auto&& body) {
        try {
            body();
        } catch (const InputError& e) {
            if (std::string(e.what()).starts_with(d.source)) throw;
            fail(path, e.what());
        }
    };

    for (std::size_t i = 0; i < d.morphisms.size(); ++i) {
        const auto& m = d.morphisms[i];
        const std::string p = "/category/morphisms/" + std::to_string(i);
        if (c.find_morphism(m.name)) fail(p + "/name", "duplicate morphism \"" + m.name + "\"");
        c.add_morphism(m.name, object(m.src, p + "/src"), object(m.tgt, p + "/tgt"));
    }
    for (const auto& [x, combo] : d.identities) {
        const std::string p = "/category/identities/" + x;
        const std::size_t xi = object(x, p);
        guarded(p, [&] { c.set_identity(xi, vec(combo, p)); });
    }
    for (std::size_t x = 0; x < c.num_objects(); ++x)
        if (c.identity(x).empty()) fail("/category/identities", "no identity for object \"" + d.objects[x] + "\"");
    for (const auto& comp : d.composition) {
        const std::size_t gm = morphism(comp.g, comp.path + "/g"), fm = morphism(comp.f, comp.path + "/f");
        guarded(comp.path, [&] { c.set_composite(gm, fm, vec(comp.result, comp.path + "/result")); });
    }

    auto a = GActionOnCat<F>::trivial(c, g);
    for (std::size_t s = 0; s < g.order(); ++s)
        for (std::size_t f = 0; f < c.num_morphisms(); ++f) a.mor[s][f] = c.basis_vector(f);
    for (const auto& [sn, perm] : d.on_objects) {
        const std::string p = "/action/on_objects/" + sn;
        const std::size_t s = element(sn, p);
        for (const auto& [x, y] : perm) a.objects.perm[s][object(x, p + "/" + x)] = object(y, p + "/" + x);
    }
    for (const auto& [sn, images] : d.on_morphisms) {
        const std::string p = "/action/on_morphisms/" + sn;
        const std::size_t s = element(sn, p);
        for (const auto& [f, combo] : images) a.mor[s][morphism(f, p + "/" + f)] = vec(combo, p + "/" + f);
    }

    Instance<F> out{g, c, std::move(a), std::nullopt, std::nullopt};
    if (d.has_degrees) {
        GradedLinCat<F> gr{c, g, {}};
        for (std::size_t i = 0; i < d.morphisms.size(); ++i)
            gr.degree.push_back(d.morphisms[i].degree
                                    ? element(*d.morphisms[i].degree, "/category/morphisms/" + std::to_string(i) + "/degree")
                                    : g.identity());
        out.graded = std::move(gr);
    }
    if (d.transversal) {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < d.transversal->size(); ++i)
            t.push_back(object((*d.transversal)[i], "/transversal/" + std::to_string(i)));
        out.transversal = std::move(t);
    }
    return out;
}

template <Field F>
json combo_json(const LinCat<F>& c, const typename LinCat<F>::Vec& v)
{
    json out = json::object();
    for (const auto& e : v) out[c.name(e.index)] = c.field().format(e.value);
    return out;
}

/// A category (with optional degrees and action) as an input document.
template <Field F>
json to_document(const FinGroup& g, const LinCat<F>& c, const std::vector<std::size_t>* degree = nullptr,
                 const GActionOnCat<F>* action = nullptr)
{
    json doc;
    doc["field"] = c.field().name();
    doc["group"]["elements"] = g.names();
    json table = json::array();
    for (std::size_t a = 0; a < g.order(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < g.order(); ++b) row.push_back(g.name(g.mul(a, b)));
        table.push_back(row);
    }
    doc["group"]["table"] = table;
    json& cat = doc["category"];
    cat["objects"] = c.objects();
    json ms = json::array();
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
        const auto& mm = c.morphism(m);
        json e{{"name", mm.name}, {"src", c.object_name(mm.src)}, {"tgt", c.object_name(mm.tgt)}};
        if (degree) e["degree"] = g.name((*degree)[m]);
        ms.push_back(e);
    }
    cat["morphisms"] = ms;
    json ids = json::object();
    for (std::size_t x = 0; x < c.num_objects(); ++x) ids[c.object_name(x)] = combo_json(c, c.identity(x));
    cat["identities"] = ids;
    json comp = json::array();
    for (std::size_t a = 0; a < c.num_morphisms(); ++a)
        for (std::size_t b = 0; b < c.num_morphisms(); ++b) {
            const auto& v = c.composite(a, b);
            if (!v.empty()) comp.push_back({{"g", c.name(a)}, {"f", c.name(b)}, {"result", combo_json(c, v)}});
        }
    cat["composition"] = comp;
    if (action) {
        json& act = doc["action"];
        act["on_objects"] = json::object();
        act["on_morphisms"] = json::object();
        for (std::size_t s = 0; s < g.order(); ++s) {
            if (s == g.identity()) continue;
            json objs = json::object(), mors = json::object();
            for (std::size_t x = 0; x < c.num_objects(); ++x)
                objs[c.object_name(x)] = c.object_name(action->act_object(s, x));
            for (std::size_t f = 0; f < c.num_morphisms(); ++f) mors[c.name(f)] = combo_json(c, action->mor[s][f]);
            act["on_objects"][g.name(s)] = objs;
            act["on_morphisms"][g.name(s)] = mors;
        }
    }
    return doc;
}

} // namespace skewcat::io
