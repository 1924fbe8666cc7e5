#pragma once

/**
 * Finite k-linear categories given by a basis of morphisms and structure
 * constants, group actions on them, gradings and linear functors.
 *
 * Morphisms carry global ids; a morphism vector is a sparse vector over
 * these ids. Composition g∘f of basis morphisms is stored for composable
 * pairs only, missing entries mean zero.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skewcat/error.hpp"
#include "skewcat/field.hpp"
#include "skewcat/group.hpp"
#include "skewcat/linalg.hpp"

namespace skewcat {

struct Morphism {
    std::string name;
    std::size_t src;
    std::size_t tgt;
};

template <Field F>
class LinCat {
  public:
    using K = typename F::element_type;
    using Vec = SparseVec<K>;

    LinCat() = default;
    LinCat(F field, std::vector<std::string> objects)
        : field_(std::move(field)), objects_(std::move(objects)),
          hom_(objects_.size() * objects_.size()), identity_(objects_.size())
    {
    }

    const F& field() const noexcept { return field_; }
    std::size_t num_objects() const noexcept { return objects_.size(); }
    std::size_t num_morphisms() const noexcept { return morphisms_.size(); }
    const std::string& object_name(std::size_t x) const { return objects_.at(x); }
    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const Morphism& morphism(std::size_t m) const { return morphisms_.at(m); }
    const std::vector<Morphism>& morphisms() const noexcept { return morphisms_; }

    /// Basis of hom(x, y), i.e. morphisms x → y, in insertion order.
    const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const { return hom_[x * objects_.size() + y]; }
    /// Position of m inside hom(src m, tgt m).
    std::size_t local_index(std::size_t m) const { return local_.at(m); }

    std::size_t add_morphism(std::string name, std::size_t src, std::size_t tgt)
    {
        if (src >= objects_.size() || tgt >= objects_.size())
            throw InputError("morphism " + name + " has an unknown endpoint");
        if (by_name_.count(name)) throw InputError("duplicate morphism name " + name);
        const std::size_t id = morphisms_.size();
        by_name_.emplace(name, id);
        morphisms_.push_back({std::move(name), src, tgt});
        auto& h = hom_[src * objects_.size() + tgt];
        local_.push_back(h.size());
        h.push_back(id);
        if (!comp_.empty()) {
            std::vector<Vec> grown((id + 1) * (id + 1));
            for (std::size_t g = 0; g < id; ++g)
                for (std::size_t f = 0; f < id; ++f) grown[g * (id + 1) + f] = std::move(comp_[g * id + f]);
            comp_ = std::move(grown);
        }
        return id;
    }

    /// Sets g∘f for basis morphisms with src(g) = tgt(f).
    void set_composite(std::size_t g, std::size_t f, Vec value)
    {
        if (morphisms_.at(g).src != morphisms_.at(f).tgt)
            throw InputError("composite " + name(g) + "∘" + name(f) + " of non-composable morphisms");
        normalize(value);
        const std::size_t from = morphisms_[f].src, to = morphisms_[g].tgt;
        for (const auto& e : value)
            if (e.index >= morphisms_.size() || morphisms_[e.index].src != from || morphisms_[e.index].tgt != to)
                throw InputError("composite " + name(g) + "∘" + name(f) + " leaves its hom-space");
        if (comp_.empty()) comp_.resize(morphisms_.size() * morphisms_.size());
        comp_[g * morphisms_.size() + f] = std::move(value);
    }

    void set_identity(std::size_t x, Vec value)
    {
        normalize(value);
        for (const auto& e : value)
            if (e.index >= morphisms_.size() || morphisms_[e.index].src != x || morphisms_[e.index].tgt != x)
                throw InputError("identity of " + objects_.at(x) + " is not an endomorphism of it");
        identity_.at(x) = std::move(value);
    }

    const Vec& identity(std::size_t x) const { return identity_.at(x); }

    /// Stored g∘f of basis morphisms; empty when zero or not composable.
    const Vec& composite(std::size_t g, std::size_t f) const
    {
        static const Vec empty;
        if (comp_.empty()) return empty;
        return comp_[g * morphisms_.size() + f];
    }

    /// Bilinear extension. Non-composable basis pairs contribute zero.
    Vec compose(const Vec& g, const Vec& f) const
    {
        Vec out;
        for (const auto& eg : g)
            for (const auto& ef : f) {
                if (morphisms_[eg.index].src != morphisms_[ef.index].tgt) continue;
                const K c = eg.value * ef.value;
                for (const auto& e : composite(eg.index, ef.index)) out.push_back({e.index, c * e.value});
            }
        normalize(out);
        return out;
    }

    Vec basis_vector(std::size_t m) const { return Vec{{m, field_.one()}}; }

    std::optional<std::size_t> find_object(const std::string& n) const
    {
        for (std::size_t i = 0; i < objects_.size(); ++i)
            if (objects_[i] == n) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> find_morphism(const std::string& n) const
    {
        auto it = by_name_.find(n);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(std::size_t m) const { return morphisms_.at(m).name; }

    /// Sum of all hom dimensions.
    std::size_t total_dim() const noexcept { return morphisms_.size(); }

    /// "2·a - b" style rendering for witnesses.
    std::string format(const Vec& v) const
    {
        if (v.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += " + ";
            const std::string c = field_.format(v[i].value);
            if (c != "1") s += c + "·";
            s += name(v[i].index);
        }
        return s;
    }

  private:
    F field_{};
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<std::size_t> local_;
    std::vector<std::vector<std::size_t>> hom_;
    std::vector<Vec> comp_;
    std::vector<Vec> identity_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

/// Associativity on composable basis triples and both identity laws.
template <Field F>
ValidationResult validate_category(const LinCat<F>& c)
{
    using Vec = typename LinCat<F>::Vec;
    ValidationResult res;
    const std::size_t n = c.num_objects();
    for (std::size_t x = 0; x < n; ++x) {
        const Vec& id = c.identity(x);
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t f : c.hom(x, y)) {
                const Vec fv = c.basis_vector(f);
                if (c.compose(c.identity(y), fv) != fv) {
                    res.add("identity law", "id_" + c.object_name(y) + "∘" + c.name(f) + " = " +
                                                c.format(c.compose(c.identity(y), fv)));
                    return res;
                }
                if (c.compose(fv, id) != fv) {
                    res.add("identity law", c.name(f) + "∘id_" + c.object_name(x) + " = " + c.format(c.compose(fv, id)));
                    return res;
                }
            }
        }
    }
    for (std::size_t f = 0; f < c.num_morphisms(); ++f)
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            if (c.morphism(g).src != c.morphism(f).tgt) continue;
            const Vec gf = c.composite(g, f);
            for (std::size_t h = 0; h < c.num_morphisms(); ++h) {
                if (c.morphism(h).src != c.morphism(g).tgt) continue;
                const Vec left = c.compose(c.composite(h, g), c.basis_vector(f));
                const Vec right = c.compose(c.basis_vector(h), gf);
                if (left != right) {
                    res.add("associativity", "(" + c.name(h) + "," + c.name(g) + "," + c.name(f) + "): " +
                                                 c.format(left) + " != " + c.format(right));
                    return res;
                }
            }
        }
    return res;
}

/// Action of a finite group: a permutation of objects plus, for every
/// element s and basis morphism f: x → y, the image s·f in hom(sx, sy).
template <Field F>
struct GActionOnCat {
    using Vec = SparseVec<typename F::element_type>;

    FinGroup group;
    GSetAction objects;
    std::vector<std::vector<Vec>> mor; // mor[s][f]

    std::size_t act_object(std::size_t s, std::size_t x) const { return objects.apply(s, x); }

    Vec act(std::size_t s, const Vec& v) const
    {
        Vec out;
        for (const auto& e : v)
            for (const auto& i : mor[s][e.index]) out.push_back({i.index, i.value * e.value});
        normalize(out);
        return out;
    }

    static GActionOnCat trivial(const LinCat<F>& c, FinGroup g)
    {
        GActionOnCat a{std::move(g), {}, {}};
        a.objects = GSetAction::trivial(a.group, c.num_objects());
        a.mor.assign(a.group.order(), std::vector<Vec>(c.num_morphisms()));
        for (auto& row : a.mor)
            for (std::size_t f = 0; f < c.num_morphisms(); ++f) row[f] = c.basis_vector(f);
        return a;
    }
};

template <Field F>
ValidationResult validate_action(const LinCat<F>& c, const GActionOnCat<F>& a)
{
    using Vec = typename LinCat<F>::Vec;
    ValidationResult res = validate_gset(a.group, a.objects, &c.objects());
    if (!res.ok()) return res;
    const FinGroup& g = a.group;
    if (a.objects.set_size != c.num_objects() || a.mor.size() != g.order()) {
        res.add("action shape", "action does not match the category");
        return res;
    }
    for (std::size_t s = 0; s < g.order(); ++s) {
        if (a.mor[s].size() != c.num_morphisms()) {
            res.add("action shape", "morphism images of " + g.name(s) + " incomplete");
            return res;
        }
        for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
            const auto& m = c.morphism(f);
            const std::size_t sx = a.act_object(s, m.src), sy = a.act_object(s, m.tgt);
            for (const auto& e : a.mor[s][f])
                if (c.morphism(e.index).src != sx || c.morphism(e.index).tgt != sy) {
                    res.add("hom-space mapping", g.name(s) + "·" + c.name(f) + " = " + c.format(a.mor[s][f]) +
                                                     " is not in hom(" + c.object_name(sx) + "," + c.object_name(sy) + ")");
                    return res;
                }
        }
    }
    for (std::size_t f = 0; f < c.num_morphisms(); ++f)
        if (a.mor[g.identity()][f] != c.basis_vector(f)) {
            res.add("identity acts trivially", g.name(g.identity()) + "·" + c.name(f) + " = " +
                                                   c.format(a.mor[g.identity()][f]));
            return res;
        }
    for (std::size_t s = 0; s < g.order(); ++s)
        for (std::size_t x = 0; x < c.num_objects(); ++x) {
            const Vec img = a.act(s, c.identity(x));
            if (img != c.identity(a.act_object(s, x))) {
                res.add("s(id_x) = id_sx", "s=" + g.name(s) + ", x=" + c.object_name(x) + ": " + c.format(img));
                return res;
            }
        }
    for (std::size_t t = 0; t < g.order(); ++t)
        for (std::size_t s = 0; s < g.order(); ++s)
            for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
                if (a.act(t, a.mor[s][f]) != a.mor[g.mul(t, s)][f]) {
                    res.add("t(sf) = (ts)f", "t=" + g.name(t) + ", s=" + g.name(s) + ", f=" + c.name(f));
                    return res;
                }
            }
    for (std::size_t s = 0; s < g.order(); ++s)
        for (std::size_t f = 0; f < c.num_morphisms(); ++f)
            for (std::size_t h = 0; h < c.num_morphisms(); ++h) {
                if (c.morphism(h).src != c.morphism(f).tgt) continue;
                const Vec lhs = a.act(s, c.composite(h, f));
                const Vec rhs = c.compose(a.mor[s][h], a.mor[s][f]);
                if (lhs != rhs) {
                    res.add("s(g∘f) = (sg)∘(sf)", "s=" + g.name(s) + ", g=" + c.name(h) + ", f=" + c.name(f));
                    return res;
                }
            }
    return res;
}

/// A category whose basis morphisms are homogeneous of the given degrees.
template <Field F>
struct GradedLinCat {
    LinCat<F> cat;
    FinGroup group;
    std::vector<std::size_t> degree; // per basis morphism

    static GradedLinCat trivially(LinCat<F> c, FinGroup g)
    {
        GradedLinCat out{std::move(c), std::move(g), {}};
        out.degree.assign(out.cat.num_morphisms(), out.group.identity());
        return out;
    }
};

template <Field F>
ValidationResult validate_grading(const GradedLinCat<F>& b)
{
    ValidationResult res;
    const auto& c = b.cat;
    const auto& g = b.group;
    if (b.degree.size() != c.num_morphisms()) {
        res.add("grading shape", "degree list does not cover every morphism");
        return res;
    }
    for (std::size_t x = 0; x < c.num_objects(); ++x)
        for (const auto& e : c.identity(x))
            if (b.degree[e.index] != g.identity()) {
                res.add("identity in degree 1", "id_" + c.object_name(x) + " involves " + c.name(e.index) + " of degree " +
                                                    g.name(b.degree[e.index]));
                return res;
            }
    for (std::size_t h = 0; h < c.num_morphisms(); ++h)
        for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
            if (c.morphism(h).src != c.morphism(f).tgt) continue;
            const std::size_t want = g.mul(b.degree[h], b.degree[f]);
            for (const auto& e : c.composite(h, f))
                if (b.degree[e.index] != want) {
                    res.add("degree leak", c.name(h) + "∘" + c.name(f) + " involves " + c.name(e.index) + " of degree " +
                                               g.name(b.degree[e.index]) + ", expected " + g.name(want));
                    return res;
                }
        }
    return res;
}

/// A k-linear functor given on objects and basis morphisms.
template <Field F>
struct LinFunctor {
    using Vec = SparseVec<typename F::element_type>;

    std::vector<std::size_t> obj_map;
    std::vector<Vec> mor_map; // image of each basis morphism of the source
    bool fully_faithful = false;
    bool dense = false;

    Vec apply(const Vec& v) const
    {
        Vec out;
        for (const auto& e : v)
            for (const auto& i : mor_map[e.index]) out.push_back({i.index, i.value * e.value});
        normalize(out);
        return out;
    }
};

/// Matrix of F on hom_C(x, y) in local coordinates of hom_D(Fx, Fy).
template <Field F>
Matrix<typename F::element_type> hom_matrix(const LinCat<F>& c, const LinCat<F>& d, const LinFunctor<F>& fn,
                                            std::size_t x, std::size_t y)
{
    using K = typename F::element_type;
    const auto& src = c.hom(x, y);
    std::vector<SparseVec<K>> cols;
    for (std::size_t f : src) {
        SparseVec<K> col;
        for (const auto& e : fn.mor_map[f]) col.push_back({d.local_index(e.index), e.value});
        cols.push_back(std::move(col));
    }
    return Matrix<K>::from_columns(d.hom(fn.obj_map[x], fn.obj_map[y]).size(), std::move(cols));
}

/// Images in the right hom-spaces, identities and composition preserved.
template <Field F>
ValidationResult validate_functor(const LinCat<F>& c, const LinCat<F>& d, const LinFunctor<F>& fn)
{
    ValidationResult res;
    if (fn.obj_map.size() != c.num_objects() || fn.mor_map.size() != c.num_morphisms()) {
        res.add("functor shape", "object or morphism map incomplete");
        return res;
    }
    for (std::size_t x : fn.obj_map)
        if (x >= d.num_objects()) {
            res.add("functor shape", "object image out of range");
            return res;
        }
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
        const auto& m = c.morphism(f);
        for (const auto& e : fn.mor_map[f])
            if (e.index >= d.num_morphisms() || d.morphism(e.index).src != fn.obj_map[m.src] ||
                d.morphism(e.index).tgt != fn.obj_map[m.tgt]) {
                res.add("functor hom mapping", "F(" + c.name(f) + ") leaves hom(F" + c.object_name(m.src) + ",F" +
                                                   c.object_name(m.tgt) + ")");
                return res;
            }
    }
    for (std::size_t x = 0; x < c.num_objects(); ++x)
        if (fn.apply(c.identity(x)) != d.identity(fn.obj_map[x])) {
            res.add("F(id) = id", "object " + c.object_name(x));
            return res;
        }
    for (std::size_t f = 0; f < c.num_morphisms(); ++f)
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            if (c.morphism(g).src != c.morphism(f).tgt) continue;
            if (fn.apply(c.composite(g, f)) != d.compose(fn.mor_map[g], fn.mor_map[f])) {
                res.add("F(g∘f) = F(g)∘F(f)", "g=" + c.name(g) + ", f=" + c.name(f));
                return res;
            }
        }
    return res;
}

/// Every hom matrix square and invertible.
template <Field F>
bool is_fully_faithful(const LinCat<F>& c, const LinCat<F>& d, const LinFunctor<F>& fn)
{
    for (std::size_t x = 0; x < c.num_objects(); ++x)
        for (std::size_t y = 0; y < c.num_objects(); ++y) {
            auto m = hom_matrix(c, d, fn, x, y);
            if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
        }
    return true;
}

/// An isomorphism F(x) ≅ y in D: a: F(x) → y, b: y → F(x).
template <Field F>
struct IsoWitness {
    std::size_t source_object;
    std::size_t target_object;
    SparseVec<typename F::element_type> a;
    SparseVec<typename F::element_type> b;
};

/// Dense: each object of D is F(x) for some x, or is covered by a
/// witness whose a, b are mutually inverse.
template <Field F>
bool check_dense(const LinCat<F>& d, const LinFunctor<F>& fn, const std::vector<IsoWitness<F>>& witnesses)
{
    std::vector<char> hit(d.num_objects(), 0);
    for (std::size_t y : fn.obj_map) hit[y] = 1;
    for (const auto& w : witnesses) {
        const std::size_t fx = fn.obj_map.at(w.source_object);
        if (d.compose(w.a, w.b) == d.identity(w.target_object) && d.compose(w.b, w.a) == d.identity(fx))
            hit[w.target_object] = 1;
    }
    for (char h : hit)
        if (!h) return false;
    return true;
}

/// One object whose endomorphisms are all basis morphisms of c; products
/// of non-composable pairs vanish and the unit is the sum of identities.
template <Field F>
LinCat<F> algebra_of(const LinCat<F>& c)
{
    LinCat<F> a(c.field(), {"*"});
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) a.add_morphism(c.name(m), 0, 0);
    for (std::size_t g = 0; g < c.num_morphisms(); ++g)
        for (std::size_t f = 0; f < c.num_morphisms(); ++f)
            if (c.morphism(g).src == c.morphism(f).tgt && !c.composite(g, f).empty())
                a.set_composite(g, f, c.composite(g, f));
    SparseVec<typename F::element_type> unit;
    for (std::size_t x = 0; x < c.num_objects(); ++x)
        unit.insert(unit.end(), c.identity(x).begin(), c.identity(x).end());
    a.set_identity(0, std::move(unit));
    return a;
}

} // namespace skewcat
