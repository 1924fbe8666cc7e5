#pragma once

/**
 * Category-level constructions: the skew category C[G], the matrix
 * category M_G(C) with its functor L, the quotient C/G of a free action,
 * the transversal subcategory C_T[G] and skew applied to G-functors.
 */

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "skewcat/error.hpp"
#include "skewcat/group.hpp"
#include "skewcat/lincat.hpp"
#include "skewcat/linalg.hpp"

namespace skewcat {

/// C[G]. Its basis morphism [f]^s : s⁻¹·src(f) → tgt(f) has id s·|C_1| + f.
template <Field F>
struct SkewOutput {
    GradedLinCat<F> cat;
    std::vector<std::pair<std::size_t, std::size_t>> origin; // skew id → (f, s)
    std::size_t base_morphisms = 0;

    std::size_t id(std::size_t f, std::size_t s) const { return s * base_morphisms + f; }
};

template <Field F>
SkewOutput<F> skew(const LinCat<F>& c, const GActionOnCat<F>& a)
{
    const FinGroup& g = a.group;
    const std::size_t m = c.num_morphisms();
    SkewOutput<F> out{GradedLinCat<F>{LinCat<F>(c.field(), c.objects()), g, {}}, {}, m};
    auto& sk = out.cat.cat;
    for (std::size_t s = 0; s < g.order(); ++s)
        for (std::size_t f = 0; f < m; ++f) {
            const auto& mf = c.morphism(f);
            sk.add_morphism("[" + mf.name + "]^" + g.name(s), a.act_object(g.inv(s), mf.src), mf.tgt);
            out.cat.degree.push_back(s);
            out.origin.emplace_back(f, s);
        }
    // [h]^t ∘ [f]^s = [h ∘ t·f]^{ts}
    for (std::size_t t = 0; t < g.order(); ++t)
        for (std::size_t h = 0; h < m; ++h) {
            const std::size_t left = out.id(h, t);
            for (std::size_t s = 0; s < g.order(); ++s)
                for (std::size_t f = 0; f < m; ++f) {
                    const std::size_t right = out.id(f, s);
                    if (sk.morphism(left).src != sk.morphism(right).tgt) continue;
                    const auto prod = c.compose(c.basis_vector(h), a.mor[t][f]);
                    if (prod.empty()) continue;
                    const std::size_t ts = g.mul(t, s);
                    typename LinCat<F>::Vec v;
                    for (const auto& e : prod) v.push_back({out.id(e.index, ts), e.value});
                    sk.set_composite(left, right, std::move(v));
                }
        }
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
        typename LinCat<F>::Vec v;
        for (const auto& e : c.identity(x)) v.push_back({out.id(e.index, g.identity()), e.value});
        sk.set_identity(x, std::move(v));
    }
    return out;
}

/// K[G] for a G-functor K: C → D, sending [f]^s to [K f]^s.
template <Field F>
LinFunctor<F> skew_of_functor(const SkewOutput<F>& from, const SkewOutput<F>& to, const LinFunctor<F>& k)
{
    LinFunctor<F> out;
    out.obj_map = k.obj_map;
    out.mor_map.resize(from.cat.cat.num_morphisms());
    for (std::size_t i = 0; i < out.mor_map.size(); ++i) {
        const auto [f, s] = from.origin[i];
        for (const auto& e : k.mor_map[f]) out.mor_map[i].push_back({to.id(e.index, s), e.value});
    }
    out.fully_faithful = k.fully_faithful;
    out.dense = k.dense;
    return out;
}

/// M_G(C): object (s, x) has index s·|C_0| + x; the copy of f: x → y
/// from (s, x) to (t, y) has id (s·|G| + t)·|C_1| + f.
template <Field F>
struct MatrixCatOutput {
    LinCat<F> cat;
    GActionOnCat<F> action;
    LinFunctor<F> functor_L;
    std::size_t group_order = 0;
    std::size_t base_objects = 0;
    std::size_t base_morphisms = 0;

    std::size_t object(std::size_t s, std::size_t x) const { return s * base_objects + x; }
    std::size_t copy(std::size_t f, std::size_t s, std::size_t t) const
    {
        return (s * group_order + t) * base_morphisms + f;
    }
};

template <Field F>
MatrixCatOutput<F> matrix_category(const LinCat<F>& c, const GActionOnCat<F>& a)
{
    const FinGroup& g = a.group;
    const std::size_t n = c.num_objects(), m = c.num_morphisms(), order = g.order();
    std::vector<std::string> names;
    for (std::size_t s = 0; s < order; ++s)
        for (std::size_t x = 0; x < n; ++x) names.push_back("(" + g.name(s) + "," + c.object_name(x) + ")");
    MatrixCatOutput<F> out{LinCat<F>(c.field(), names), {g, {}, {}}, {}, order, n, m};
    auto& mg = out.cat;
    for (std::size_t s = 0; s < order; ++s)
        for (std::size_t t = 0; t < order; ++t)
            for (std::size_t f = 0; f < m; ++f) {
                const auto& mf = c.morphism(f);
                mg.add_morphism(mf.name + "@" + g.name(s) + "->" + g.name(t), out.object(s, mf.src),
                                out.object(t, mf.tgt));
            }
    for (std::size_t s = 0; s < order; ++s)
        for (std::size_t t = 0; t < order; ++t)
            for (std::size_t r = 0; r < order; ++r)
                for (std::size_t f = 0; f < m; ++f)
                    for (std::size_t h = 0; h < m; ++h) {
                        if (c.morphism(h).src != c.morphism(f).tgt) continue;
                        const auto& v = c.composite(h, f);
                        if (v.empty()) continue;
                        typename LinCat<F>::Vec w;
                        for (const auto& e : v) w.push_back({out.copy(e.index, s, r), e.value});
                        mg.set_composite(out.copy(h, t, r), out.copy(f, s, t), std::move(w));
                    }
    for (std::size_t s = 0; s < order; ++s)
        for (std::size_t x = 0; x < n; ++x) {
            typename LinCat<F>::Vec w;
            for (const auto& e : c.identity(x)) w.push_back({out.copy(e.index, s, s), e.value});
            mg.set_identity(out.object(s, x), std::move(w));
        }

    // r·(s,x) = (rs, rx), and r acts on the copy of f through r·f
    out.action.objects.set_size = n * order;
    out.action.objects.perm.assign(order, std::vector<std::size_t>(n * order));
    out.action.mor.assign(order, std::vector<typename LinCat<F>::Vec>(mg.num_morphisms()));
    for (std::size_t r = 0; r < order; ++r) {
        for (std::size_t s = 0; s < order; ++s)
            for (std::size_t x = 0; x < n; ++x)
                out.action.objects.perm[r][out.object(s, x)] = out.object(g.mul(r, s), a.act_object(r, x));
        for (std::size_t s = 0; s < order; ++s)
            for (std::size_t t = 0; t < order; ++t)
                for (std::size_t f = 0; f < m; ++f) {
                    typename LinCat<F>::Vec w;
                    for (const auto& e : a.mor[r][f]) w.push_back({out.copy(e.index, g.mul(r, s), g.mul(r, t)), e.value});
                    out.action.mor[r][out.copy(f, s, t)] = std::move(w);
                }
    }

    out.functor_L.obj_map.resize(n * order);
    for (std::size_t s = 0; s < order; ++s)
        for (std::size_t x = 0; x < n; ++x) out.functor_L.obj_map[out.object(s, x)] = x;
    out.functor_L.mor_map.resize(mg.num_morphisms());
    for (std::size_t s = 0; s < order; ++s)
        for (std::size_t t = 0; t < order; ++t)
            for (std::size_t f = 0; f < m; ++f) out.functor_L.mor_map[out.copy(f, s, t)] = c.basis_vector(f);
    out.functor_L.fully_faithful = is_fully_faithful(mg, c, out.functor_L);
    out.functor_L.dense = check_dense(c, out.functor_L, {});
    return out;
}

/// C/G for a free action. Object α is the orbit of u_α ∈ T. The basis of
/// hom(α, β) is the set of basis morphisms f: s·u_α → u_β of C (the
/// coinvariant class of f, normalised to have target in T), of degree s.
template <Field F>
struct QuotientOutput {
    GradedLinCat<F> cat;
    std::vector<std::size_t> representative; // quotient id → morphism of C
};

template <Field F>
QuotientOutput<F> quotient_category(const LinCat<F>& c, const GActionOnCat<F>& a, const Transversal& t)
{
    using Vec = typename LinCat<F>::Vec;
    const FinGroup& g = a.group;
    if (!t.free) throw NonFreeAction("quotient category needs a free action on objects");
    const std::size_t orbits = t.reps.size();
    std::vector<std::string> names;
    for (std::size_t u : t.reps) names.push_back("[" + c.object_name(u) + "]");
    QuotientOutput<F> out{GradedLinCat<F>{LinCat<F>(c.field(), names), g, {}}, {}};
    auto& q = out.cat.cat;

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> qid(c.num_morphisms(), none);
    for (std::size_t al = 0; al < orbits; ++al)
        for (std::size_t be = 0; be < orbits; ++be)
            for (std::size_t s = 0; s < g.order(); ++s) {
                const std::size_t x = a.act_object(s, t.reps[al]);
                for (std::size_t f : c.hom(x, t.reps[be])) {
                    qid[f] = q.add_morphism("[" + c.name(f) + "]_G", al, be);
                    out.cat.degree.push_back(s);
                    out.representative.push_back(f);
                }
            }

    // the class of v: move it along r with r·tgt = u, then read off ids
    auto normal_form = [&](const Vec& v) {
        Vec out_v;
        for (const auto& e : v) {
            const std::size_t y = c.morphism(e.index).tgt;
            const std::size_t r = g.inv(t.witness[y]);
            for (const auto& i : a.mor[r][e.index]) {
                if (qid[i.index] == none) throw InternalCheckFailed("normal form left the transversal");
                out_v.push_back({qid[i.index], i.value * e.value});
            }
        }
        normalize(out_v);
        return out_v;
    };

    // g∘f := g ∘ (s·f) with s the unique element taking tgt f to src g
    for (std::size_t i = 0; i < q.num_morphisms(); ++i)
        for (std::size_t j = 0; j < q.num_morphisms(); ++j) {
            if (q.morphism(i).src != q.morphism(j).tgt) continue;
            const std::size_t gm = out.representative[i], fm = out.representative[j];
            const std::size_t y = c.morphism(fm).tgt, y2 = c.morphism(gm).src;
            const std::size_t s = g.mul(t.witness[y2], g.inv(t.witness[y]));
            const Vec v = c.compose(c.basis_vector(gm), a.mor[s][fm]);
            if (!v.empty()) q.set_composite(i, j, normal_form(v));
        }
    for (std::size_t al = 0; al < orbits; ++al) q.set_identity(al, normal_form(c.identity(t.reps[al])));

    // the normalised basis must span the coinvariants (⊕ hom(x,y))_G
    for (std::size_t al = 0; al < orbits; ++al)
        for (std::size_t be = 0; be < orbits; ++be) {
            std::vector<std::size_t> ambient;
            for (std::size_t f = 0; f < c.num_morphisms(); ++f)
                if (t.orbit[c.morphism(f).src] == al && t.orbit[c.morphism(f).tgt] == be) ambient.push_back(f);
            std::vector<std::size_t> pos(c.num_morphisms(), none);
            for (std::size_t k = 0; k < ambient.size(); ++k) pos[ambient[k]] = k;
            std::vector<Vec> rel;
            for (std::size_t s = 0; s < g.order(); ++s)
                for (std::size_t f : ambient) {
                    Vec r;
                    for (const auto& e : a.mor[s][f]) r.push_back({pos[e.index], e.value});
                    r.push_back({pos[f], -c.field().one()});
                    normalize(r);
                    rel.push_back(std::move(r));
                }
            const std::size_t dim = quotient_dim<typename F::element_type>(ambient.size(), rel);
            if (dim != q.hom(al, be).size())
                throw InternalCheckFailed("quotient hom(" + names[al] + "," + names[be] + ") has dimension " +
                                          std::to_string(q.hom(al, be).size()) + " but the coinvariants have " +
                                          std::to_string(dim));
        }
    return out;
}

/// Full subcategory of C[G] on T, with its inclusion.
template <Field F>
struct TransversalSub {
    GradedLinCat<F> cat;
    LinFunctor<F> inclusion;
    std::vector<std::size_t> objects;   // sub object → object of C
    std::vector<std::size_t> to_skew;   // sub morphism → skew morphism
    std::vector<std::size_t> from_skew; // skew morphism → sub morphism or npos
    std::vector<IsoWitness<F>> witnesses;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

template <Field F>
TransversalSub<F> transversal_subcategory(const LinCat<F>& c, const GActionOnCat<F>& a, const SkewOutput<F>& sk,
                                          const Transversal& t)
{
    using Vec = typename LinCat<F>::Vec;
    const auto& full = sk.cat.cat;
    const FinGroup& g = a.group;
    if (t.orbit.size() != c.num_objects()) throw InputError("transversal does not match the category");
    std::vector<std::string> names;
    std::vector<std::size_t> sub_of(c.num_objects(), TransversalSub<F>::npos);
    for (std::size_t i = 0; i < t.reps.size(); ++i) {
        names.push_back(c.object_name(t.reps[i]));
        sub_of[t.reps[i]] = i;
    }
    TransversalSub<F> out{GradedLinCat<F>{LinCat<F>(c.field(), names), g, {}}, {}, t.reps, {}, {}, {}};
    auto& sub = out.cat.cat;
    out.from_skew.assign(full.num_morphisms(), TransversalSub<F>::npos);
    for (std::size_t m = 0; m < full.num_morphisms(); ++m) {
        const auto& mm = full.morphism(m);
        if (sub_of[mm.src] == TransversalSub<F>::npos || sub_of[mm.tgt] == TransversalSub<F>::npos) continue;
        out.from_skew[m] = sub.add_morphism(mm.name, sub_of[mm.src], sub_of[mm.tgt]);
        out.to_skew.push_back(m);
        out.cat.degree.push_back(sk.cat.degree[m]);
    }
    auto restrict = [&](const Vec& v) {
        Vec w;
        for (const auto& e : v) w.push_back({out.from_skew[e.index], e.value});
        return w;
    };
    for (std::size_t i = 0; i < sub.num_morphisms(); ++i)
        for (std::size_t j = 0; j < sub.num_morphisms(); ++j) {
            if (sub.morphism(i).src != sub.morphism(j).tgt) continue;
            const auto& v = full.composite(out.to_skew[i], out.to_skew[j]);
            if (!v.empty()) sub.set_composite(i, j, restrict(v));
        }
    for (std::size_t i = 0; i < t.reps.size(); ++i) sub.set_identity(i, restrict(full.identity(t.reps[i])));

    out.inclusion.obj_map = t.reps;
    for (std::size_t i = 0; i < sub.num_morphisms(); ++i) out.inclusion.mor_map.push_back(full.basis_vector(out.to_skew[i]));

    // y = r·u is isomorphic to u in C[G]: a = [id_y]^r : u → y, b = [id_u]^{r⁻¹} : y → u
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
        const std::size_t u = t.rep_of(y), r = t.witness[y];
        IsoWitness<F> w{sub_of[u], y, {}, {}};
        for (const auto& e : c.identity(y)) w.a.push_back({sk.id(e.index, r), e.value});
        for (const auto& e : c.identity(u)) w.b.push_back({sk.id(e.index, g.inv(r)), e.value});
        normalize(w.a);
        normalize(w.b);
        out.witnesses.push_back(std::move(w));
    }
    out.inclusion.fully_faithful = is_fully_faithful(sub, full, out.inclusion);
    out.inclusion.dense = check_dense(full, out.inclusion, out.witnesses);
    return out;
}

/// Checks that C/G and C_T[G] agree under [f]_G ↔ [f]^s: same objects,
/// same degrees, same structure constants and identities. Returns a
/// description of the first mismatch, empty when isomorphic.
template <Field F>
std::string compare_quotient_transversal(const QuotientOutput<F>& q, const TransversalSub<F>& sub,
                                         const SkewOutput<F>& sk)
{
    using Vec = typename LinCat<F>::Vec;
    const auto& qc = q.cat.cat;
    const auto& tc = sub.cat.cat;
    if (qc.num_objects() != tc.num_objects()) return "object counts differ";
    if (qc.num_morphisms() != tc.num_morphisms()) return "morphism counts differ";
    std::vector<std::size_t> to_sub(qc.num_morphisms());
    for (std::size_t i = 0; i < qc.num_morphisms(); ++i) {
        const std::size_t f = q.representative[i], s = q.cat.degree[i];
        const std::size_t j = sub.from_skew[sk.id(f, s)];
        if (j == TransversalSub<F>::npos) return "no counterpart for " + qc.name(i);
        if (qc.morphism(i).src != tc.morphism(j).src || qc.morphism(i).tgt != tc.morphism(j).tgt)
            return "endpoints differ at " + qc.name(i);
        if (sub.cat.degree[j] != s) return "degrees differ at " + qc.name(i);
        to_sub[i] = j;
    }
    auto map = [&](const Vec& v) {
        Vec w;
        for (const auto& e : v) w.push_back({to_sub[e.index], e.value});
        normalize(w);
        return w;
    };
    for (std::size_t i = 0; i < qc.num_morphisms(); ++i)
        for (std::size_t j = 0; j < qc.num_morphisms(); ++j) {
            if (qc.morphism(i).src != qc.morphism(j).tgt) continue;
            if (map(qc.composite(i, j)) != tc.composite(to_sub[i], to_sub[j]))
                return "composite " + qc.name(i) + "∘" + qc.name(j) + " differs";
        }
    for (std::size_t x = 0; x < qc.num_objects(); ++x)
        if (map(qc.identity(x)) != tc.identity(x)) return "identity of " + qc.object_name(x) + " differs";
    return {};
}

} // namespace skewcat
