#pragma once

/**
 * Finite groups given by multiplication tables, conjugacy classes, and
 * finite G-sets with their orbits and transversals.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skewcat/error.hpp"

namespace skewcat {

struct Violation {
    std::string axiom;
    std::string witness;
};

/// Empty means every axiom held.
struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    void add(std::string axiom, std::string witness) { violations.push_back({std::move(axiom), std::move(witness)}); }
    void merge(const ValidationResult& other)
    {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
    /// Throws AxiomViolation for the first violation.
    void raise() const
    {
        if (!ok()) throw AxiomViolation(violations.front().axiom, violations.front().witness);
    }
};

/// Checks the group axioms on a raw table: square shape, Latin square,
/// existence of an identity, inverses, associativity (all triples).
/// Each failed axiom is reported once, with its first witness.
inline ValidationResult validate_group_table(const std::vector<std::string>& names,
                                             const std::vector<std::vector<std::size_t>>& table)
{
    ValidationResult res;
    const std::size_t m = names.size();
    if (m == 0) {
        res.add("nonempty", "group has no elements");
        return res;
    }
    if (table.size() != m) {
        res.add("shape", "table has " + std::to_string(table.size()) + " rows for " + std::to_string(m) + " elements");
        return res;
    }
    for (std::size_t a = 0; a < m; ++a) {
        if (table[a].size() != m) {
            res.add("shape", "row " + names[a] + " has " + std::to_string(table[a].size()) + " entries");
            return res;
        }
        for (std::size_t b = 0; b < m; ++b)
            if (table[a][b] >= m) {
                res.add("closure", names[a] + "*" + names[b] + " = index " + std::to_string(table[a][b]));
                return res;
            }
    }
    auto label = [&](std::size_t i) { return names[i]; };

    bool latin = true;
    for (std::size_t a = 0; a < m && latin; ++a) {
        std::vector<char> row(m, 0), col(m, 0);
        for (std::size_t b = 0; b < m; ++b) {
            if (row[table[a][b]]++) {
                res.add("latin square", "row " + label(a) + " repeats " + label(table[a][b]));
                latin = false;
                break;
            }
            if (col[table[b][a]]++) {
                res.add("latin square", "column " + label(a) + " repeats " + label(table[b][a]));
                latin = false;
                break;
            }
        }
    }

    std::optional<std::size_t> e;
    for (std::size_t c = 0; c < m && !e; ++c) {
        bool ok = true;
        for (std::size_t a = 0; a < m && ok; ++a) ok = table[c][a] == a && table[a][c] == a;
        if (ok) e = c;
    }
    if (!e) {
        res.add("identity", "no two-sided identity element");
    } else {
        for (std::size_t a = 0; a < m; ++a) {
            bool found = false;
            for (std::size_t b = 0; b < m && !found; ++b) found = table[a][b] == *e && table[b][a] == *e;
            if (!found) {
                res.add("inverse", label(a) + " has no two-sided inverse");
                break;
            }
        }
    }

    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) {
                    res.add("associativity", "(" + label(a) + "," + label(b) + "," + label(c) + ")");
                    return res;
                }
    return res;
}

/// A validated finite group.
class FinGroup {
  public:
    /// Validates the table; throws AxiomViolation on the first failed axiom.
    static FinGroup from_table(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
    {
        validate_group_table(names, table).raise();
        FinGroup g;
        g.names_ = std::move(names);
        g.table_ = std::move(table);
        const std::size_t m = g.names_.size();
        for (std::size_t c = 0; c < m; ++c)
            if (g.table_[c][0] == 0 && g.table_[0][c] == 0 && g.table_[c] == identity_row(m)) {
                g.identity_ = c;
                break;
            }
        g.inverses_.resize(m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (g.table_[a][b] == g.identity_) g.inverses_[a] = b;
        return g;
    }

    static FinGroup trivial() { return from_table({"1"}, {{0}}); }

    /// Z/n with elements "1", "g", "g^2", ...
    static FinGroup cyclic(std::size_t n, const std::string& generator = "g")
    {
        std::vector<std::string> names(n);
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t i = 0; i < n; ++i) {
            names[i] = i == 0 ? "1" : (i == 1 ? generator : generator + "^" + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        }
        return from_table(std::move(names), std::move(t));
    }

    /// Group of the given permutations (must be closed under composition
    /// and contain the identity); product is (ab)(i) = a(b(i)).
    static FinGroup from_permutations(const std::vector<std::string>& names,
                                      const std::vector<std::vector<std::size_t>>& perms)
    {
        const std::size_t m = perms.size();
        std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                std::vector<std::size_t> ab(perms[b].size());
                for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = perms[a][perms[b][i]];
                auto it = std::find(perms.begin(), perms.end(), ab);
                if (it == perms.end()) throw InputError("permutations not closed under composition");
                t[a][b] = static_cast<std::size_t>(it - perms.begin());
            }
        return from_table(names, std::move(t));
    }

    /// S3 on {0,1,2}: 1, (01), (02), (12), (012), (021).
    static FinGroup symmetric3()
    {
        return from_permutations({"1", "(01)", "(02)", "(12)", "(012)", "(021)"},
                                 {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}});
    }

    std::size_t order() const noexcept { return names_.size(); }
    std::size_t identity() const noexcept { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inv(std::size_t a) const { return inverses_[a]; }
    const std::string& name(std::size_t a) const { return names_.at(a); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

    std::optional<std::size_t> find(const std::string& name) const
    {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

    /// s·x·s⁻¹
    std::size_t conjugate(std::size_t s, std::size_t x) const { return mul(mul(s, x), inv(s)); }

    friend bool operator==(const FinGroup& a, const FinGroup& b) { return a.table_ == b.table_; }

  private:
    static std::vector<std::size_t> identity_row(std::size_t m)
    {
        std::vector<std::size_t> r(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = i;
        return r;
    }

    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverses_;
};

struct ConjClass {
    std::size_t representative;
    std::vector<std::size_t> members; // sorted
};

/// Partition of G into conjugacy classes. The identity's class comes
/// first; the rest follow in order of their smallest member.
inline std::vector<ConjClass> conjugacy_classes(const FinGroup& g)
{
    std::vector<ConjClass> out;
    std::vector<char> seen(g.order(), 0);
    auto take = [&](std::size_t x) {
        ConjClass c{x, {}};
        for (std::size_t s = 0; s < g.order(); ++s) {
            const std::size_t y = g.conjugate(s, x);
            if (!seen[y]) {
                seen[y] = 1;
                c.members.push_back(y);
            }
        }
        std::sort(c.members.begin(), c.members.end());
        out.push_back(std::move(c));
    };
    take(g.identity());
    for (std::size_t x = 0; x < g.order(); ++x)
        if (!seen[x]) take(x);
    return out;
}

/// For each element, the index of its class in `classes`.
inline std::vector<std::size_t> class_index(const FinGroup& g, const std::vector<ConjClass>& classes)
{
    std::vector<std::size_t> idx(g.order(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t x : classes[c].members) idx[x] = c;
    return idx;
}

/// "{a,b,...}" from member names.
inline std::string class_label(const FinGroup& g, const ConjClass& c)
{
    std::string s = "{";
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        if (i) s += ",";
        s += g.name(c.members[i]);
    }
    return s + "}";
}

/// Left action of G on {0, ..., set_size-1}; perm[s][i] = s·i.
struct GSetAction {
    std::size_t set_size = 0;
    std::vector<std::vector<std::size_t>> perm;

    std::size_t apply(std::size_t s, std::size_t i) const { return perm[s][i]; }

    static GSetAction trivial(const FinGroup& g, std::size_t n)
    {
        GSetAction a;
        a.set_size = n;
        a.perm.assign(g.order(), std::vector<std::size_t>(n));
        for (auto& p : a.perm)
            for (std::size_t i = 0; i < n; ++i) p[i] = i;
        return a;
    }
};

/// Checks perm(1) = id, each perm a bijection, and perm(ts) = perm(t)∘perm(s).
inline ValidationResult validate_gset(const FinGroup& g, const GSetAction& a,
                                      const std::vector<std::string>* point_names = nullptr)
{
    ValidationResult res;
    auto pt = [&](std::size_t i) { return point_names ? (*point_names)[i] : std::to_string(i); };
    if (a.perm.size() != g.order()) {
        res.add("action shape", std::to_string(a.perm.size()) + " permutations for a group of order " +
                                    std::to_string(g.order()));
        return res;
    }
    for (std::size_t s = 0; s < g.order(); ++s) {
        if (a.perm[s].size() != a.set_size) {
            res.add("action shape", "permutation of " + g.name(s) + " has wrong length");
            return res;
        }
        std::vector<char> hit(a.set_size, 0);
        for (std::size_t i = 0; i < a.set_size; ++i) {
            if (a.perm[s][i] >= a.set_size || hit[a.perm[s][i]]++) {
                res.add("bijection", g.name(s) + " is not a permutation (at " + pt(i) + ")");
                return res;
            }
        }
    }
    for (std::size_t i = 0; i < a.set_size; ++i)
        if (a.perm[g.identity()][i] != i) {
            res.add("identity acts trivially", g.name(g.identity()) + " moves " + pt(i));
            break;
        }
    for (std::size_t t = 0; t < g.order(); ++t)
        for (std::size_t s = 0; s < g.order(); ++s)
            for (std::size_t i = 0; i < a.set_size; ++i)
                if (a.perm[g.mul(t, s)][i] != a.perm[t][a.perm[s][i]]) {
                    res.add("compatibility t(sx)=(ts)x", "t=" + g.name(t) + ", s=" + g.name(s) + ", x=" + pt(i));
                    return res;
                }
    return res;
}

/// One chosen point per orbit. For every x, x = witness[x]·reps[orbit[x]].
struct Transversal {
    std::vector<std::size_t> reps;
    std::vector<std::size_t> orbit;   // index into reps
    std::vector<std::size_t> witness; // smallest group element s with s·u(x) = x
    bool free = false;

    std::size_t rep_of(std::size_t x) const { return reps[orbit[x]]; }
    bool is_rep(std::size_t x) const { return rep_of(x) == x; }
};

/// Orbits of the action with the smallest index of each orbit as its
/// representative, unless `prefer` lists a point of that orbit (first
/// listed wins; two preferred points in one orbit is an error).
inline Transversal orbits_transversal(const FinGroup& g, const GSetAction& a,
                                      const std::optional<std::vector<std::size_t>>& prefer = std::nullopt)
{
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    Transversal t;
    const std::size_t n = a.set_size;
    t.orbit.assign(n, none);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t x = 0; x < n; ++x) {
        if (t.orbit[x] != none) continue;
        const std::size_t id = members.size();
        members.emplace_back();
        for (std::size_t s = 0; s < g.order(); ++s) {
            const std::size_t y = a.apply(s, x);
            if (t.orbit[y] == none) {
                t.orbit[y] = id;
                members.back().push_back(y);
            }
        }
        t.reps.push_back(x);
    }
    if (prefer) {
        std::vector<char> chosen(t.reps.size(), 0);
        for (std::size_t p : *prefer) {
            if (p >= n) throw InputError("transversal point " + std::to_string(p) + " out of range");
            const std::size_t o = t.orbit[p];
            if (chosen[o]) throw InputError("transversal lists two points of one orbit (" + std::to_string(p) + ")");
            chosen[o] = 1;
            t.reps[o] = p;
        }
    }
    t.witness.assign(n, none);
    t.free = true;
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t u = t.reps[t.orbit[x]];
        std::size_t hits = 0;
        for (std::size_t s = 0; s < g.order(); ++s)
            if (a.apply(s, u) == x) {
                if (t.witness[x] == none) t.witness[x] = s;
                ++hits;
            }
        if (hits != 1) t.free = false;
    }
    return t;
}

} // namespace skewcat
