#pragma once

// Small categories shared by the unit tests.

#include "skewcat/lincat.hpp"

namespace fx {

using namespace skewcat;

template <Field F>
LinCat<F> end_k(const F& f)
{
    LinCat<F> c(f, {"x"});
    auto one = c.add_morphism("1", 0, 0);
    c.set_composite(one, one, c.basis_vector(one));
    c.set_identity(0, c.basis_vector(one));
    return c;
}

/// k[x]/(x²) on one object.
template <Field F>
LinCat<F> dual_numbers(const F& f)
{
    LinCat<F> c(f, {"*"});
    auto one = c.add_morphism("1", 0, 0);
    auto x = c.add_morphism("x", 0, 0);
    c.set_composite(one, one, c.basis_vector(one));
    c.set_composite(one, x, c.basis_vector(x));
    c.set_composite(x, one, c.basis_vector(x));
    c.set_identity(0, c.basis_vector(one));
    return c;
}

/// Two objects with hom k on the diagonal, zero across. With `full`,
/// the cross homs are k too (all composites the obvious ones).
template <Field F>
LinCat<F> two_objects(const F& f, bool full)
{
    LinCat<F> c(f, {"a", "b"});
    auto ea = c.add_morphism("ea", 0, 0);
    auto eb = c.add_morphism("eb", 1, 1);
    c.set_composite(ea, ea, c.basis_vector(ea));
    c.set_composite(eb, eb, c.basis_vector(eb));
    c.set_identity(0, c.basis_vector(ea));
    c.set_identity(1, c.basis_vector(eb));
    if (full) {
        auto ba = c.add_morphism("ba", 0, 1);
        auto ab = c.add_morphism("ab", 1, 0);
        c.set_composite(ba, ea, c.basis_vector(ba));
        c.set_composite(eb, ba, c.basis_vector(ba));
        c.set_composite(ab, eb, c.basis_vector(ab));
        c.set_composite(ea, ab, c.basis_vector(ab));
        c.set_composite(ab, ba, c.basis_vector(ea));
        c.set_composite(ba, ab, c.basis_vector(eb));
    }
    return c;
}

/// C2 with σ·x = −x on the dual numbers.
template <Field F>
GActionOnCat<F> sign_action(const LinCat<F>& c)
{
    auto a = GActionOnCat<F>::trivial(c, FinGroup::cyclic(2, "s"));
    a.mor[1][1] = {{1, -c.field().one()}};
    return a;
}

/// C2 swapping the two objects (and the morphisms accordingly).
template <Field F>
GActionOnCat<F> swap_action(const LinCat<F>& c)
{
    auto a = GActionOnCat<F>::trivial(c, FinGroup::cyclic(2, "s"));
    a.objects.perm[1] = {1, 0};
    a.mor[1][0] = c.basis_vector(1);
    a.mor[1][1] = c.basis_vector(0);
    if (c.num_morphisms() == 4) {
        a.mor[1][2] = c.basis_vector(3);
        a.mor[1][3] = c.basis_vector(2);
    }
    return a;
}

} // namespace fx
