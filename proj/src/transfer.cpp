// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dsflow/transfer.hpp"

namespace dsflow {

namespace {

// Per element, a transfer function either always emits it, never emits it,
// or passes the input bit through:
//   out(e) = gen(e) ∨ (in(e) ∧ pass(e))
// with gen = born ∪ covered and pass = ¬disabled ∨ (¬blocked ∧ pot_covered).
// Composition is exact at this level, which is what compose() relies on.
struct ElementBehavior {
    DuaSet gen;
    DuaSet pass;
};

ElementBehavior behavior(const TransferFunction& f) {
    const auto universe = f.born.universe_size();
    ElementBehavior b{f.born | f.covered,
                      (IndexSet::full(universe) - f.disabled) |
                          ((IndexSet::full(universe) - f.blocked) & f.pot_covered)};
    return b;
}

ElementBehavior sequential_behavior(const TransferFunction& f1, const TransferFunction& f2) {
    const ElementBehavior b1 = behavior(f1);
    const ElementBehavior b2 = behavior(f2);
    // out2 = gen2 ∨ (gen1 ∧ pass2) ∨ (in ∧ pass1 ∧ pass2)
    return ElementBehavior{b2.gen | (b1.gen & b2.pass), b1.pass & b2.pass};
}

} // namespace

DuaSet meet(const DuaSet& x, const DuaSet& y) {
    return x & y;
}

DuaSet apply(const TransferFunction& f, const DuaSet& x) {
    return f.born | (x - f.disabled) | f.covered | ((x - f.blocked) & f.pot_covered);
}

TransferFunction identity(std::uint32_t universe_size) {
    const DuaSet empty(universe_size);
    return TransferFunction{empty, empty, empty, empty, empty};
}

TransferFunction compose_closed_form(const TransferFunction& f1, const TransferFunction& f2) {
    TransferFunction c;
    c.born = f2.born | (f1.born - f2.disabled);
    c.disabled = f1.disabled | f2.disabled;
    c.covered = (f1.covered - f2.disabled) | f2.covered |
                (((f1.covered | f1.born) - f2.blocked) & f2.pot_covered);
    c.blocked = f1.disabled | f2.disabled | f1.blocked | f2.blocked;
    c.pot_covered = f1.pot_covered | f2.pot_covered;
    return c;
}

TransferFunction compose(const TransferFunction& f1, const TransferFunction& f2) {
    TransferFunction closed = compose_closed_form(f1, f2);
    const ElementBehavior want = sequential_behavior(f1, f2);
    const ElementBehavior got = behavior(closed);
    if (got.gen == want.gen && got.pass == want.pass)
        return closed;

    // Gen/kill normal form of the exact per-element behavior.
    const auto universe = f1.born.universe_size();
    TransferFunction exact = identity(universe);
    exact.born = want.gen;
    exact.disabled = IndexSet::full(universe) - want.pass;
    exact.blocked = IndexSet::full(universe);
    return exact;
}

std::optional<ClosedFormMismatch> closed_form_mismatch(const TransferFunction& f1,
                                                       const TransferFunction& f2) {
    const TransferFunction closed = compose_closed_form(f1, f2);
    const ElementBehavior want = sequential_behavior(f1, f2);
    const ElementBehavior got = behavior(closed);
    const auto universe = f1.born.universe_size();

    for (std::uint32_t e = 0; e < universe; ++e) {
        const bool w_gen = want.gen.contains(e), w_pass = want.pass.contains(e);
        const bool g_gen = got.gen.contains(e), g_pass = got.pass.contains(e);
        // gen makes pass unobservable, so compare outputs at x = {} and x = {e}.
        const bool differ_absent = w_gen != g_gen;
        const bool differ_present = (w_gen || w_pass) != (g_gen || g_pass);
        if (!differ_absent && !differ_present)
            continue;

        DuaSet witness(universe);
        if (differ_present && !differ_absent)
            witness.insert(e);
        ClosedFormMismatch m{e, witness, apply(f2, apply(f1, witness)), apply(closed, witness)};
        return m;
    }
    return std::nullopt;
}

bool is_distributive_witness(const TransferFunction& f, const DuaSet& y, const DuaSet& z) {
    return apply(f, meet(y, z)) == meet(apply(f, y), apply(f, z));
}

} // namespace dsflow
