// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "dsflow/dua.hpp"

namespace dsflow {

/// Canonical five-set form of a node transfer function over DUA sets:
///
///   f(x) = born ∪ (x − disabled) ∪ covered ∪ ((x − blocked) ∩ pot_covered)
///
/// where the trailing intersection binds tighter than the unions. `born`
/// and `disabled` play the usual gen/kill roles; `covered` carries the
/// coverage inherited from predecessors; `blocked` masks edge DUAs whose
/// arrival edge is ambiguous; `pot_covered` selects the DUAs whose use
/// site is the node itself.
struct TransferFunction {
    DuaSet born;
    DuaSet disabled;
    DuaSet covered;
    DuaSet blocked;
    DuaSet pot_covered;
};

/// Meet of the value lattice: set intersection.
DuaSet meet(const DuaSet& x, const DuaSet& y);

DuaSet apply(const TransferFunction& f, const DuaSet& x);

/// The function with all five sets empty; apply(identity(u), x) == x.
TransferFunction identity(std::uint32_t universe_size);

/// Exact composition: apply(compose(f1, f2), x) == apply(f2, apply(f1, x))
/// for every x. Returns the algebraic renaming (see compose_closed_form)
/// whenever that form is itself exact, and otherwise falls back to an
/// equivalent gen/kill normal form.
TransferFunction compose(const TransferFunction& f1, const TransferFunction& f2);

/// Closed-form composition by set renaming:
///   born'        = born2 ∪ (born1 − disabled2)
///   disabled'    = disabled1 ∪ disabled2
///   covered'     = (covered1 − disabled2) ∪ covered2
///                  ∪ (((covered1 ∪ born1) − blocked2) ∩ pot_covered2)
///   blocked'     = disabled1 ∪ disabled2 ∪ blocked1 ∪ blocked2
///   pot_covered' = pot_covered1 ∪ pot_covered2
/// Not exact for every input pair: an element of disabled1 that f1 still
/// passes through its (x − blocked) ∩ pot_covered term is dropped here,
/// because disabled1 is folded into both subtractive sets of the result.
/// Use closed_form_mismatch to probe a pair, and compose for the exact
/// result.
TransferFunction compose_closed_form(const TransferFunction& f1, const TransferFunction& f2);

/// Witness that the closed form diverges from sequential application:
/// an input x and the two differing outputs, plus one element where the
/// per-element behavior differs.
struct ClosedFormMismatch {
    std::uint32_t element;
    DuaSet witness;   // input x exposing the divergence
    DuaSet expected;  // apply(f2, apply(f1, witness))
    DuaSet actual;    // apply(compose_closed_form(f1, f2), witness)
};

std::optional<ClosedFormMismatch> closed_form_mismatch(const TransferFunction& f1,
                                                       const TransferFunction& f2);

/// true iff f(y ∩ z) == f(y) ∩ f(z).
bool is_distributive_witness(const TransferFunction& f, const DuaSet& y, const DuaSet& z);

} // namespace dsflow
