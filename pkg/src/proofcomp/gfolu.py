"""Lowering of shared unit subproofs (greedy, single traversal), and compositions.

A unit used by several resolutions is cut out of the proof while it is being
rebuilt, and resolved once against the root at the end.  Units are collected
on a stack during the same traversal that deletes them, so a unit found
higher up is reintroduced further down.
"""

from __future__ import annotations

from typing import Callable

from .fixer import FixFailed, Fixer
from .forpi import SUBSUMING, forpi
from .proof import LEFT, Proof, Resolution, metrics, mk_factoring, mk_resolution
from .terms import Literal, clause_vars, rename_apart, subsumes, unify_all


def consumer_literals(p: Proof, unit) -> list:
    """Literals that the resolutions using ``unit`` resolve against its literal."""
    out = []
    for child, side in p.children[unit.id]:
        if isinstance(child, Resolution):
            out.append(child.right_literal if side == LEFT else child.left_literal)
    return out


def pre_deletion_unifiable(unit_literal: Literal, consumers: list) -> bool:
    """The consumer literals, renamed apart, unify with each other and with the
    complement of the unit literal, so they can all be contracted into one
    literal that the unit resolves away."""
    if len(consumers) < 2:
        return False
    lits = [unit_literal.complement()]
    taken = set(unit_literal.vars())
    for c in consumers:
        (r,), _ = rename_apart((c,), taken)
        taken |= r.vars()
        lits.append(r)
    return unify_all(lits) is not None


def _reintroduce(star, unit, ulit: Literal):
    """Contract the root literals that ``ulit`` can resolve, then resolve them away."""
    target = ulit.complement()
    (target,), _ = rename_apart((target,), clause_vars(star.conclusion))
    group: list = []
    for k, lit in enumerate(star.conclusion):
        if lit.key != target.key:
            continue
        trial = [star.conclusion[g] for g in group] + [lit, target]
        if unify_all(trial) is not None:
            group.append(k)
    if not group:
        return star
    if len(group) > 1:
        star = mk_factoring(star, group)
    return mk_resolution(star, unit, group[0], 0)


def gfolu(p: Proof, fix_factoring: bool = True) -> Proof:
    fx = Fixer(fix_factoring=fix_factoring)
    units: list = []
    try:
        for n in p.nodes:
            fx.fix_node(n)
            if n is p.root or len(n.conclusion) != 1 or fx.is_gone(n):
                continue
            consumers = consumer_literals(p, n)
            if len(consumers) < 2 or not pre_deletion_unifiable(n.conclusion[0], consumers):
                continue
            fixed = fx.f[n.id]
            if len(fixed.conclusion) != 1:
                continue
            units.append(fixed)
            fx.deleted.add(n.id)
    except FixFailed:
        return p
    if not units or fx.is_gone(p.root):
        return p
    star = fx.f[p.root.id]
    while units:
        u = units.pop()
        star = _reintroduce(star, u, u.conclusion[0])
    out = Proof(star)
    if subsumes(out.root.conclusion, p.root.conclusion) is None:
        return p
    if metrics(out).resolution_count > metrics(p).resolution_count:
        return p
    return out


def compose(p: Proof, order: str, containment: str = SUBSUMING, fix_factoring: bool = True) -> Proof:
    """``forpi-gfolu`` runs FORPI first; ``gfolu-forpi`` runs GFOLU first;
    ``best`` keeps whichever of the two has fewer resolutions (first on ties)."""

    def f(q):
        return forpi(q, containment, fix_factoring)

    def g(q):
        return gfolu(q, fix_factoring)

    if order == "forpi-gfolu":
        return g(f(p))
    if order == "gfolu-forpi":
        return f(g(p))
    if order == "best":
        a, b = g(f(p)), f(g(p))
        return b if metrics(b).resolution_count < metrics(a).resolution_count else a
    raise ValueError(f"unknown composition {order!r}")


ALGORITHMS = ("forpi", "gfolu", "forpi-gfolu", "gfolu-forpi", "best")


def run_algorithm(
    p: Proof, algo: str, containment: str = SUBSUMING, fix_factoring: bool = True
) -> Proof:
    if algo == "forpi":
        return forpi(p, containment, fix_factoring)
    if algo == "gfolu":
        return gfolu(p, fix_factoring)
    return compose(p, algo, containment, fix_factoring)


def run_all(p: Proof, containment: str = SUBSUMING, fix_factoring: bool = True) -> dict:
    """Outputs of every algorithm setting, sharing the intermediate results."""
    f = forpi(p, containment, fix_factoring)
    g = gfolu(p, fix_factoring)
    fg = gfolu(f, fix_factoring)
    gf = forpi(g, containment, fix_factoring)
    best = gf if metrics(gf).resolution_count < metrics(fg).resolution_count else fg
    return {"forpi": f, "gfolu": g, "forpi-gfolu": fg, "gfolu-forpi": gf, "best": best}
