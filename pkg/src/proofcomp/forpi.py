"""Partial regularization of first-order proofs (RecyclePivotsWithIntersection).

One pass from the root upwards computes the safe literals of every node and
decides which resolutions can be replaced by one of their premises; a single
:func:`~proofcomp.fixer.fix` pass then rebuilds the proof.

Safe literals are instantiated resolved literals.  A literal inserted for an
edge is the parent's own resolved literal with the edge's substitution
applied, so it has the polarity it has in the parent.  Its variables are
renamed to names private to that edge (``_<node><side>_<k>``): variables of
different clauses are unrelated, and the renamed variables are treated as
rigid by the matcher.  Names starting with ``_`` never occur in input proofs.

The containment check for a candidate premise is made against the safe
literals of the paths that survive the marks already made further down (the
"live" set).  A path through an edge that a lower regularization cuts no longer
carries anything to the root, so it cannot constrain the premise.  A node
with no live path at all is removed by the fixer anyway and is never marked.
On ground proofs the marks then coincide with those of the propositional
algorithm that take effect (see :func:`surviving_marks`).
"""

from __future__ import annotations

from typing import Optional

from .fixer import FixFailed, fix
from .proof import Factoring, LEFT, ONLY, RIGHT, Proof, Resolution, traverse
from .terms import (
    Var,
    apply,
    canonical_rename,
    literal_sort_key,
    match_literal,
    subsumes,
)

STRICT, SUBSUMING = "strict", "subsuming"
_AS_SAFE = object()


def edge_literal(child: Resolution, side: str):
    """The instantiated resolved literal of ``child``'s ``side`` premise, renamed rigid."""
    lit = child.left_instantiated if side == LEFT else child.right_instantiated
    return canonical_rename(lit, f"_{child.id}{side[0]}_")


def root_literals(p: Proof) -> frozenset:
    return frozenset(canonical_rename(l, f"_root{i}_") for i, l in enumerate(p.root.conclusion))


class SafeLiterals:
    """Safe-literal computation and regularization marks for one proof."""

    def __init__(self, p: Proof, containment: str = SUBSUMING):
        if containment not in (STRICT, SUBSUMING):
            raise ValueError(f"unknown containment mode {containment!r}")
        self.proof = p
        self.containment = containment
        self.safe: dict = {}
        # safe literals over the paths that survive the marks made so far;
        # None when every path from the node is cut
        self.live: dict = {}
        self.regularized: dict = {}  # resolution id -> side of the surviving premise

    def run(self) -> "SafeLiterals":
        for n in traverse(self.proof, "root-to-leaves"):
            self.safe[n.id] = self._compute(n)
            self.live[n.id] = self._compute_live(n)
            if isinstance(n, Resolution):
                self._regularize(n)
        return self

    def _compute(self, n) -> frozenset:
        children = self.proof.children[n.id]
        if not children:
            return root_literals(self.proof)
        out: Optional[frozenset] = None
        for child, side in children:
            s = self.safe[child.id]
            if side != ONLY and child.id not in self.regularized:
                s = s | {edge_literal(child, side)}
            out = s if out is None else out & s
        return out

    def _compute_live(self, n) -> Optional[frozenset]:
        children = self.proof.children[n.id]
        if not children:
            return root_literals(self.proof)
        out: Optional[frozenset] = None
        for child, side in children:
            kept = self.regularized.get(child.id)
            s = self.live[child.id]
            if s is None or (kept is not None and kept != side):
                continue  # this edge is cut
            if side != ONLY and kept is None:
                s = s | {edge_literal(child, side)}
            out = s if out is None else out & s
        return out

    def _regularize(self, n: Resolution) -> None:
        live = self.live[n.id]
        if live is None:
            return  # removed with the cut edges below; a mark would change nothing
        side = self.regularizable_side(n, self.safe[n.id], live)
        if side is not None:
            self.regularized[n.id] = side

    def regularizable_side(self, n: Resolution, S: frozenset, live=_AS_SAFE) -> Optional[str]:
        """The premise that can replace ``n`` given safe literals ``S``, or None.

        A resolved literal must match a safe literal, and the premise clause,
        instantiated by the same matcher, must fit into ``live`` (defaults to
        ``S``).  Left is tried before right.
        """
        if not S:
            return None
        if live is _AS_SAFE:
            live = S
        ordered = sorted(S, key=literal_sort_key)
        for side in (LEFT, RIGHT):
            if side == RIGHT:
                lit, sub, prem = n.right_instantiated, n.sub_right, n.right
            else:
                lit, sub, prem = n.left_instantiated, n.sub_left, n.left
            clause = apply(sub, prem.conclusion)
            for s in ordered:
                if s.key != lit.key:
                    continue
                m = match_literal(lit, s)
                if m is not None and self._contained(clause, live, m):
                    return side
        return None

    def _contained(self, clause, S, m) -> bool:
        if self.containment == STRICT:
            return all(apply(m, l) in S for l in clause)
        return subsumes(clause, S, start=m) is not None


def surviving_marks(p: Proof, marks: dict) -> dict:
    """``marks`` without the ones on nodes that other marks already cut off from the root."""
    alive: set = set()
    for n in reversed(p.nodes):
        kids = p.children[n.id]
        if not kids or any(
            c.id in alive and marks.get(c.id) in (None, side) for c, side in kids
        ):
            alive.add(n.id)
    return {k: v for k, v in marks.items() if k in alive}


def safe_literals(p: Proof, containment: str = SUBSUMING) -> SafeLiterals:
    return SafeLiterals(p, containment).run()


def forpi(p: Proof, containment: str = SUBSUMING, fix_factoring: bool = True) -> Proof:
    """Regularize ``p`` where it is safe; returns ``p`` itself when nothing improves."""
    sl = safe_literals(p, containment)
    if not sl.regularized:
        return p
    try:
        out = fix(p, regularized=sl.regularized, fix_factoring=fix_factoring)
    except FixFailed:
        return p
    if subsumes(out.root.conclusion, p.root.conclusion) is None:
        return p
    return out
