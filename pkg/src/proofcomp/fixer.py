"""Rebuilding a proof after some of its nodes or edges have been cut.

The pass runs from the axioms towards the root and keeps, for every original
node ``n``, its replacement ``f(n)`` together with a literal map: for each
position of ``n``'s original conclusion, the position of its descendant in
``f(n)`` or ``None`` when that literal is gone.  Positions of ``f(n)`` that
are not the image of any original literal are *foreign*: they are literals
that used to be resolved above and now travel down because their resolution
was cut.  Foreign literals are resolved away again, or contracted into a
pivot, wherever a later resolution on a unifiable literal allows it.

Substitutions are always recomputed from scratch, so rebuilt conclusions may
be more general than the original ones.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .proof import (
    Axiom,
    Factoring,
    LEFT,
    Node,
    NotFactorable,
    Proof,
    RIGHT,
    Resolution,
    mk_factoring,
    mk_resolution,
    resolvent,
)
from .terms import Literal, clause_vars, rename_apart, term_size, unify_all, unify_atoms

DELETED = None  # value of f(n) for nodes that vanish


class FixFailed(RuntimeError):
    pass


def _identity(n: Node) -> tuple:
    return tuple(range(len(n.conclusion)))


def _unifies_with(lit: Literal, original: Literal) -> bool:
    """Same polarity and the atoms unify once ``original`` is renamed apart."""
    if lit.key != original.key:
        return False
    (renamed,), _ = rename_apart((original,), lit.vars())
    return unify_atoms(lit, renamed) is not None


class Fixer:
    """Incremental rebuild; call :meth:`fix_node` in leaves-to-root order.

    ``regularized`` maps a resolution id to the premise side it is replaced
    by; ``deleted`` holds ids of nodes cut out entirely (and may grow while
    the traversal runs, which is how unit lowering uses it).
    """

    def __init__(
        self,
        regularized: Optional[dict] = None,
        deleted: Optional[Iterable[int]] = None,
        fix_factoring: bool = True,
    ):
        self.regularized = dict(regularized or {})
        self.deleted = set(deleted or ())
        self.fix_factoring = fix_factoring
        self.f: dict = {}
        self.lmap: dict = {}

    # -- helpers ---------------------------------------------------------------

    def is_gone(self, n: Node) -> bool:
        return n.id in self.deleted or self.f[n.id] is DELETED

    def descendant(self, n: Node, pos: int) -> Optional[Literal]:
        """The literal of ``f(n)`` descended from position ``pos`` of ``n``, if any."""
        fn = self.f.get(n.id)
        if fn is DELETED:
            return None
        q = self.lmap[n.id][pos]
        return None if q is None else fn.conclusion[q]

    def foreign(self, n: Node) -> list:
        image = {q for q in self.lmap[n.id] if q is not None}
        return [i for i in range(len(self.f[n.id].conclusion)) if i not in image]

    def _through(self, n: Node, premise_maps) -> tuple:
        """Map ``n``'s conclusion positions through its origins and ``premise_maps``."""
        out = []
        for origin in n.origins:
            q = None
            for idx, p in origin:
                m = premise_maps[idx]
                if m is not None and m[p] is not None:
                    q = m[p]
                    break
            out.append(q)
        return tuple(out)

    def _replace_by(self, n: Node, side: int) -> None:
        prem = n.premises[side]
        self.f[n.id] = self.f[prem.id]
        maps = [None] * len(n.premises)
        maps[side] = self.lmap[prem.id]
        self.lmap[n.id] = self._through(n, maps)

    # -- the pass --------------------------------------------------------------

    def fix_node(self, n: Node) -> Optional[Node]:
        if n.id in self.f:
            return self.f[n.id]
        if isinstance(n, Axiom):
            self.f[n.id] = n
            self.lmap[n.id] = _identity(n)
        elif isinstance(n, Resolution):
            self._fix_resolution(n)
        else:
            self._fix_factoring(n)
        return self.f[n.id]

    def _fix_factoring(self, n: Factoring) -> None:
        prem = n.premise
        if self.is_gone(prem):
            self.f[n.id] = DELETED
            self.lmap[n.id] = None
            return
        fp, pmap = self.f[prem.id], self.lmap[prem.id]
        if fp is prem:
            self.f[n.id] = n
            self.lmap[n.id] = _identity(n)
            return
        survivors = sorted({pmap[p] for p in n.positions if pmap[p] is not None})
        if len(survivors) < 2:
            self.f[n.id] = fp
            self.lmap[n.id] = self._through(n, [pmap])
            return
        try:
            node = mk_factoring(fp, survivors)
        except NotFactorable as e:
            raise FixFailed(f"factoring at {n!r} no longer applies: {e}") from None
        post = _factor_posmap(len(fp.conclusion), survivors)
        self.f[n.id] = node
        self.lmap[n.id] = self._through(n, [tuple(None if q is None else post[q] for q in pmap)])

    def _fix_resolution(self, n: Resolution) -> None:
        l_gone, r_gone = self.is_gone(n.left), self.is_gone(n.right)
        if l_gone and r_gone:
            self.f[n.id] = DELETED
            self.lmap[n.id] = None
            return
        if l_gone:
            return self._replace_by(n, 1)
        if r_gone:
            return self._replace_by(n, 0)
        kept = self.regularized.get(n.id)
        if kept is not None:
            return self._replace_by(n, 0 if kept == LEFT else 1)

        L, R = self.f[n.left.id], self.f[n.right.id]
        if L is n.left and R is n.right:
            self.f[n.id] = n
            self.lmap[n.id] = _identity(n)
            return

        cand_l = self._candidates(n.left, n.left_pos, n.left_literal)
        if not cand_l:
            return self._replace_by(n, 0)
        cand_r = self._candidates(n.right, n.right_pos, n.right_literal)
        if not cand_r:
            return self._replace_by(n, 1)

        best = None
        for i, ti in cand_l:
            for j, tj in cand_r:
                res = resolvent(L.conclusion, R.conclusion, i, j)
                if res is None:
                    continue
                sl, sr, _ = res
                pivot = L.conclusion[i]
                rank = (-(ti + tj), len(sl) + len(sr), sum(term_size(a) for a in pivot.args), i, j)
                if best is None or rank < best[0]:
                    best = (rank, i, j)
        if best is None:
            raise FixFailed(f"premises of {n!r} no longer resolve")
        _, i, j = best

        lpost = rpost = None
        if self.fix_factoring:
            L, i, lpost = self._contract(n.left, L, i, R.conclusion[j])
            R, j, rpost = self._contract(n.right, R, j, L.conclusion[i])

        node = mk_resolution(L, R, i, j, name=n.name)

        nl = len(L.conclusion)

        def lpos(q):
            if lpost is not None:
                q = lpost[q]
            if q is None or q == i:
                return None
            return q if q < i else q - 1

        def rpos(q):
            if rpost is not None:
                q = rpost[q]
            if q is None or q == j:
                return None
            return nl - 1 + (q if q < j else q - 1)

        lm = tuple(None if q is None else lpos(q) for q in self.lmap[n.left.id])
        rm = tuple(None if q is None else rpos(q) for q in self.lmap[n.right.id])
        self.f[n.id] = node
        self.lmap[n.id] = self._through(n, [lm, rm])

    def _candidates(self, prem: Node, pos: int, original: Literal) -> list:
        """``(position, tracked)`` pairs in ``f(prem)`` that may stand for ``original``."""
        fp = self.f[prem.id]
        out = []
        q = self.lmap[prem.id][pos]
        if q is not None:
            out.append((q, 1))
        for k in self.foreign(prem):
            if _unifies_with(fp.conclusion[k], original):
                out.append((k, 0))
        return out

    def _contract(self, prem: Node, fp: Node, i: int, partner: Literal):
        """Greedily factor foreign literals of ``fp`` into position ``i``.

        A literal joins when the group stays unifiable and still resolves
        against ``partner``.  Returns the new node, the new pivot position and
        a position map (or None when nothing was contracted).
        """
        lit = fp.conclusion[i]
        extra = [
            k for k in self.foreign(prem) if k != i and fp.conclusion[k].key == lit.key
        ]
        if not extra:
            return fp, i, None
        group = [i]
        for k in extra:
            sigma = unify_all([fp.conclusion[p] for p in group + [k]])
            if sigma is None:
                continue
            merged = sigma(lit)
            (renamed,), _ = rename_apart((partner,), clause_vars(sigma(fp.conclusion)))
            if unify_atoms(merged, renamed) is None:
                continue
            group.append(k)
        if len(group) == 1:
            return fp, i, None
        group.sort()
        node = mk_factoring(fp, group)
        post = _factor_posmap(len(fp.conclusion), group)
        return node, post[i], post


def _factor_posmap(n: int, positions: list) -> list:
    """Old position -> new position for a factoring on sorted ``positions``."""
    first, drop = positions[0], set(positions[1:])
    out, k = [], 0
    for p in range(n):
        if p in drop:
            out.append(None)  # filled below
        else:
            out.append(k)
            k += 1
    for p in drop:
        out[p] = out[first]
    return out


def fix(
    p: Proof,
    regularized: Optional[dict] = None,
    deleted: Optional[Iterable[int]] = None,
    fix_factoring: bool = True,
) -> Proof:
    """Rebuild ``p`` with the given cuts.  Raises :class:`FixFailed` when that is impossible."""
    fx = Fixer(regularized, deleted, fix_factoring)
    for n in p.nodes:
        fx.fix_node(n)
    if fx.is_gone(p.root):
        raise FixFailed("the root was deleted")
    return Proof(fx.f[p.root.id])
