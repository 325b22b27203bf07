"""Resolution proofs as shared-node DAGs.

Nodes are immutable and reference their premises directly; a :class:`Proof`
is just a root plus a few indexes computed from it.  Constructors check the
side conditions of each inference, so a node that exists is a correct
inference step.

Each inference node records ``origins``: for every literal position of its
conclusion, the premise positions it came from.  Rebuilding passes use this
to follow a literal downwards through a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .terms import (
    EMPTY,
    Literal,
    Substitution,
    apply,
    clause_vars,
    rename_apart,
    unify_all,
    unify_atoms,
)

LEFT, RIGHT, ONLY = "left", "right", "only"

_ids = itertools.count(1)


class NotResolvable(ValueError):
    pass


class NotFactorable(ValueError):
    pass


class Node:
    __slots__ = ("id", "conclusion", "name")

    premises: tuple = ()

    def __repr__(self):
        label = self.name or f"#{self.id}"
        return f"<{type(self).__name__} {label}: {format_clause(self.conclusion)}>"


class Axiom(Node):
    __slots__ = ()

    def __init__(self, clause: Iterable[Literal], name: Optional[str] = None):
        self.id = next(_ids)
        self.conclusion = tuple(clause)
        self.name = name

    @property
    def origins(self):
        return ()


class Resolution(Node):
    __slots__ = ("left", "right", "left_pos", "right_pos", "sub_left", "sub_right")

    @property
    def premises(self):
        return (self.left, self.right)

    @property
    def left_literal(self) -> Literal:
        return self.left.conclusion[self.left_pos]

    @property
    def right_literal(self) -> Literal:
        return self.right.conclusion[self.right_pos]

    @property
    def left_instantiated(self) -> Literal:
        return apply(self.sub_left, self.left_literal)

    @property
    def right_instantiated(self) -> Literal:
        return apply(self.sub_right, self.right_literal)

    @property
    def pivot(self) -> Literal:
        return self.left_instantiated.atom()

    @property
    def origins(self):
        nl = len(self.left.conclusion)
        nr = len(self.right.conclusion)
        out = [((0, i),) for i in range(nl) if i != self.left_pos]
        out += [((1, i),) for i in range(nr) if i != self.right_pos]
        return tuple(out)


class Factoring(Node):
    __slots__ = ("premise", "positions", "sub")

    @property
    def premises(self):
        return (self.premise,)

    @property
    def factored(self) -> tuple:
        return tuple(self.premise.conclusion[i] for i in self.positions)

    @property
    def origins(self):
        first = self.positions[0]
        drop = set(self.positions[1:])
        out = []
        for i in range(len(self.premise.conclusion)):
            if i == first:
                out.append(tuple((0, p) for p in self.positions))
            elif i not in drop:
                out.append(((0, i),))
        return tuple(out)


def format_clause(clause: Sequence[Literal]) -> str:
    if not clause:
        return "[]"
    return "[" + ", ".join(map(repr, clause)) + "]"


def _position(clause: Sequence[Literal], lit: Union[int, Literal], taken=()) -> int:
    if isinstance(lit, int):
        if not 0 <= lit < len(clause):
            raise IndexError(f"literal position {lit} out of range for {format_clause(clause)}")
        return lit
    for i, l in enumerate(clause):
        if l == lit and i not in taken:
            return i
    raise ValueError(f"{lit!r} does not occur in {format_clause(clause)}")


def mk_axiom(clause: Iterable[Literal], name: Optional[str] = None) -> Axiom:
    return Axiom(clause, name)


def resolvent(left_clause, right_clause, i: int, j: int):
    """Standardize apart and compute ``(sub_left, sub_right, conclusion)`` or None."""
    ll, rl = left_clause[i], right_clause[j]
    if ll.positive == rl.positive or ll.pred != rl.pred or len(ll.args) != len(rl.args):
        return None
    lvars = clause_vars(left_clause)
    renamed, ren = rename_apart(right_clause, lvars)
    theta = unify_atoms(ll, renamed[j])
    if theta is None:
        return None
    sub_left = theta.restrict(lvars)
    sub_right = ren.compose(theta).restrict(clause_vars(right_clause)) if ren else theta.restrict(
        clause_vars(right_clause)
    )
    concl = tuple(apply(sub_left, l) for k, l in enumerate(left_clause) if k != i)
    concl += tuple(apply(sub_right, l) for k, l in enumerate(right_clause) if k != j)
    return sub_left, sub_right, concl


def mk_resolution(
    left: Node,
    right: Node,
    left_lit: Union[int, Literal],
    right_lit: Union[int, Literal],
    name: Optional[str] = None,
) -> Resolution:
    """Binary resolution on the given literals (positions or literal values)."""
    i = _position(left.conclusion, left_lit)
    j = _position(right.conclusion, right_lit)
    res = resolvent(left.conclusion, right.conclusion, i, j)
    if res is None:
        raise NotResolvable(
            f"cannot resolve {left.conclusion[i]!r} against {right.conclusion[j]!r}"
        )
    node = Resolution.__new__(Resolution)
    node.id = next(_ids)
    node.name = name
    node.left, node.right = left, right
    node.left_pos, node.right_pos = i, j
    node.sub_left, node.sub_right, node.conclusion = res
    return node


def mk_factoring(
    premise: Node, factored: Iterable[Union[int, Literal]], name: Optional[str] = None
) -> Factoring:
    """Contract the given literal occurrences of ``premise`` into one."""
    positions: list[int] = []
    for lit in factored:
        positions.append(_position(premise.conclusion, lit, positions))
    if len(positions) < 2 or len(set(positions)) != len(positions):
        raise NotFactorable("factoring needs at least two distinct literal occurrences")
    positions.sort()
    lits = [premise.conclusion[p] for p in positions]
    sigma = unify_all(lits)
    if sigma is None:
        raise NotFactorable(f"literals {lits!r} are not unifiable")
    drop = set(positions[1:])
    concl = tuple(
        apply(sigma, l) for k, l in enumerate(premise.conclusion) if k not in drop
    )
    node = Factoring.__new__(Factoring)
    node.id = next(_ids)
    node.name = name
    node.premise = premise
    node.positions = tuple(positions)
    node.sub = sigma
    node.conclusion = concl
    return node


# -- whole proofs ----------------------------------------------------------------


def _postorder(root: Node) -> list:
    order, seen = [], set()
    stack = [(root, False)]
    while stack:
        n, expanded = stack.pop()
        if expanded:
            order.append(n)
            continue
        if n.id in seen:
            continue
        seen.add(n.id)
        stack.append((n, True))
        for p in reversed(n.premises):
            if p.id not in seen:
                stack.append((p, False))
    return order


class Proof:
    """A proof DAG given by its root.  Unreachable nodes do not exist."""

    def __init__(self, root: Node):
        self.root = root
        self.nodes = _postorder(root)  # premises before consumers
        self.children: dict[int, list] = {n.id: [] for n in self.nodes}
        for n in self.nodes:
            if isinstance(n, Resolution):
                self.children[n.left.id].append((n, LEFT))
                self.children[n.right.id].append((n, RIGHT))
            elif isinstance(n, Factoring):
                self.children[n.premise.id].append((n, ONLY))

    @property
    def conclusion(self):
        return self.root.conclusion

    def is_refutation(self) -> bool:
        return not self.root.conclusion

    def axioms(self) -> list:
        return [n for n in self.nodes if isinstance(n, Axiom)]

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        m = metrics(self)
        return (
            f"<Proof {format_clause(self.root.conclusion)}: {m.resolution_count} resolutions, "
            f"{m.factoring_count} factorings, {m.node_count} nodes>"
        )


def traverse(p: Proof, order: str = "leaves-to-root") -> list:
    """Topological node order; ``root-to-leaves`` visits consumers before premises."""
    if order == "leaves-to-root":
        return list(p.nodes)
    if order == "root-to-leaves":
        return list(reversed(p.nodes))
    raise ValueError(f"unknown order {order!r}")


@dataclass(frozen=True)
class ProofMetrics:
    resolution_count: int
    factoring_count: int
    node_count: int
    height: int


def metrics(p: Proof) -> ProofMetrics:
    height: dict[int, int] = {}
    res = fac = 0
    for n in p.nodes:
        if isinstance(n, Resolution):
            res += 1
        elif isinstance(n, Factoring):
            fac += 1
        height[n.id] = 1 + max((height[q.id] for q in n.premises), default=0)
    return ProofMetrics(res, fac, len(p.nodes), height[p.root.id])


def structurally_equal(a: Proof, b: Proof) -> bool:
    """Same DAG shape, inference kinds, resolved/factored literals and conclusions.

    Node identities are ignored; conclusions are compared as multisets.
    """
    from collections import Counter

    if len(a.nodes) != len(b.nodes):
        return False
    pairs: dict[int, int] = {}
    stack = [(a.root, b.root)]
    while stack:
        x, y = stack.pop()
        if x.id in pairs:
            if pairs[x.id] != y.id:
                return False
            continue
        pairs[x.id] = y.id
        if type(x) is not type(y) or Counter(x.conclusion) != Counter(y.conclusion):
            return False
        if isinstance(x, Resolution):
            if x.left_literal != y.left_literal or x.right_literal != y.right_literal:
                return False
        elif isinstance(x, Factoring):
            if Counter(x.factored) != Counter(y.factored):
                return False
        stack.extend(zip(x.premises, y.premises))
    return len(set(pairs.values())) == len(pairs)
