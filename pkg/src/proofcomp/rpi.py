"""Propositional RecyclePivotsWithIntersection, used as a reference on ground proofs.

A deliberately literal transcription of the propositional algorithm: safe
literals are plain ground literals, a node is regularized as soon as one of
its resolved literals is safe (right first), and no containment check is
made.  It shares nothing with :mod:`proofcomp.forpi` except the fixer.
"""

from __future__ import annotations

from .fixer import fix
from .proof import Factoring, LEFT, ONLY, RIGHT, Proof, Resolution
from .terms import is_ground


class NotGround(ValueError):
    pass


def rpi_marks(p: Proof) -> dict:
    """Resolution id -> surviving side, as the propositional algorithm decides it."""
    for n in p.nodes:
        if not is_ground(n.conclusion):
            raise NotGround(f"{n!r} contains variables")
    safe: dict = {}
    marks: dict = {}
    for n in reversed(p.nodes):
        kids = p.children[n.id]
        if not kids:
            safe[n.id] = set(n.conclusion)
        else:
            sets = []
            for child, side in kids:
                s = set(safe[child.id])
                if child.id not in marks and side != ONLY:
                    s.add(child.left_literal if side == LEFT else child.right_literal)
                sets.append(s)
            safe[n.id] = set.intersection(*sets)
        if isinstance(n, Resolution):
            if n.right_literal in safe[n.id]:
                marks[n.id] = RIGHT
            elif n.left_literal in safe[n.id]:
                marks[n.id] = LEFT
    return marks


def rpi_ground_oracle(p: Proof) -> Proof:
    marks = rpi_marks(p)
    if not marks:
        return p
    return fix(p, regularized=marks)
