"""Seeded random resolution refutations.

Proofs are grown backwards from the empty clause.  Every node is given a
*target* clause; a resolution splits its target between two premises and
adds a complementary pivot pair, a factoring adds a copy of one literal.
Premise targets of a resolution have their non-pivot argument terms replaced
by fresh variables at random, so the clause actually derived at a node is a
generalization of its target.  Conclusions are computed bottom-up by the
checked constructors once both premises exist, which keeps every generated
proof valid by construction.

Only ``random.Random.random()`` is drawn from, so a seed gives the same
proof on every platform and Python version.

Required height: each node carries the height ``h`` its subproof still has
to add.  With probability ``p_height_decrement`` both premises get ``h - 1``;
otherwise one premise (chosen at random) keeps ``h`` and the other becomes an
axiom.  Every branch therefore reaches height ``min_height`` while the
expected proof size stays finite (about 500 nodes for height 7).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, fields
from typing import Optional

from .proof import Axiom, Proof, mk_factoring, mk_resolution
from .terms import Const, Fn, Literal, Var, apply, clause_vars

MAX_TERM_DEPTH = 3


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    p_resolution: float = 0.9
    p_dag_share: float = 0.2
    p_constant_arg: float = 0.7
    p_var_abstract: float = 0.7
    p_height_decrement: float = 0.5
    min_height: int = 7
    max_arity: int = 4
    timeout_ms: int = 300_000

    def __post_init__(self):
        for f in fields(self):
            if f.name.startswith("p_"):
                v = getattr(self, f.name)
                if not 0.0 <= v <= 1.0:
                    raise ValueError(f"{f.name} must lie in [0, 1], got {v}")
        if self.min_height < 1:
            raise ValueError("min_height must be at least 1")
        if self.max_arity < 1:
            raise ValueError("max_arity must be at least 1")


class Generator:
    def __init__(self, cfg: GenConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.preds: list = []  # (name, arity)
        self.funs: list = []
        self.consts: list = []
        self.nvars = 0
        self.deadline: Optional[float] = None
        # decision counters, handy for checking the generator's statistics
        self.constant_args = 0
        self.complex_args = 0
        self.resolutions = 0
        self.factorings = 0
        self.shares = 0

    # -- random primitives -------------------------------------------------------

    def chance(self, p: float) -> bool:
        return self.rng.random() < p

    def below(self, n: int) -> int:
        return min(int(self.rng.random() * n), n - 1)

    def _pick(self, table: list, make):
        j = self.below(len(table) + 1)
        if j == len(table):
            table.append(make(len(table) + 1))
        return table[j]

    def _arity(self) -> int:
        return 1 + self.below(self.cfg.max_arity)

    def fresh_var(self) -> Var:
        self.nvars += 1
        return Var(f"X{self.nvars}")

    # -- syntax ------------------------------------------------------------------

    def gen_term(self, depth: int = 0):
        if depth >= MAX_TERM_DEPTH or self.chance(self.cfg.p_constant_arg):
            if depth < MAX_TERM_DEPTH:
                self.constant_args += 1
            return Const(self._pick(self.consts, lambda i: f"c{i}"))
        self.complex_args += 1
        name, arity = self._pick(self.funs, lambda i: (f"f{i}", self._arity()))
        return Fn(name, [self.gen_term(depth + 1) for _ in range(arity)])

    def gen_literal(self) -> Literal:
        name, arity = self._pick(self.preds, lambda i: (f"p{i}", self._arity()))
        positive = self.chance(0.5)
        return Literal(positive, name, [self.gen_term() for _ in range(arity)])

    def abstract(self, lit: Literal) -> Literal:
        p = self.cfg.p_var_abstract
        if p == 0.0:
            return lit
        args = [self.fresh_var() if self.chance(p) else a for a in lit.args]
        return Literal(lit.positive, lit.pred, args)

    def variant_copy(self, lit: Literal) -> Literal:
        ren = {v: self.fresh_var() for v in sorted(lit.vars())}
        return apply(ren, lit)

    # -- proof structure ---------------------------------------------------------

    def timed_out(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def premise_heights(self, h: int) -> tuple:
        if self.chance(self.cfg.p_height_decrement):
            return h - 1, h - 1
        return (h, 0) if self.chance(0.5) else (0, h)

    def rule_for(self, h: int) -> Optional[str]:
        """Decide what a node with required height ``h`` will be: None for an axiom."""
        if h <= 0 or self.timed_out():
            return None
        if self.chance(self.cfg.p_resolution):
            self.resolutions += 1
            return "res"
        self.factorings += 1
        return "fac"

    def gen(self, target: tuple, h: int, rule: Optional[str]):
        """Build a node deriving a generalization of ``target``.

        Returns the node and, for each target position, the position of the
        corresponding literal in the node's conclusion.
        """
        if rule == "fac" and not target:
            rule = "res"
        if rule is None:
            return Axiom(target), list(range(len(target)))
        if rule == "fac":
            return self.gen_factoring(target, h)
        return self.gen_resolution(target, h)

    def gen_factoring(self, target: tuple, h: int):
        k = self.below(len(target))
        premise_target = target + (self.variant_copy(target[k]),)
        h1 = h - 1 if self.chance(self.cfg.p_height_decrement) else h
        node, where = self.gen(premise_target, h1, self.rule_for(h1))
        a, b = where[k], where[len(target)]
        fac = mk_factoring(node, [a, b])
        first, gone = min(a, b), max(a, b)

        def moved(q):
            if q == gone:
                return first
            return q - 1 if q > gone else q

        return fac, [moved(where[i]) for i in range(len(target))]

    def split(self, target: tuple):
        left, right = [], []
        for i in range(len(target)):
            (left if self.chance(0.5) else right).append(i)
        return left, right

    def gen_resolution(self, target: tuple, h: int):
        pivot = self.gen_literal()
        li, ri = self.split(target)
        lt = tuple(self.abstract(target[i]) for i in li) + (pivot,)
        rt = tuple(self.abstract(target[i]) for i in ri) + (pivot.complement(),)
        hl, hr = self.premise_heights(h)
        rl, rr = self.rule_for(hl), self.rule_for(hr)
        if rl == "res" and rr == "res" and self.chance(self.cfg.p_dag_share):
            self.shares += 1
            left, right = self.gen_shared(lt, hl, rt, hr)
        else:
            left = self.gen(lt, hl, rl)
            right = self.gen(rt, hr, rr)
        node, rest = resolve(left, right, len(lt) - 1, len(rt) - 1)
        where = [0] * len(target)
        for k, i in enumerate(li + ri):
            where[i] = rest[k]
        return node, where

    def gen_shared(self, lt: tuple, hl: int, rt: tuple, hr: int):
        """Two resolutions that both use one new unit subproof as a premise."""
        b = self.gen_literal()
        nb = b.complement()
        hll, hc = self.premise_heights(hl)
        _, hrr = self.premise_heights(hr)
        common = self.gen((b,), hc, self.rule_for(hc))
        llt = tuple(self.abstract(l) for l in lt) + (nb,)
        rrt = (nb,) + tuple(self.abstract(l) for l in rt)
        ll = self.gen(llt, hll, self.rule_for(hll))
        rr = self.gen(rrt, hrr, self.rule_for(hrr))
        left_node, lrest = resolve(ll, common, len(llt) - 1, 0)
        right_node, rrest = resolve(common, rr, 0, 0)
        return (left_node, lrest), (right_node, rrest)


def resolve(left, right, lpiv: int, rpiv: int):
    """Resolve two ``(node, where)`` results on target positions ``lpiv``/``rpiv``.

    Returns the node and the conclusion positions of the remaining target
    literals: left ones in order, then right ones.
    """
    ln, lw = left
    rn, rw = right
    i, j = lw[lpiv], rw[rpiv]
    node = mk_resolution(ln, rn, i, j)
    nl = len(ln.conclusion) - 1
    out = [q if q < i else q - 1 for k, q in enumerate(lw) if k != lpiv]
    out += [nl + (q if q < j else q - 1) for k, q in enumerate(rw) if k != rpiv]
    return node, out


def gen_proof(cfg: GenConfig, stats: Optional[dict] = None) -> Proof:
    """A random refutation; ``stats`` (if given) receives the decision counters."""
    g = Generator(cfg)
    g.deadline = time.monotonic() + cfg.timeout_ms / 1000.0
    node, _ = g.gen_resolution((), cfg.min_height)
    if stats is not None:
        stats.update(
            constant_args=g.constant_args,
            complex_args=g.complex_args,
            resolutions=g.resolutions,
            factorings=g.factorings,
            shares=g.shares,
        )
    return Proof(node)


def gen_ground_proof(seed: int, **overrides) -> Proof:
    """A random refutation without variables, for checks against the propositional algorithm."""
    overrides.setdefault("p_var_abstract", 0.0)
    return gen_proof(GenConfig(seed=seed, **overrides))
