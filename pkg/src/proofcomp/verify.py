"""Independent checking of proofs and of compression results.

The checker does not trust anything cached by the constructors: it recomputes
every conclusion from premises and stored substitutions, and re-derives
unifiers with its own small unification routine (no shared code with
:mod:`proofcomp.terms` beyond the term classes themselves).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .proof import Axiom, Factoring, Proof, Resolution
from .terms import Const, Fn, Literal, Var, subsumes, variant


@dataclass
class VerificationReport:
    failures: list = field(default_factory=list)  # (node label, reason)
    soundness: Optional[dict] = None

    @property
    def valid(self) -> bool:
        return not self.failures and (
            self.soundness is None or all(self.soundness.values())
        )

    def __bool__(self):
        return self.valid

    def describe(self) -> str:
        lines = [f"{node}: {why}" for node, why in self.failures]
        if self.soundness:
            lines += [f"{k}: {'ok' if v else 'FAILED'}" for k, v in self.soundness.items()]
        return "\n".join(lines) if lines else "ok"


# -- a second, independent term toolkit ------------------------------------------


def _sub(t, s: dict):
    if isinstance(t, Var):
        return s.get(t.name, t)
    if isinstance(t, Fn):
        return Fn(t.name, tuple(_sub(a, s) for a in t.args))
    return t


def _sub_lit(l: Literal, s: dict) -> Literal:
    return Literal(l.positive, l.pred, tuple(_sub(a, s) for a in l.args))


def _vars(t, out: set):
    if isinstance(t, Var):
        out.add(t.name)
    elif isinstance(t, Fn):
        for a in t.args:
            _vars(a, out)
    return out


def _lit_vars(lits) -> set:
    out: set = set()
    for l in lits:
        for a in l.args:
            _vars(a, out)
    return out


def _unify(pairs) -> Optional[dict]:
    """Martelli-Montanari style unification of a list of term pairs."""
    s: dict = {}
    todo = list(pairs)
    while todo:
        a, b = todo.pop()
        a, b = _sub(a, s), _sub(b, s)
        if a == b:
            continue
        if isinstance(b, Var) and not isinstance(a, Var):
            a, b = b, a
        if isinstance(a, Var):
            if a.name in _vars(b, set()):
                return None
            s = {k: _sub(v, {a.name: b}) for k, v in s.items()}
            s[a.name] = b
        elif isinstance(a, Fn) and isinstance(b, Fn):
            if a.name != b.name or len(a.args) != len(b.args):
                return None
            todo.extend(zip(a.args, b.args))
        else:
            return None
    return s


def _check_symbols(n, clause, preds: dict, funs: dict, fail) -> None:
    def term(t):
        if isinstance(t, Fn):
            k = funs.setdefault(t.name, len(t.args))
            if k != len(t.args):
                fail(n, f"function {t.name} used with arities {k} and {len(t.args)}")
            for a in t.args:
                term(a)
        elif isinstance(t, Const):
            k = funs.setdefault(t.name, 0)
            if k != 0:
                fail(n, f"symbol {t.name} used both as constant and function")

    for l in clause:
        k = preds.setdefault(l.pred, len(l.args))
        if k != len(l.args):
            fail(n, f"predicate {l.pred} used with arities {k} and {len(l.args)}")
        for a in l.args:
            term(a)


def verify(p: Proof) -> VerificationReport:
    report = VerificationReport()
    failed = set()

    def fail(n, why):
        failed.add(n.id)
        report.failures.append((n.name or f"#{n.id}", why))

    preds: dict = {}
    funs: dict = {}
    for n in p.nodes:
        _check_symbols(n, n.conclusion, preds, funs, fail)
        if isinstance(n, Axiom):
            continue
        if isinstance(n, Resolution):
            _check_resolution(n, fail)
        elif isinstance(n, Factoring):
            _check_factoring(n, fail)
        else:
            fail(n, f"unknown node kind {type(n).__name__}")
    return report


def _check_resolution(n: Resolution, fail) -> None:
    lc, rc = n.left.conclusion, n.right.conclusion
    if not (0 <= n.left_pos < len(lc) and 0 <= n.right_pos < len(rc)):
        fail(n, "resolved literal position out of range")
        return
    ll, rl = lc[n.left_pos], rc[n.right_pos]
    if ll.positive == rl.positive:
        fail(n, "resolved literals have the same polarity")
        return
    sl, sr = dict(n.sub_left), dict(n.sub_right)
    a, b = _sub_lit(ll, sl), _sub_lit(rl, sr)
    if (a.pred, a.args) != (b.pred, b.args):
        fail(n, f"substitutions do not unify the resolved literals: {a!r} vs {b!r}")
        return
    expected = Counter(_sub_lit(l, sl) for k, l in enumerate(lc) if k != n.left_pos)
    expected += Counter(_sub_lit(l, sr) for k, l in enumerate(rc) if k != n.right_pos)
    if expected != Counter(n.conclusion):
        fail(n, "conclusion does not match the premises and substitutions")
    # re-derive a most general unifier with the right premise renamed apart
    taken = _lit_vars(lc) | _lit_vars(rc)
    ren = {}
    for v in sorted(_lit_vars(rc)):
        k = 0
        while f"{v}'{k}" in taken:
            k += 1
        ren[v] = Var(f"{v}'{k}")
        taken.add(f"{v}'{k}")
    rr = _sub_lit(rl, ren)
    if ll.pred != rr.pred or len(ll.args) != len(rr.args):
        fail(n, "resolved literals have different predicates")
        return
    theta = _unify(list(zip(ll.args, rr.args)))
    if theta is None:
        fail(n, "resolved literals are not unifiable")
        return
    general = _sub_lit(ll, theta)
    if not variant([general.atom()], [a.atom()]):
        fail(n, f"resolved atom {a.atom()!r} is not a most general instance ({general!r})")


def _check_factoring(n: Factoring, fail) -> None:
    pc = n.premise.conclusion
    pos = list(n.positions)
    if len(pos) < 2 or len(set(pos)) != len(pos) or not all(0 <= k < len(pc) for k in pos):
        fail(n, "factored positions are invalid")
        return
    lits = [pc[k] for k in pos]
    if len({(l.positive, l.pred, len(l.args)) for l in lits}) != 1:
        fail(n, "factored literals differ in polarity or predicate")
        return
    s = dict(n.sub)
    inst = {_sub_lit(l, s) for l in lits}
    if len(inst) != 1:
        fail(n, "substitution does not unify the factored literals")
        return
    first = min(pos)
    drop = set(pos) - {first}
    expected = Counter(_sub_lit(l, s) for k, l in enumerate(pc) if k not in drop)
    if expected != Counter(n.conclusion):
        fail(n, "conclusion does not match the premise and substitution")


def _signature(clause) -> tuple:
    return tuple(sorted((l.positive, l.pred, len(l.args)) for l in clause))


def check_compression(original: Proof, compressed: Proof) -> VerificationReport:
    """Validity of ``compressed`` plus root subsumption and axiom inclusion."""
    report = verify(compressed)
    root_ok = subsumes(compressed.root.conclusion, original.root.conclusion) is not None
    exact = set()
    by_sig: dict = {}
    for a in original.axioms():
        exact.add(a.conclusion)
        by_sig.setdefault(_signature(a.conclusion), []).append(a.conclusion)
    axiom_ok = all(
        a.conclusion in exact
        or any(variant(a.conclusion, c) for c in by_sig.get(_signature(a.conclusion), ()))
        for a in compressed.axioms()
    )
    report.soundness = {"root_subsumption": root_ok, "axiom_subset": axiom_ok}
    return report
