"""Shared test utilities: fixtures, term strategies and independent oracles.

The oracles here deliberately avoid the package's own unification and
matching code.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from hypothesis import strategies as st

from proofcomp.proof import Factoring, Resolution
from proofcomp.proofio import read_proof
from proofcomp.terms import Const, Fn, Literal, Var

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str):
    """Proof from ``tests/fixtures/<name>.fop`` and a name -> node dict."""
    p = read_proof(FIXTURES / f"{name}.fop")
    return p, {n.name: n for n in p.nodes}


def lit(text: str) -> Literal:
    """Literal from fixture syntax, e.g. ``-p(X, f(a))``."""
    from proofcomp.proofio import parse

    p = parse(f"axiom n1 [{text}]\nroot n1\n")
    (only,) = p.root.conclusion
    return only


def clause(text: str) -> tuple:
    from proofcomp.proofio import parse

    return parse(f"axiom n1 {text}\nroot n1\n").root.conclusion


# -- strategies ----------------------------------------------------------------

VARS = ["X", "Y", "Z"]
CONSTS = ["a", "b"]
FUNS = {"f": 1, "g": 2}


def terms(max_depth: int = 2):
    leaves = st.one_of(st.sampled_from(VARS).map(Var), st.sampled_from(CONSTS).map(Const))
    if max_depth == 0:
        return leaves
    sub = terms(max_depth - 1)
    return st.one_of(
        leaves,
        sub.map(lambda t: Fn("f", [t])),
        st.tuples(sub, sub).map(lambda ts: Fn("g", list(ts))),
    )


def atoms(pred: str = "p", max_depth: int = 2):
    return st.tuples(terms(max_depth), terms(max_depth)).map(lambda ts: Literal(True, pred, ts))


def literals(max_depth: int = 1):
    return st.builds(
        lambda pos, pred, a, b: Literal(pos, pred, [a, b]),
        st.booleans(),
        st.sampled_from(["p", "q"]),
        terms(max_depth),
        terms(max_depth),
    )


# -- independent term operations ---------------------------------------------------


def subst(t, s: dict):
    if isinstance(t, Var):
        return s.get(t.name, t)
    if isinstance(t, Fn):
        return Fn(t.name, [subst(a, s) for a in t.args])
    return t


def subst_lit(l: Literal, s: dict) -> Literal:
    return Literal(l.positive, l.pred, [subst(a, s) for a in l.args])


def term_vars(t, out=None) -> set:
    out = set() if out is None else out
    if isinstance(t, Var):
        out.add(t.name)
    elif isinstance(t, Fn):
        for a in t.args:
            term_vars(a, out)
    return out


def lit_vars(l: Literal) -> set:
    out: set = set()
    for a in l.args:
        term_vars(a, out)
    return out


def match_oracle(g, t, b: dict) -> bool:
    """One-sided matching written independently of the package."""
    if isinstance(g, Var):
        if g.name in b:
            return b[g.name] == t
        b[g.name] = t
        return True
    if isinstance(g, Const):
        return g == t
    return (
        isinstance(t, Fn)
        and t.name == g.name
        and len(t.args) == len(g.args)
        and all(match_oracle(x, y, b) for x, y in zip(g.args, t.args))
    )


def ground_terms():
    """Small ground universe for brute-force unifier enumeration."""
    a, b = Const("a"), Const("b")
    depth1 = [a, b, Fn("f", [a]), Fn("f", [b])] + [Fn("g", [x, y]) for x in (a, b) for y in (a, b)]
    return depth1 + [Fn("f", [Fn("f", [a])]), Fn("f", [Fn("g", [a, b])]), Fn("g", [Fn("f", [a]), b])]


GROUND = ground_terms()


def brute_unifiers(l1: Literal, l2: Literal, domain=GROUND):
    """All ground substitutions over ``domain`` that unify the atoms of l1 and l2."""
    vs = sorted(lit_vars(l1) | lit_vars(l2))
    for combo in itertools.product(domain, repeat=len(vs)):
        s = dict(zip(vs, combo))
        if subst_lit(l1, s).args == subst_lit(l2, s).args:
            yield s


def brute_subsumes(x, y) -> bool:
    """Exhaustive: try every assignment of x's literals to y's literals."""
    x, y = list(x), list(y)
    for pick in itertools.product(range(len(y)), repeat=len(x)):
        b: dict = {}
        ok = True
        for i, j in enumerate(pick):
            g, t = x[i], y[j]
            if (g.positive, g.pred, len(g.args)) != (t.positive, t.pred, len(t.args)):
                ok = False
                break
            if not all(match_oracle(u, v, b) for u, v in zip(g.args, t.args)):
                ok = False
                break
        if ok:
            return True
    return False


# -- proof paths ---------------------------------------------------------------------


def edges_to_root(p, n):
    """Every path from ``n`` down to the root, as lists of (child, side) edges."""
    kids = p.children[n.id]
    if not kids:
        return [[]]
    out = []
    for child, side in kids:
        for rest in edges_to_root(p, child):
            out.append([(child, side)] + rest)
    return out


def edge_pivot(child, side):
    """The instantiated resolved literal an edge contributes (None for factoring)."""
    if isinstance(child, Factoring):
        return None
    assert isinstance(child, Resolution)
    return child.left_instantiated if side == "left" else child.right_instantiated


def literal_is_safe(p, node, l) -> bool:
    """Safe-literal definition by path enumeration.

    ``l`` is safe for ``node`` if it belongs to the root clause or if every
    path down to the root resolves a literal that ``l`` is a renaming of.
    Rigid variable names tell which edge (or the root) a literal came from.
    """
    names = lit_vars(l)

    def renames(src) -> bool:
        if src.key != l.key:
            return False
        b: dict = {}
        if not all(match_oracle(x, y, b) for x, y in zip(src.args, l.args)):
            return False
        return all(isinstance(v, Var) for v in b.values()) and len(set(b.values())) == len(b)

    if all(v.startswith("_root") for v in names) and any(renames(r) for r in p.root.conclusion):
        return True
    for path in edges_to_root(p, node):
        hit = False
        for child, side in path:
            inst = edge_pivot(child, side)
            if inst is None or not all(v.startswith(f"_{child.id}{side[0]}_") for v in names):
                continue
            if renames(inst):
                hit = True
                break
        if not hit:
            return False
    return True
