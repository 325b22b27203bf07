"""First-order terms, literals, clauses and substitutions.

Everything here is immutable.  Clauses are plain tuples of :class:`Literal`
and are treated as multisets: positions matter only for bookkeeping, never
for equality of clauses (use :func:`same_multiset`).

Substitution composition follows one convention throughout the package::

    apply(compose(s, d), t) == apply(d, apply(s, t))
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Mapping, Optional, Union


class Term:
    __slots__ = ()

    def vars(self) -> set[str]:
        out: set[str] = set()
        _collect_vars(self, out)
        return out


class Var(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("V", name))

    def __eq__(self, other):
        return type(other) is Var and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


class Const(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("C", name))

    def __eq__(self, other):
        return type(other) is Const and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


class Fn(Term):
    __slots__ = ("name", "args", "_hash")

    def __init__(self, name: str, args: Iterable[Term]):
        self.name = name
        self.args = tuple(args)
        if not self.args:
            raise ValueError(f"function {name} needs at least one argument; use Const")
        self._hash = hash(("F", name, self.args))

    def __eq__(self, other):
        return (
            type(other) is Fn
            and other._hash == self._hash
            and other.name == self.name
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.name}({', '.join(map(repr, self.args))})"


def _collect_vars(t: Term, out: set[str]) -> None:
    if type(t) is Var:
        out.add(t.name)
    elif type(t) is Fn:
        for a in t.args:
            _collect_vars(a, out)


class Literal:
    """A signed atom ``pred(args...)``."""

    __slots__ = ("positive", "pred", "args", "_hash")

    def __init__(self, positive: bool, pred: str, args: Iterable[Term] = ()):
        self.positive = bool(positive)
        self.pred = pred
        self.args = tuple(args)
        self._hash = hash((self.positive, pred, self.args))

    def __eq__(self, other):
        return (
            type(other) is Literal
            and other._hash == self._hash
            and other.positive == self.positive
            and other.pred == self.pred
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return ("" if self.positive else "-") + self.atom_str()

    def atom_str(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({', '.join(map(repr, self.args))})"

    @property
    def key(self) -> tuple[bool, str, int]:
        """Polarity, predicate and arity: literals with different keys never unify."""
        return (self.positive, self.pred, len(self.args))

    def complement(self) -> "Literal":
        return Literal(not self.positive, self.pred, self.args)

    def atom(self) -> "Literal":
        """The underlying atom, as a positive literal."""
        return self if self.positive else Literal(True, self.pred, self.args)

    def vars(self) -> set[str]:
        out: set[str] = set()
        for a in self.args:
            _collect_vars(a, out)
        return out


Clause = tuple  # tuple[Literal, ...]


def clause_vars(clause: Iterable[Literal]) -> set[str]:
    out: set[str] = set()
    for lit in clause:
        for a in lit.args:
            _collect_vars(a, out)
    return out


def same_multiset(a: Iterable[Literal], b: Iterable[Literal]) -> bool:
    return Counter(a) == Counter(b)


def is_ground(x: Union[Term, Literal, Iterable[Literal]]) -> bool:
    if isinstance(x, (Term, Literal)):
        return not x.vars()
    return not clause_vars(x)


# -- substitutions -----------------------------------------------------------


class Substitution(Mapping):
    """Finite map from variable names to terms.  Identity bindings are dropped."""

    __slots__ = ("_map",)

    def __init__(self, bindings: Optional[Mapping[str, Term]] = None):
        m = {}
        if bindings:
            for k, v in bindings.items():
                if not (type(v) is Var and v.name == k):
                    m[k] = v
        self._map = m

    def __getitem__(self, name: str) -> Term:
        return self._map[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._map == other._map
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        inner = ", ".join(f"{k} -> {v!r}" for k, v in sorted(self._map.items()))
        return "{" + inner + "}"

    def __call__(self, x):
        return apply(self, x)

    def compose(self, other: "Substitution") -> "Substitution":
        """Substitution equivalent to applying ``self`` first, then ``other``."""
        out = {k: apply_term(other._map, v) for k, v in self._map.items()}
        for k, v in other._map.items():
            if k not in self._map:
                out[k] = v
        return Substitution(out)

    def restrict(self, names: Iterable[str]) -> "Substitution":
        names = set(names)
        return Substitution({k: v for k, v in self._map.items() if k in names})

    def is_renaming(self) -> bool:
        vals = list(self._map.values())
        return all(type(v) is Var for v in vals) and len({v.name for v in vals}) == len(vals)


EMPTY = Substitution()


def apply_term(m: Mapping[str, Term], t: Term) -> Term:
    tt = type(t)
    if tt is Var:
        return m.get(t.name, t)
    if tt is Const:
        return t
    return Fn(t.name, [apply_term(m, a) for a in t.args])


def apply_literal(m: Mapping[str, Term], lit: Literal) -> Literal:
    if not m or not lit.args:
        return lit
    return Literal(lit.positive, lit.pred, [apply_term(m, a) for a in lit.args])


def apply(s: Mapping[str, Term], x):
    """Apply ``s`` simultaneously to a term, a literal or a clause (tuple)."""
    m = s._map if isinstance(s, Substitution) else s
    if isinstance(x, Term):
        return apply_term(m, x)
    if isinstance(x, Literal):
        return apply_literal(m, x)
    return tuple(apply_literal(m, lit) for lit in x)


# -- unification -------------------------------------------------------------


def _walk(t: Term, b: dict) -> Term:
    while type(t) is Var and t.name in b:
        t = b[t.name]
    return t


def _occurs(name: str, t: Term, b: dict) -> bool:
    t = _walk(t, b)
    if type(t) is Var:
        return t.name == name
    if type(t) is Fn:
        return any(_occurs(name, a, b) for a in t.args)
    return False


def _unify_terms(s: Term, t: Term, b: dict) -> bool:
    stack = [(s, t)]
    while stack:
        s, t = stack.pop()
        s = _walk(s, b)
        t = _walk(t, b)
        if s is t or s == t:
            continue
        # bind variables of the second argument first, so resolvents keep the
        # left premise's variable names where there is a choice
        if type(t) is Var:
            if _occurs(t.name, s, b):
                return False
            b[t.name] = s
        elif type(s) is Var:
            if _occurs(s.name, t, b):
                return False
            b[s.name] = t
        elif type(s) is Fn and type(t) is Fn:
            if s.name != t.name or len(s.args) != len(t.args):
                return False
            stack.extend(zip(s.args, t.args))
        else:
            return False
    return True


def _resolve(b: dict) -> Substitution:
    """Turn triangular bindings into an idempotent substitution."""
    memo: dict = {}

    def full(t):
        if type(t) is Var:
            if t.name in b:
                if t.name not in memo:
                    memo[t.name] = full(b[t.name])
                return memo[t.name]
            return t
        if type(t) is Fn:
            return Fn(t.name, [full(a) for a in t.args])
        return t

    return Substitution({k: full(Var(k)) for k in b})


def _unify_args(pairs, b: dict) -> bool:
    for x, y in pairs:
        if len(x.args) != len(y.args) or x.pred != y.pred:
            return False
        for s, t in zip(x.args, y.args):
            if not _unify_terms(s, t, b):
                return False
    return True


def unify_atoms(l1: Literal, l2: Literal) -> Optional[Substitution]:
    """Most general unifier of the underlying atoms, ignoring polarity."""
    b: dict = {}
    if not _unify_args([(l1, l2)], b):
        return None
    return _resolve(b)


def mgu(l1: Literal, l2: Literal) -> Optional[Substitution]:
    """Most general unifier of two literals of equal polarity, or None."""
    if l1.positive != l2.positive:
        return None
    return unify_atoms(l1, l2)


def unify_all(lits: Iterable[Literal]) -> Optional[Substitution]:
    """Unifier making every literal in ``lits`` syntactically equal."""
    lits = list(lits)
    if not lits:
        raise ValueError("unify_all needs at least one literal")
    first = lits[0]
    if any(l.key != first.key for l in lits[1:]):
        return None
    b: dict = {}
    if not _unify_args([(first, l) for l in lits[1:]], b):
        return None
    return _resolve(b)


def unify_terms(s: Term, t: Term) -> Optional[Substitution]:
    b: dict = {}
    if not _unify_terms(s, t, b):
        return None
    return _resolve(b)


# -- matching and subsumption ------------------------------------------------


def _match_term(g: Term, t: Term, b: dict) -> bool:
    tg = type(g)
    if tg is Var:
        bound = b.get(g.name)
        if bound is None:
            b[g.name] = t
            return True
        return bound == t
    if tg is Const:
        return g == t
    if type(t) is not Fn or t.name != g.name or len(t.args) != len(g.args):
        return False
    return all(_match_term(x, y, b) for x, y in zip(g.args, t.args))


def _match_into(general: Literal, target: Literal, b: dict) -> Optional[dict]:
    if general.key != target.key:
        return None
    nb = dict(b)
    for x, y in zip(general.args, target.args):
        if not _match_term(x, y, nb):
            return None
    return nb


def match_literal(
    general: Literal, target: Literal, start: Optional[Mapping[str, Term]] = None
) -> Optional[Substitution]:
    """One-sided matcher: ``apply(s, general) == target``.  Target variables stay rigid."""
    b = _match_into(general, target, dict(start or {}))
    return None if b is None else Substitution(b)


def _subsume_search(xs, ys, b):
    if not xs:
        return b
    head, rest = xs[0], xs[1:]
    for y in ys:
        nb = _match_into(head, y, b)
        if nb is not None:
            found = _subsume_search(rest, ys, nb)
            if found is not None:
                return found
    return None


def subsumes(
    x: Iterable[Literal], y: Iterable[Literal], start: Optional[Mapping[str, Term]] = None
) -> Optional[Substitution]:
    """Some ``s`` (extending ``start``) with ``apply(s, x)`` a subset of ``y``, else None."""
    ys = list(dict.fromkeys(y))
    # most constrained literals first keeps the search shallow
    xs = sorted(dict.fromkeys(x), key=lambda l: sum(1 for t in ys if t.key == l.key))
    found = _subsume_search(xs, ys, dict(start or {}))
    return None if found is None else Substitution(found)


def variant(c1: Iterable[Literal], c2: Iterable[Literal]) -> bool:
    """True when the multisets are equal up to an injective variable renaming."""
    c1, c2 = list(c1), list(c2)
    if len(c1) != len(c2) or Counter(l.key for l in c1) != Counter(l.key for l in c2):
        return False

    def renaming_ok(b):
        vals = [v for v in b.values()]
        return all(type(v) is Var for v in vals) and len({v.name for v in vals}) == len(vals)

    def search(i, used, b):
        if i == len(c1):
            return True
        for j, y in enumerate(c2):
            if j in used:
                continue
            nb = _match_into(c1[i], y, b)
            if nb is not None and renaming_ok(nb) and search(i + 1, used | {j}, nb):
                return True
        return False

    return search(0, frozenset(), {})


# -- renaming ------------------------------------------------------------------


def fresh_name(base: str, taken: set[str]) -> str:
    stem = base.split("_", 1)[0] or "X"
    i = 1
    while f"{stem}_{i}" in taken:
        i += 1
    return f"{stem}_{i}"


def rename_apart(clause: Iterable[Literal], forbidden: Iterable[str]) -> tuple[tuple, Substitution]:
    """Variant of ``clause`` whose variables avoid ``forbidden``.

    Only clashing variables are renamed; names are ``<stem>_<n>`` with the
    smallest free ``n``, so the result depends only on the inputs.
    """
    clause = tuple(clause)
    forbidden = set(forbidden)
    own = clause_vars(clause)
    clashes = sorted(own & forbidden)
    if not clashes:
        return clause, EMPTY
    taken = forbidden | own
    ren = {}
    for v in clashes:
        n = fresh_name(v, taken)
        taken.add(n)
        ren[v] = Var(n)
    s = Substitution(ren)
    return apply(s, clause), s


def canonical_rename(lit: Literal, prefix: str) -> Literal:
    """Rename the variables of ``lit`` to ``<prefix>0, <prefix>1, ...`` by first occurrence."""
    order: list[str] = []

    def visit(t):
        if type(t) is Var:
            if t.name not in order:
                order.append(t.name)
        elif type(t) is Fn:
            for a in t.args:
                visit(a)

    for a in lit.args:
        visit(a)
    if not order:
        return lit
    return apply_literal({v: Var(f"{prefix}{i}") for i, v in enumerate(order)}, lit)


def term_size(t: Term) -> int:
    if type(t) is Fn:
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def literal_sort_key(lit: Literal):
    return (lit.pred, len(lit.args), not lit.positive, repr(lit))
