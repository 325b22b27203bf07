"""Reading and writing proofs in the line-oriented ``.fop`` format.

::

    % comment
    axiom n1 [p(X), -q(a)]
    axiom n2 q(Y) |- r(Y)          % sequent form: left side is negative
    resolve n3 n1 n2 -q(a) q(Y)    % literals may be omitted if unambiguous
    factor n4 n3 p(X) p(a)
    root n4

A literal reference picks the first matching literal that is not already
used; ``p(a)@2`` picks the second copy when a clause holds duplicates.

Identifiers starting with an uppercase letter are variables.  Predicate,
function and constant names start with a lowercase letter or a digit.
"""

from __future__ import annotations

import re
from typing import Optional

from .proof import (
    Axiom,
    Factoring,
    NotFactorable,
    NotResolvable,
    Proof,
    Resolution,
    format_clause,
    mk_axiom,
    mk_factoring,
    mk_resolution,
    resolvent,
)
from .terms import Const, Fn, Literal, Var


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col = line, col


class ValidationError(ValueError):
    pass


class AmbiguousPivot(ValidationError):
    pass


_TOKEN = re.compile(r"(\|-)|([A-Za-z0-9][A-Za-z0-9_']*)|(\S)")


class _Line:
    """Tokenizer and recursive-descent parser for the tail of one statement."""

    def __init__(self, text: str, lineno: int, offset: int):
        self.lineno = lineno
        self.toks = []  # (kind, value, col)
        for m in _TOKEN.finditer(text):
            col = offset + m.start() + 1
            if m.lastindex == 1:
                self.toks.append(("turnstile", "|-", col))
            elif m.lastindex == 2:
                self.toks.append(("ident", m.group(2), col))
            else:
                ch = m.group(3)
                if ch == "_":
                    raise ParseError("identifiers may not start with '_'", lineno, col)
                self.toks.append(("punct", ch, col))
        self.end_col = offset + len(text) + 1
        self.i = 0

    def error(self, msg: str):
        col = self.toks[self.i][2] if self.i < len(self.toks) else self.end_col
        raise ParseError(msg, self.lineno, col)

    def peek(self, value=None):
        if self.i >= len(self.toks):
            return None
        t = self.toks[self.i]
        if value is not None and t[1] != value:
            return None
        return t

    def expect(self, value: str):
        if self.peek(value) is None:
            self.error(f"expected {value!r}")
        self.i += 1

    def at_end(self) -> bool:
        return self.i >= len(self.toks)

    def ident(self, what: str) -> str:
        t = self.peek()
        if t is None or t[0] != "ident":
            self.error(f"expected {what}")
        self.i += 1
        return t[1]

    def term(self):
        name = self.ident("a term")
        if self.peek("("):
            if name[0].isupper():
                self.error(f"variable {name} cannot take arguments")
            return Fn(name, self.args())
        if name[0].isupper():
            return Var(name)
        return Const(name)

    def args(self) -> list:
        self.expect("(")
        out = [self.term()]
        while self.peek(","):
            self.i += 1
            out.append(self.term())
        self.expect(")")
        return out

    def atom(self, positive: bool) -> Literal:
        name = self.ident("a predicate")
        if name[0].isupper():
            self.i -= 1
            self.error(f"predicate {name} must start with a lowercase letter")
        args = self.args() if self.peek("(") else []
        return Literal(positive, name, args)

    def literal(self) -> Literal:
        if self.peek("-") or self.peek("~"):
            self.i += 1
            return self.atom(False)
        return self.atom(True)

    def occurrence(self) -> Optional[int]:
        """Optional ``@k`` after a literal reference: its k-th occurrence (from 1)."""
        if not self.peek("@"):
            return None
        self.i += 1
        k = self.ident("an occurrence number")
        if not k.isdigit() or int(k) < 1:
            self.i -= 1
            self.error("occurrence numbers are positive integers")
        return int(k)

    def atoms(self, stop: set) -> list:
        out = []
        t = self.peek()
        if t is None or t[1] in stop:
            return out
        out.append(self.atom(True))
        while self.peek(","):
            self.i += 1
            out.append(self.atom(True))
        return out

    def clause(self) -> tuple:
        if self.peek("["):
            self.i += 1
            lits = []
            if not self.peek("]"):
                lits.append(self.literal())
                while self.peek(","):
                    self.i += 1
                    lits.append(self.literal())
            self.expect("]")
            return tuple(lits)
        neg = self.atoms({"|-"})
        if self.peek("|-") is None:
            self.error("expected '[' or a sequent with '|-'")
        self.i += 1
        pos = self.atoms(set())
        return tuple(l.complement() for l in neg) + tuple(pos)


def _infer_pivot(left, right):
    found = {}
    for i, a in enumerate(left.conclusion):
        for j, b in enumerate(right.conclusion):
            if (a, b) not in found and resolvent(left.conclusion, right.conclusion, i, j):
                found[(a, b)] = (i, j)
    if not found:
        raise ValidationError("no complementary unifiable pair between the premises")
    if len(found) > 1:
        pairs = ", ".join(f"{a!r}/{b!r}" for a, b in found)
        raise AmbiguousPivot(f"several resolvable pairs ({pairs}); give the literals explicitly")
    return next(iter(found.values()))


def parse(text: str) -> Proof:
    """Parse a ``.fop`` document.  Raises ParseError or ValidationError."""
    nodes: dict = {}
    root: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].rstrip("\r")
        stripped = line.lstrip()
        if not stripped.strip():
            continue
        start = len(line) - len(stripped)
        m = re.match(r"(\w+)\s+([A-Za-z0-9_']+)", stripped)
        if not m:
            raise ParseError("expected '<keyword> <id>'", lineno, start + 1)
        if m.group(2).startswith("_"):
            raise ParseError(f"bad node id {m.group(2)!r}", lineno, start + m.start(2) + 1)
        kw, label = m.group(1), m.group(2)
        rest = _Line(stripped[m.end():], lineno, start + m.end())
        if kw == "root":
            if not rest.at_end():
                rest.error("unexpected text after root id")
            if root is not None:
                raise ParseError("second root statement", lineno, start + 1)
            if label not in nodes:
                raise ValidationError(f"line {lineno}: root {label} is not defined")
            root = label
            continue
        if label in nodes:
            raise ValidationError(f"line {lineno}: node {label} defined twice")

        def ref():
            name = rest.ident("a node id")
            if name not in nodes:
                rest.i -= 1
                raise ValidationError(f"line {lineno}: node {name} is not defined")
            return nodes[name]

        try:
            if kw == "axiom":
                clause = rest.clause()
                if not rest.at_end():
                    rest.error("unexpected text after clause")
                nodes[label] = mk_axiom(clause, name=label)
            elif kw == "resolve":
                left, right = ref(), ref()
                if rest.at_end():
                    i, j = _infer_pivot(left, right)
                else:
                    ll, lk = rest.literal(), rest.occurrence()
                    rl, rk = rest.literal(), rest.occurrence()
                    if not rest.at_end():
                        rest.error("unexpected text after literals")
                    i, j = _locate(left, ll, (), lk), _locate(right, rl, (), rk)
                nodes[label] = mk_resolution(left, right, i, j, name=label)
            elif kw == "factor":
                prem = ref()
                lits = []
                while not rest.at_end():
                    lits.append((rest.literal(), rest.occurrence()))
                taken: list = []
                for l, k in lits:
                    taken.append(_locate(prem, l, taken, k))
                nodes[label] = mk_factoring(prem, taken, name=label)
            else:
                raise ParseError(f"unknown statement {kw!r}", lineno, start + 1)
        except (NotResolvable, NotFactorable) as e:
            raise ValidationError(f"line {lineno}: {e}") from None
        except ValidationError as e:
            if str(e).startswith("line "):
                raise
            raise type(e)(f"line {lineno}: {e}") from None
    if root is None:
        raise ValidationError("missing root statement")
    return Proof(nodes[root])


def _locate(node, lit: Literal, taken=(), occurrence: Optional[int] = None) -> int:
    """Position of ``lit`` in the node's conclusion: the first one not yet
    taken, or its ``occurrence``-th copy."""
    seen = 0
    for k, l in enumerate(node.conclusion):
        if l != lit:
            continue
        seen += 1
        if occurrence is None and k not in taken:
            return k
        if occurrence == seen:
            if k in taken:
                raise ValidationError(f"{lit!r}@{occurrence} is used twice")
            return k
    where = f"@{occurrence} " if occurrence else ""
    raise ValidationError(f"{lit!r}{where} does not occur in {format_clause(node.conclusion)}")


def _ref(clause, pos: int, taken=()) -> str:
    """Text for the literal at ``pos`` that :func:`_locate` maps back to ``pos``."""
    lit = clause[pos]
    same = [k for k, l in enumerate(clause) if l == lit]
    if next(k for k in same if k not in taken) == pos:
        return repr(lit)
    return f"{lit!r}@{same.index(pos) + 1}"


def _labels(p: Proof) -> dict:
    names = [n.name for n in p.nodes]
    if all(names) and len(set(names)) == len(names) and all(
        re.fullmatch(r"[A-Za-z0-9][A-Za-z0-9_']*", s) for s in names
    ):
        return {n.id: n.name for n in p.nodes}
    return {n.id: f"n{k}" for k, n in enumerate(p.nodes, 1)}


def serialize(p: Proof, annotate: bool = False) -> str:
    """Canonical text for ``p``; ``annotate`` adds each derived conclusion as a comment."""
    label = _labels(p)
    out = []
    for n in p.nodes:
        if isinstance(n, Axiom):
            # literal order is kept: it decides variable names further down
            line = f"axiom {label[n.id]} {format_clause(n.conclusion)}"
        elif isinstance(n, Resolution):
            line = (
                f"resolve {label[n.id]} {label[n.left.id]} {label[n.right.id]} "
                f"{_ref(n.left.conclusion, n.left_pos)} {_ref(n.right.conclusion, n.right_pos)}"
            )
        else:
            refs: list = []
            taken: list = []
            for q in n.positions:
                refs.append(_ref(n.premise.conclusion, q, taken))
                taken.append(q)
            lits = " ".join(refs)
            line = f"factor {label[n.id]} {label[n.premise.id]} {lits}"
        if annotate and not isinstance(n, Axiom):
            line += f"  % {format_clause(n.conclusion)}"
        out.append(line)
    out.append(f"root {label[p.root.id]}")
    return "\n".join(out) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(p: Proof, edge_labels: bool = False) -> str:
    """Graphviz rendering: one node per inference, edges from premise to conclusion."""
    label = _labels(p)
    out = ["digraph proof {", "  node [shape=box];"]
    for n in p.nodes:
        text = f"{label[n.id]}: {format_clause(n.conclusion)}"
        out.append(f'  {label[n.id]} [label="{_dot_escape(text)}"];')
    for n in p.nodes:
        if isinstance(n, Resolution):
            edges = [
                (n.left, repr(n.left_literal), n.sub_left),
                (n.right, repr(n.right_literal), n.sub_right),
            ]
        elif isinstance(n, Factoring):
            edges = [(n.premise, " ".join(map(repr, n.factored)), n.sub)]
        else:
            edges = []
        for prem, lit, sub in edges:
            attr = ""
            if edge_labels:
                attr = f' [label="{_dot_escape(f"{lit} {sub!r}")}"]'
            out.append(f"  {label[prem.id]} -> {label[n.id]}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


def read_proof(path) -> Proof:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse(fh.read())


def write_proof(p: Proof, path, annotate: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(p, annotate=annotate))
