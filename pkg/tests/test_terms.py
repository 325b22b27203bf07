import pytest
from hypothesis import given, settings, strategies as st

from helpers import (
    atoms,
    brute_subsumes,
    brute_unifiers,
    clause,
    lit,
    lit_vars,
    literals,
    match_oracle,
    subst,
    subst_lit,
)
from proofcomp.terms import (
    Const,
    EMPTY,
    Fn,
    Literal,
    Substitution,
    Var,
    apply,
    canonical_rename,
    clause_vars,
    is_ground,
    match_literal,
    mgu,
    rename_apart,
    same_multiset,
    subsumes,
    unify_all,
    unify_atoms,
    variant,
)

a, b, c = Const("a"), Const("b"), Const("c")
X, Y, Z = Var("X"), Var("Y"), Var("Z")


def P(*args, positive=True):
    return Literal(positive, "p", args)


# -- syntax ------------------------------------------------------------------------


def test_complement_is_involutive_and_keeps_atom():
    l = lit("-q(X, f(a))")
    assert l.complement().complement() == l
    assert l.complement().atom() == l.atom()
    assert l.complement().positive


def test_clause_vars_and_ground():
    cl = clause("[p(X, f(Y)), -q(a)]")
    assert clause_vars(cl) == {"X", "Y"}
    assert not is_ground(cl)
    assert is_ground(clause("[p(a), -q(f(b))]"))


def test_clauses_are_multisets():
    assert same_multiset(clause("[p(a), p(a), q]"), clause("[q, p(a), p(a)]"))
    assert not same_multiset(clause("[p(a), p(a)]"), clause("[p(a)]"))


# -- substitutions ------------------------------------------------------------------


def test_apply_empty_is_identity():
    assert apply(EMPTY, P(X)) == P(X)


def test_apply_direct_binding():
    assert apply({"X": a}, P(X, Y)) == P(a, Y)


def test_apply_is_simultaneous():
    s = {"X": Fn("f", [Y]), "Y": b}
    assert apply(s, P(X, Y)) == P(Fn("f", [Y]), b)
    # replacing one variable after the other would give p(f(b), b)
    sequential = subst_lit(subst_lit(P(X, Y), {"X": Fn("f", [Y])}), {"Y": b})
    assert sequential == P(Fn("f", [b]), b)
    assert apply(s, P(X, Y)) != sequential


def test_substitution_drops_trivial_bindings():
    s = Substitution({"X": X, "Y": a})
    assert dict(s) == {"Y": a}


def test_compose_order():
    s, d = Substitution({"X": Y}), Substitution({"Y": a})
    t = Fn("g", [X, Y])
    assert apply(s.compose(d), t) == apply(d, apply(s, t))


@settings(max_examples=300, derandomize=True)
@given(st.tuples(st.sampled_from("XYZ"), st.sampled_from("XYZ")), atoms())
def test_compose_law_random(names, atom):
    s = Substitution({names[0]: Fn("f", [Var(names[1])])})
    d = Substitution({names[1]: b})
    assert apply(s.compose(d), atom) == apply(d, apply(s, atom))


# -- unification: worked examples ------------------------------------------------------


def test_mgu_single_binding():
    assert dict(mgu(P(X), P(a))) == {"X": a}


def test_mgu_occurs_check():
    assert mgu(P(X), P(Fn("f", [X]))) is None


def test_mgu_nested():
    s = mgu(P(Fn("f", [X]), Y), P(Z, Fn("g", [Z])))
    assert dict(s) == {"Z": Fn("f", [X]), "Y": Fn("g", [Fn("f", [X])])}


def test_mgu_polarity_and_arity():
    assert mgu(P(X), P(X, positive=False)) is None
    assert unify_atoms(P(X), P(a, positive=False)) is not None
    assert mgu(P(X), P(X, Y)) is None
    assert mgu(P(a), Literal(True, "q", [a])) is None


def test_unify_all_examples():
    assert dict(unify_all([Literal(True, "q", [X])])) == {}
    A, B = Const("A"), Const("B")
    s = unify_all([Literal(True, "q", [X, B]), Literal(True, "q", [A, Y])])
    assert dict(s) == {"X": A, "Y": B}
    assert unify_all([P(a), P(b)]) is None
    with pytest.raises(ValueError):
        unify_all([])


def test_unify_all_three_way():
    s = unify_all([P(X, Y), P(a, Z), P(Z, Y)])
    assert len({apply(s, l) for l in (P(X, Y), P(a, Z), P(Z, Y))}) == 1
    assert apply(s, X) == a


# -- unification: properties against a brute-force oracle ----------------------------


@settings(max_examples=1000, derandomize=True, deadline=None)
@given(atoms(max_depth=2), atoms(max_depth=2))
def test_mgu_against_brute_force(l1, l2):
    s = mgu(l1, l2)
    found = list(brute_unifiers(l1, l2))
    if s is None:
        assert not found
        return
    # correct
    assert apply(s, l1) == apply(s, l2)
    # idempotent
    assert apply(s, apply(s, l1)) == apply(s, l1)
    for v, t in s.items():
        assert not (lit_vars(Literal(True, "w", [t])) & set(s)), "range mentions a bound variable"
        assert t != Var(v)
    # most general: every ground unifier tau factors as tau = s then delta
    vs = sorted(lit_vars(l1) | lit_vars(l2))
    for tau in found:
        delta: dict = {}
        for v in vs:
            image = subst(Var(v), dict(s))
            assert match_oracle(image, tau[v], delta), (s, tau)


@settings(max_examples=300, derandomize=True)
@given(atoms(max_depth=2))
def test_mgu_with_itself_is_empty(l1):
    assert dict(mgu(l1, l1)) == {}


# -- matching and subsumption -----------------------------------------------------------


def test_match_literal_examples():
    assert dict(match_literal(P(a, X), P(a, b))) == {"X": b}
    assert match_literal(P(a, c), P(a, b)) is None
    assert match_literal(P(X, X), P(a, b)) is None


def test_match_keeps_target_variables_rigid():
    assert match_literal(P(a), P(X)) is None
    assert dict(match_literal(P(X), P(Y))) == {"X": Y}


@settings(max_examples=500, derandomize=True)
@given(atoms(max_depth=1), atoms(max_depth=1).map(lambda l: apply({"X": a, "Y": Fn("f", [b]), "Z": b}, l)))
def test_match_agrees_with_mgu_on_ground_targets(g, t):
    m = match_literal(g, t)
    u = mgu(g, t)
    assert (m is None) == (u is None)
    if m is not None:
        assert apply(m, g) == t == apply(u, g)


def test_subsumes_examples():
    assert dict(subsumes([P(X)], [P(a), Literal(True, "q", [b])])) == {"X": a}
    x = [Literal(False, "q", [Y]), Literal(False, "r", [a])]
    y = [Literal(False, "q", [c]), Literal(False, "r", [a]), P(Z)]
    assert dict(subsumes(x, y)) == {"Y": c}
    assert brute_subsumes(x, y)
    assert subsumes([P(X), Literal(True, "q", [X])], [P(a), Literal(True, "q", [b])]) is None


def test_subsumes_start_is_extended():
    assert subsumes([P(X, Y)], [P(a, b)], start={"X": b}) is None
    assert dict(subsumes([P(X, Y)], [P(a, b)], start={"X": a})) == {"X": a, "Y": b}


def test_subsumption_is_set_based():
    assert subsumes([P(X), P(Y)], [P(a)]) is not None


@settings(max_examples=1000, derandomize=True, deadline=None)
@given(st.lists(literals(), min_size=1, max_size=4), st.lists(literals(), min_size=0, max_size=6))
def test_subsumes_against_exhaustive_search(x, y):
    s = subsumes(x, y)
    assert (s is not None) == brute_subsumes(x, y)
    if s is not None:
        assert {apply(s, l) for l in x} <= set(y)


@settings(max_examples=300, derandomize=True, deadline=None)
@given(
    st.lists(literals(), min_size=1, max_size=4),
    st.lists(literals(max_depth=0), max_size=2),
    st.fixed_dictionaries({"X": st.sampled_from([a, b, Fn("f", [a])]), "Y": st.sampled_from([a, Var("Z")])}),
)
def test_subsumes_instances(x, extra, theta):
    y = [apply(theta, l) for l in x] + extra
    s = subsumes(x, y)
    assert s is not None and brute_subsumes(x, y)
    assert {apply(s, l) for l in x} <= set(y)


def test_variant():
    assert variant([P(X, Y)], [P(Y, Z)])
    assert not variant([P(X, X)], [P(X, Y)])
    assert not variant([P(X), P(X)], [P(X)])
    assert variant([P(X), Literal(False, "q", [X])], [Literal(False, "q", [Z]), P(Z)])


# -- renaming --------------------------------------------------------------------------


def test_rename_apart_nothing_forbidden():
    cl, s = rename_apart([P(X)], set())
    assert cl == (P(X),) and dict(s) == {}


def test_rename_apart_forced():
    cl, s = rename_apart([P(X)], {"X"})
    (l,) = cl
    assert l != P(X) and variant(cl, [P(X)])
    assert "X" not in clause_vars(cl)
    assert set(s) == {"X"}


def test_rename_apart_two_variables():
    cl, _ = rename_apart([P(X, Y)], {"X", "Y"})
    (l,) = cl
    assert len(lit_vars(l)) == 2 and not lit_vars(l) & {"X", "Y"}
    assert variant(cl, [P(X, Y)])


@settings(max_examples=200, derandomize=True)
@given(st.lists(literals(), min_size=1, max_size=3), st.sets(st.sampled_from("XYZ")))
def test_rename_apart_property(cl, forbidden):
    out, s = rename_apart(cl, forbidden)
    assert not clause_vars(out) & forbidden
    assert variant(out, cl)
    assert tuple(apply(s, l) for l in cl) == out


def test_canonical_rename():
    l = canonical_rename(P(Y, Fn("f", [X, Y])), "_k_")
    assert l == P(Var("_k_0"), Fn("f", [Var("_k_1"), Var("_k_0")]))
    assert canonical_rename(P(a), "_k_") == P(a)

