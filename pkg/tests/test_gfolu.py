import pytest

from helpers import lit, load
from proofcomp.gfolu import (
    ALGORITHMS,
    compose,
    consumer_literals,
    gfolu,
    pre_deletion_unifiable,
    run_algorithm,
    run_all,
)
from proofcomp.proof import Factoring, metrics
from proofcomp.randgen import GenConfig, gen_proof
from proofcomp.verify import check_compression, verify


def test_unit_with_unifiable_uses_is_lowered():
    p, n = load("lowering")
    q = gfolu(p)
    m = metrics(q)
    assert (m.resolution_count, m.factoring_count) == (3, 1)
    assert q.is_refutation()
    # the unit is the last premise used
    assert q.root.right.name == "a1"
    assert isinstance(q.root.left, Factoring)
    assert check_compression(p, q).valid


def test_conflicting_uses_block_lowering():
    p, _ = load("lowering_blocked")
    assert gfolu(p) is p


def test_consumer_literals():
    p, n = load("lowering")
    assert consumer_literals(p, n["a1"]) == [lit("-p(Y)"), lit("-p(a)")]


def test_pre_deletion_unifiable():
    u = lit("p(X)")
    assert pre_deletion_unifiable(u, [lit("-p(a)"), lit("-p(Y)")])
    assert not pre_deletion_unifiable(u, [lit("-p(a)"), lit("-p(b)")])
    # a unit used once is not worth lowering
    assert not pre_deletion_unifiable(u, [lit("-p(a)")])


def test_consumer_variables_are_renamed_apart():
    # both consumers say Y, but they mean different things
    assert pre_deletion_unifiable(lit("p(X, X)"), [lit("-p(Y, a)"), lit("-p(b, Y)")]) is False
    assert pre_deletion_unifiable(lit("p(X, Z)"), [lit("-p(Y, a)"), lit("-p(b, Y)")])


def test_sharing_shared_unit():
    p, _ = load("sharing")
    q = gfolu(p)
    assert metrics(q).resolution_count == 2
    assert check_compression(p, q).valid


def test_nothing_to_lower_in_recycled():
    p, _ = load("recycled")
    assert gfolu(p) is p


def test_compositions_on_recycled():
    p, _ = load("recycled")
    for order in ("forpi-gfolu", "gfolu-forpi", "best"):
        q = compose(p, order)
        assert metrics(q).resolution_count == 1
        assert check_compression(p, q).valid


def test_unknown_composition():
    p, _ = load("recycled")
    with pytest.raises(ValueError):
        compose(p, "both")


def test_run_all_matches_run_algorithm():
    for name in ("sharing", "recycled", "ground_irregular", "lowering"):
        p, _ = load(name)
        outs = run_all(p)
        assert set(outs) == set(ALGORITHMS)
        for algo in ALGORITHMS:
            assert metrics(outs[algo]).resolution_count == metrics(run_algorithm(p, algo)).resolution_count


def test_best_is_never_worse():
    for seed in range(12):
        p = gen_proof(GenConfig(seed=seed))
        outs = run_all(p)
        best = metrics(outs["best"]).resolution_count
        assert best == min(
            metrics(outs["forpi-gfolu"]).resolution_count, metrics(outs["gfolu-forpi"]).resolution_count
        )
        for algo, q in outs.items():
            assert best <= metrics(q).resolution_count, algo
            assert metrics(q).resolution_count <= metrics(p).resolution_count
            assert verify(q).valid and check_compression(p, q).valid


def test_gfolu_without_factoring_repair_is_sound():
    for seed in range(8):
        p = gen_proof(GenConfig(seed=seed))
        q = gfolu(p, fix_factoring=False)
        assert check_compression(p, q).valid
