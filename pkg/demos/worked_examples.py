"""Walk through the small hand-made proofs in tests/fixtures.

For each proof: the safe literals of the interesting node, what FORPI marks,
and the compressed proof.

    python demos/worked_examples.py
"""

from pathlib import Path

from proofcomp import forpi, gfolu, metrics, read_proof, safe_literals, serialize
from proofcomp.verify import check_compression

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def show(name: str, focus: str, algo=forpi):
    p = read_proof(FIXTURES / f"{name}.fop")
    by_name = {n.name: n for n in p.nodes}
    sl = safe_literals(p)
    print(f"== {name}")
    if focus in by_name:
        lits = ", ".join(sorted(map(repr, sl.safe[by_name[focus].id]))) or "none"
        print(f"safe literals of {focus}: {lits}")
    marks = {by_name_of(p, k): side for k, side in sl.regularized.items()}
    print(f"regularized: {marks or 'nothing'}")
    q = algo(p)
    before, after = metrics(p).resolution_count, metrics(q).resolution_count
    print(f"{algo.__name__}: {before} -> {after} resolutions, sound: {check_compression(p, q).valid}")
    print(serialize(q, annotate=True))


def by_name_of(p, node_id):
    return next(n.name for n in p.nodes if n.id == node_id)


if __name__ == "__main__":
    show("recycled", "e3")
    show("near_miss", "e3")  # the second premise still matters here, nothing happens
    show("unfixable", "e3")
    show("ground_irregular", "e4")
    show("lowering", "a1", algo=gfolu)
