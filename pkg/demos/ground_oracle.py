"""FORPI against the propositional algorithm on variable-free proofs.

The propositional algorithm also marks nodes that other marks already cut off
from the root; those marks have no effect, so they are dropped before
comparing.

    python demos/ground_oracle.py [count]
"""

import sys

from proofcomp import forpi, metrics, safe_literals
from proofcomp.forpi import surviving_marks
from proofcomp.proof import structurally_equal
from proofcomp.randgen import gen_ground_proof
from proofcomp.rpi import rpi_ground_oracle, rpi_marks

count = int(sys.argv[1]) if len(sys.argv) > 1 else 100
same = dead = removed = 0
for seed in range(count):
    p = gen_ground_proof(seed)
    raw = rpi_marks(p)
    live = surviving_marks(p, raw)
    dead += len(raw) - len(live)
    q = forpi(p)
    if safe_literals(p).regularized == live and structurally_equal(q, rpi_ground_oracle(p)):
        same += 1
    removed += metrics(p).resolution_count - metrics(q).resolution_count

print(f"{same}/{count} proofs: identical marks and identical output")
print(f"{dead} propositional marks sat on nodes already cut off")
print(f"{removed} resolutions removed in total")
