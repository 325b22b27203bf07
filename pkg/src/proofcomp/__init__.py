"""Compression of first-order resolution proofs by partial regularization
(FORPI) and lowering of shared unit subproofs (GFOLU)."""

from .forpi import SafeLiterals, forpi, safe_literals
from .gfolu import ALGORITHMS, gfolu, run_algorithm
from .proof import Axiom, Factoring, Proof, Resolution, metrics, mk_axiom, mk_factoring, mk_resolution
from .proofio import parse, read_proof, serialize, write_proof
from .randgen import GenConfig, gen_proof
from .terms import Const, Fn, Literal, Substitution, Var, mgu, subsumes
from .verify import check_compression, verify

__all__ = [
    "ALGORITHMS",
    "Axiom",
    "Const",
    "Factoring",
    "Fn",
    "GenConfig",
    "Literal",
    "Proof",
    "Resolution",
    "SafeLiterals",
    "Substitution",
    "Var",
    "check_compression",
    "forpi",
    "gen_proof",
    "gfolu",
    "metrics",
    "mgu",
    "mk_axiom",
    "mk_factoring",
    "mk_resolution",
    "parse",
    "read_proof",
    "run_algorithm",
    "safe_literals",
    "serialize",
    "subsumes",
    "verify",
    "write_proof",
]
