"""Boolean circuit simplification via a database of (nearly) optimal
small subcircuits.

Circuits live in one of two gate bases: BENCH (AND/OR/XOR, their
negations, and NOT) or AIG (AND nodes with negatable edges).  The
toolkit enumerates 3-input principal windows of a circuit and replaces
each one with a smaller precomputed fragment whenever the database has
one, preserving all output functions.
"""

from .benchgen import (gen_atleast, gen_atmost, gen_clique,
                       gen_even_colouring, gen_factorization,
                       gen_miter_family, gen_multiplier, gen_pigeonhole,
                       gen_sum)
from .core import Circuit, CircuitError, Gate, GateKind, TruthTable
from .equiv import EquivVerdict, check_equiv, convert, export_cnf, miter
from .formats import (ParseError, read_aiger, read_bench,
                      write_aiger_ascii, write_bench)
from .fundb import (DEFAULT_CAP, HAVE_KERNELS, Database, build_database,
                    db_stats, load_db, lookup, save_db)
from .preprocess import (apply_local_rules, merge_duplicates, preprocess,
                         remove_dangling)
from .principal import (PrincipalSubcircuit, brute_force_s_sets, closure,
                        dependency_degree, principal_subcircuits, s_sets)
from .rewrite import RewriteConfig, RewriteReport, simplify

__version__ = "0.1.0"

__all__ = [
    "Circuit", "CircuitError", "Gate", "GateKind", "TruthTable",
    "ParseError", "read_bench", "write_bench", "read_aiger",
    "write_aiger_ascii",
    "Database", "DEFAULT_CAP", "HAVE_KERNELS", "build_database",
    "db_stats", "load_db", "lookup", "save_db",
    "remove_dangling", "merge_duplicates", "apply_local_rules",
    "preprocess",
    "closure", "dependency_degree", "s_sets", "brute_force_s_sets",
    "principal_subcircuits", "PrincipalSubcircuit",
    "RewriteConfig", "RewriteReport", "simplify",
    "check_equiv", "convert", "miter", "export_cnf", "EquivVerdict",
    "gen_sum", "gen_atleast", "gen_atmost", "gen_pigeonhole",
    "gen_clique", "gen_even_colouring", "gen_multiplier",
    "gen_factorization", "gen_miter_family",
]
