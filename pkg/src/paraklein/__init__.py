"""Exact algebra, Fock representations and Klein transformation of mixed parafermion/paraboson systems."""

from .algebra import (
    ONE,
    ZERO,
    Expression,
    Generator,
    K,
    Kind,
    Word,
    anticommutator,
    b,
    bracket,
    commutator,
    dagger,
    f,
    klein_transform,
    mul,
    normalize,
    parse,
)
from .errors import ConfigurationError, ConstructionError, EvaluationError
from .fock import ModeSpec, Representation, build_representation, check_relation, evaluate
from .relations import RelationFamily, RelationInstance, enumerate_family
from .sparse import SparseMatrix
from .verify import (
    Report,
    SuiteConfig,
    mutation_selfcheck,
    run_matrix_suite,
    symbolic_tilde_identities,
)

__version__ = "0.1.0"
