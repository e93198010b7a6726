"""Token reconfiguration on graphs: solvers, compilers, encoders."""

from .errors import (
    FormatError,
    InputError,
    PreconditionError,
    ReconfigError,
    ResourceLimitError,
)
from .graphs import (
    Graph,
    Partition,
    ReconfigInstance,
    as_token_set,
    emit_instance,
    is_dominating_set,
    is_independent_set,
    parse_instance,
    satisfies_predicate,
)
from .solver import (
    SolveResult,
    VerifyResult,
    solve,
    state_space_size,
    successors,
    verify_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
