"""Exact computation in ample (topological full) groups of generalized
odometers on Cantor sets.

The space is the mixed-radix adic completion of an eventually periodic
radix sequence; group elements act as a power of the odometer on each
cylinder of some depth.  Everything is exact integer and rational
arithmetic; all values are immutable and all operations pure.
"""

from .cantor import BaseSequence, ClopenSet, Cylinder, Point, clopen_algebra
from .decompose import (
    Certificate,
    Tag,
    TorsionFactorization,
    coset_reduce,
    decompose_local,
    factor_kernel,
    verify_certificate,
)
from .elements import (
    TfgElement,
    WreathForm,
    compose,
    compose_word,
    identity,
    odometer,
    odometer_power,
)
from .errors import (
    AmpleError,
    BaseMismatchError,
    ClosureCapError,
    DepthLimitError,
    DisjointnessError,
    KRCoverageError,
    PartitionError,
)
from .genperm import (
    GenPermSpec,
    TwoCycleSpec,
    conjugate_spec,
    genperm_to_two_cycles,
    perm_hom_holds,
    realize,
    realize_two_cycle,
    reparametrize_spec,
    split_two_cycle,
    torsion_to_genperms,
)
from .nowhere_dense import (
    NDConstruction,
    build_construction,
    check_minimality_on_y,
    check_nowhere_dense,
    truncated_group_order,
    y_cover,
)
from .perms import Perm
from .stabilizers import (
    FiniteModel,
    FinitePointSet,
    StabilizerClass,
    StabKind,
    classify_finite_stabilizer,
    finite_oracle_maximality,
    partition_action_transitive,
    realize_permutation,
    same_orbit,
)
from .towers import (
    KRPartition,
    build_kr,
    first_return,
    minimal_power_partition,
    parity_exchange,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
