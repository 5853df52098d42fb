"""Histories-based quantum theory on finite sample spaces.

Build a decoherence functional, find the events it precludes, and
enumerate the minimal preclusive co-events.
"""

from .coevents import (
    Coevent,
    PreclusiveFamily,
    affirming,
    atom_coevent,
    evaluate,
    is_multiplicative,
    is_preclusive,
    is_unital,
    leq_general,
    leq_support,
    minimal_preclusive,
    preclusive_annihilator,
)
from .errors import (
    AxiomViolationError,
    CapacityError,
    ConsistencyError,
    PreconditionError,
    QumeaError,
    SchemaError,
    SpaceMismatchError,
    StrongPositivityError,
)
from .events import Event, SampleSpace, add, complement, enumerate_events, mul
from .measure import (
    DecoherenceFunctional,
    PreclusionReport,
    build_from_matrix,
    decohere,
    interference_level1,
    interference_level2,
    is_classical,
    measure,
    precluded_events,
    strong_positivity_matrix,
)
from .models import (
    ModelSpec,
    build_decoherence,
    classical,
    hardy,
    n_slit,
    parse_model,
    three_slit,
)

__version__ = "0.1.0"
