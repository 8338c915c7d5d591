"""Finitely presented functors over finite rings, with the duality D_A and its adjoints."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AxiomError,
    BoundExceededError,
    ConsistencyError,
    FpcatError,
    MorphismError,
    SideMismatchError,
    SizeLimitError,
    UnsupportedRingError,
)
from .rings import FiniteRing, builtin_ring, make_table_ring, make_zmod, opposite  # noqa: E402
from .groups import FiniteAbelianGroup, GroupHom  # noqa: E402
from .modules import (  # noqa: E402
    FpModule,
    ModuleMorphism,
    ShortExactSequenceM,
    basis_modules,
    direct_sum,
    factorize,
    hom_group,
    is_exact_modules,
    make_module,
    make_morphism,
    short_exact_sequence,
    tensor_group,
)
from .functors import (  # noqa: E402
    FpFunctor,
    NatTransformation,
    evaluate,
    functor_from_morphism,
    functors_isomorphic,
    is_zero_functor,
    map_on_morphism,
    nat_factorize,
    nat_group,
    tensor_functor,
    yoneda,
)
from .agj import (  # noqa: E402
    d_a,
    d_l,
    d_r,
    defect,
    delta,
    ev_r,
    four_term_sequences,
    gamma,
    purity_and_split,
)
