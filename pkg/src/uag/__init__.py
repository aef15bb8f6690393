"""Equations, Galois closures and geometric equivalence over finite algebras."""

from .algebras import (
    FiniteAlgebra,
    Point,
    PointSet,
    check_identity,
    check_quasiidentity,
    enumerate_homs,
    enumerate_points,
    eval_term,
    is_homomorphism,
    product_algebra,
    power_algebra,
)
from .congruences import AllPairs, ClosureOfSystem, CongruenceOracle, KernelOf, KernelOfSet, Preimage
from .errors import CapExceeded, FileFormatError, SignatureError, TermSyntaxError, UagError
from .geometry import (
    AlgebraicSet,
    AlgebraicSetLattice,
    UniverseBound,
    closure_membership,
    closure_on_universe,
    double_closure_points,
    is_algebraic,
    kernel_congruence,
    lattice,
    solution_set,
)
from .terms import (
    App,
    Equation,
    EquationSystem,
    OpSymbol,
    Signature,
    Term,
    Var,
    parse_equation,
    parse_term,
    print_term,
)

__version__ = "0.1.0"
