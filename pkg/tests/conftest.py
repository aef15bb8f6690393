import pytest

from uag.fields import automorphism_group, finite_field
from uag.palgebra import compile_algebra, structure_algebra
from uag.standard import cyclic_group, klein_four, semilattice2


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def k4():
    return klein_four()


@pytest.fixture(scope="session")
def sl2():
    return semilattice2()


@pytest.fixture(scope="session")
def f2():
    return finite_field(2)


@pytest.fixture(scope="session")
def f4():
    return finite_field(4)


@pytest.fixture(scope="session")
def f2eps_sa(f2):
    """F2[eps]/(eps^2): basis (1, eps)."""
    return structure_algebra(
        "F2eps", f2, 2,
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        associative=True, commutative=True, unit=(1, 0),
    )


@pytest.fixture(scope="session")
def f2one_sa(f2):
    """F2 itself as a one-dimensional unital F2-algebra."""
    return structure_algebra("F2a", f2, 1, [[[1]]], associative=True, commutative=True, unit=(1,))


@pytest.fixture(scope="session")
def f4self_sa(f4):
    """F4 as a one-dimensional algebra over F4."""
    return structure_algebra("F4a", f4, 1, [[[1]]], associative=True, commutative=True, unit=(1,))


@pytest.fixture(scope="session")
def f2eps(f2eps_sa):
    return compile_algebra(f2eps_sa)


@pytest.fixture(scope="session")
def f4self(f4self_sa):
    return compile_algebra(f4self_sa)


@pytest.fixture(scope="session")
def fixture_algebras(z2, z3, z4, k4, sl2, f2eps, f4self):
    """The seven coefficient algebras of the acceptance suite."""
    return {
        "Z2": z2,
        "Z3": z3,
        "Z4": z4,
        "Z2xZ2": k4,
        "SL2": sl2,
        "F2eps": f2eps,
        "F4a": f4self,
    }


@pytest.fixture(scope="session")
def structure_fixtures(f2eps_sa, f4self_sa):
    return {"F2eps": f2eps_sa, "F4a": f4self_sa}
