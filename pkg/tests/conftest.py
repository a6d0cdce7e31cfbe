import pytest
from click.testing import CliRunner

from krullab.abgroup import FgAbelianGroup
from krullab.cli import cli
from krullab.config import create_config
from krullab.instances import parse_instance
from krullab.krull import KrullInstance
from krullab.semigroup import S_XYZ


@pytest.fixture(scope="session")
def xy():
    """Parsed INST_XY fixture (class group Z, slots +1, +1, -1, -1) with x, y, zx, zy."""
    return parse_instance("inst_xy")


@pytest.fixture(scope="session")
def inst_xy(xy):
    return xy.krull


@pytest.fixture(scope="session")
def inst_z3():
    """Class group Z/3, six slots of class [1]."""
    return parse_instance("inst_z3").krull


@pytest.fixture(scope="session")
def z3f():
    """Class group Z/3, slots p1..p3 of class [1] and p4..p6 of class [2]."""
    return parse_instance("inst_z3f")


@pytest.fixture(scope="session")
def inst_z3f(z3f):
    return z3f.krull


@pytest.fixture(scope="session")
def s_xyz():
    return S_XYZ


@pytest.fixture(scope="session")
def inst_plus_minus():
    """Class group Z, two slots of classes +1 and -1."""
    return KrullInstance.from_classes(FgAbelianGroup(1), [((1,), ()), ((-1,), ())])


@pytest.fixture(scope="session")
def inst_plus_plus_minus2():
    """Class group Z, three slots of classes +1, +1 and -2."""
    return KrullInstance.from_classes(
        FgAbelianGroup(1), [((1,), ()), ((1,), ()), ((-2,), ())]
    )


@pytest.fixture(scope="session")
def inst_factorial():
    """One slot whose class is the identity: the monoid is N."""
    return KrullInstance.from_classes(FgAbelianGroup(), [((), ())])


@pytest.fixture()
def config():
    """Settings with test overrides."""
    return create_config({"TESTING": True, "LOG_LEVEL": "WARNING"})


@pytest.fixture()
def runner():
    """A click test runner."""
    return CliRunner()


@pytest.fixture()
def invoke(runner, config):
    """Run the krullab command group with the test settings."""

    def _invoke(*args):
        return runner.invoke(cli, [str(a) for a in args], obj={"config": config})

    return _invoke
