import pytest

from ainfbench.scalars import FieldSpec
from ainfbench.perturbation import preset_splitting_C, transfer


@pytest.fixture(scope="session")
def Q():
    return FieldSpec(0)


@pytest.fixture(scope="session")
def model12(Q):
    """Transferred minimal model through arity 12 (shared, immutable)."""
    return transfer(preset_splitting_C(Q), 12)


@pytest.fixture(scope="session")
def model8(Q):
    return transfer(preset_splitting_C(Q), 8)


@pytest.fixture(scope="session")
def gh_models(Q):
    """(B, G_*B, H_*G_*B) through arity 9."""
    from ainfbench.cli import gh_pipeline

    return gh_pipeline(Q, 9)
