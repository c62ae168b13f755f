import functools

import pytest

from h2m.constructors import builtin, paper_example
from h2m.lattice import enumerate_subgroups


@functools.lru_cache(maxsize=None)
def group(spec: str):
    if spec == "example":
        return paper_example(841)
    return builtin(spec)


@functools.lru_cache(maxsize=None)
def lattice(spec: str):
    return enumerate_subgroups(group(spec), 20000)


@pytest.fixture(scope="session")
def example_group():
    return group("example")


@pytest.fixture(scope="session")
def example_lattice():
    return lattice("example")
