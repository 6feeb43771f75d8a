import pytest

from wordalg import interleave, words


@pytest.fixture(scope="session")
def sub_xy():
    return words.make_morphism("xy", x="xy", y="yyx")


@pytest.fixture(scope="session")
def sub_xyz():
    return words.make_morphism("xyz", x="xyz", y="zx", z="yz")


@pytest.fixture(scope="session")
def tm_morphism():
    return words.make_morphism("xy", x="xy", y="yx")


@pytest.fixture(scope="session")
def xy_stream(sub_xy):
    return words.MorphicStream(sub_xy, "x")


@pytest.fixture(scope="session")
def tm_stream(tm_morphism):
    return words.MorphicStream(tm_morphism, "y")


@pytest.fixture(scope="session")
def tilde_stream(xy_stream):
    spec = interleave.InterleaveSpec(xy_stream, interleave.UniversalSequence())
    return interleave.InterleaveStream(spec)
