from importlib import resources

import pytest

from qpbundle.cli.parser import load_preset


def preset_text(name):
    return (
        resources.files("qpbundle.cli")
        .joinpath("presets/%s.preset" % name)
        .read_text(encoding="utf-8")
    )


def load_bundled(name):
    return load_preset(preset_text(name), fallback_name=name)


@pytest.fixture(scope="session")
def ex1():
    return load_bundled("matsumoto-ex1")


@pytest.fixture(scope="session")
def ex2():
    return load_bundled("matsumoto-ex2")
