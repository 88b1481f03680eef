import json
import warnings

import pytest

warnings.filterwarnings("ignore", category=DeprecationWarning)

from citor.corpus import data_root, load_json
from citor.modules import module_from_json
from citor.rings import ring_from_json

FAST_RINGS = ("node", "dim0")


@pytest.fixture(scope="session")
def node():
    return ring_from_json(load_json("rings/node.json"))


@pytest.fixture(scope="session")
def dim0():
    return ring_from_json(load_json("rings/dim0.json"))


def corpus_module(ring, ring_name, mod_name):
    return module_from_json(ring, load_json(f"modules/{ring_name}/{mod_name}.json"))


@pytest.fixture(scope="session")
def node_modules(node):
    names = sorted(p.stem for p in (data_root() / "modules" / "node").glob("*.json"))
    return {name: corpus_module(node, "node", name) for name in names}


@pytest.fixture(scope="session")
def dim0_modules(dim0):
    names = sorted(p.stem for p in (data_root() / "modules" / "dim0").glob("*.json"))
    return {name: corpus_module(dim0, "dim0", name) for name in names}


@pytest.fixture(scope="session")
def client():
    from fastapi.testclient import TestClient

    from citor.service import app

    return TestClient(app)


@pytest.fixture(scope="session")
def post(client):
    def _post(path, payload):
        r = client.post(path, json=payload)
        return r.status_code, r.json()

    return _post


@pytest.fixture(scope="session")
def ring_specs():
    return {name: load_json(f"rings/{name}.json") for name in FAST_RINGS}
