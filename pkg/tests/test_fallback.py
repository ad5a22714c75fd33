"""The pure-Python path must compute exactly what the compiled kernels do."""

import json
import os
import subprocess
import sys

import pytest

from biconed import _kernels
from biconed.biconing import gen_family

SCRIPT = """
import json
from biconed import _kernels
from biconed.biconing import gen_family
from biconed.activity import h_from_activity, f_vector, tutte_from_activity
out = {"numba": _kernels.USE_NUMBA, "cases": []}
for kind, params in [("complete-bipartite", [2, 2]), ("ferrers", [3, 2, 2]), ("complete", [5])]:
    g = gen_family(kind, params).full
    n = len(g.vertices)
    eu, ev, _ = g.arrays()
    trees = _kernels.spanning_trees(n, eu, ev)
    out["cases"].append({
        "trees": trees.tolist(),
        "flags": _kernels.activity_flags(n, eu, ev, trees).tolist(),
        "forests": _kernels.forests(n, eu, ev).tolist(),
        "counts": _kernels.forest_counts(n, eu, ev).tolist(),
        "h": list(h_from_activity(g)),
        "f": f_vector(g),
        "tutte": tutte_from_activity(g).to_json(),
    })
print(json.dumps(out))
"""


def _run(disable):
    env = dict(os.environ)
    env.pop("BICONED_DISABLE_NUMBA", None)
    if disable:
        env["BICONED_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


@pytest.mark.slow
def test_fallback_matches_compiled_kernels():
    fast, slow = _run(False), _run(True)
    assert fast["numba"] is True and slow["numba"] is False
    assert fast["cases"] == slow["cases"]


def test_kernel_shapes():
    g = gen_family("complete-bipartite", [1, 1]).full
    eu, ev, _ = g.arrays()
    trees = _kernels.spanning_trees(4, eu, ev)
    assert trees.shape == (4, 3)
    assert _kernels.forests(4, eu, ev)[0].tolist() == [-1, -1, -1]
    assert _kernels.spanning_trees(1, eu[:0], ev[:0]).shape == (1, 0)
    assert _kernels.spanning_trees(3, eu[:1], ev[:1]).shape == (0, 2)
