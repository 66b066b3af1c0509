"""Backend selection: the compiled ``_core`` extension when importable, else ``_pycore``.

Set ``RWA_PURE_PYTHON=1`` to force the pure-Python backend.
"""

import os

if os.environ.get("RWA_PURE_PYTHON", "") not in ("", "0"):
    from . import _pycore as backend
else:
    try:
        from . import _core as backend
    except ImportError:
        from . import _pycore as backend

BACKEND = "cython" if backend.__name__.endswith("._core") else "python"

RULE_FIXED = backend.RULE_FIXED
RULE_BERNOULLI = backend.RULE_BERNOULLI
RULE_PREFERENTIAL = backend.RULE_PREFERENTIAL
RULE_UNIFORM = backend.RULE_UNIFORM
URN_POLYA = backend.URN_POLYA
URN_FRIEDMAN01 = backend.URN_FRIEDMAN01

simulate_undirected = backend.simulate_undirected
simulate_directed = backend.simulate_directed
urn_ensemble = backend.urn_ensemble
