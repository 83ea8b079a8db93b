"""Bundled filtered complexes for two-component links.

Each file under ``data/`` stores one complex in the JSON layout of
``FilteredComplex.to_json_dict``.  The names follow the common link
tables; ``l7n1`` and ``l7n1_o2`` are the two orientations of the same
link (relinking one component), and the ``h<n>`` family are the
(2, 2n) torus links with parallel orientation.
"""

from __future__ import annotations

import json
from importlib import resources

from .filtered import FilteredComplex

FIXTURE_NAMES = (
    "hopf_plus",
    "hopf_minus",
    "h2",
    "h3",
    "h4",
    "whitehead_8_3",
    "l7n1",
    "l7n1_o2",
    "l7n2",
    "trefoil_hopf",
)


def fixture_complex(name: str) -> FilteredComplex:
    key = name.lower()
    if key not in FIXTURE_NAMES:
        raise ValueError(
            f"no fixture named {name!r}; available: {', '.join(FIXTURE_NAMES)}"
        )
    text = resources.files("hfl.data").joinpath(f"{key}.json").read_text()
    return FilteredComplex.from_json_dict(json.loads(text))
