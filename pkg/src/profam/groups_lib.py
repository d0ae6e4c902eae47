"""Bundled library of small finite groups for fingerprinting.

All 24 groups of order <= 12 up to isomorphism, plus C13 and D7 as spot
checks.  Tables ship as JSON under ``profam/data/groups``; the env var
``PF_LIBRARY_DIR`` points the loader at an alternative directory.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .fingroup import (
    FiniteGroup,
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    symmetric,
)


def construct_library() -> list[FiniteGroup]:
    """Build the default library from first principles (order <= 12 is
    complete up to isomorphism, then the two spot checks)."""
    groups = [
        cyclic(1),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        direct_product(cyclic(2), cyclic(2)),
        cyclic(5),
        cyclic(6),
        symmetric(3),
        cyclic(7),
        cyclic(8),
        direct_product(cyclic(4), cyclic(2)),
        direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2), name="C2xC2xC2"),
        dihedral(4),
        dicyclic(2),  # Q8
        cyclic(9),
        direct_product(cyclic(3), cyclic(3)),
        cyclic(10),
        dihedral(5),
        cyclic(11),
        cyclic(12),
        direct_product(cyclic(6), cyclic(2)),
        dihedral(6),
        alternating(4),
        dicyclic(3),
        cyclic(13),
        dihedral(7),
    ]
    return sorted(groups, key=lambda g: (g.order, g.name))


def write_library(directory: str | Path) -> list[Path]:
    """Serialize the constructed library as one JSON table per group."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for g in construct_library():
        path = directory / f"{g.order:02d}_{g.name.replace('/', '_')}.json"
        path.write_text(json.dumps(g.to_json(), separators=(",", ":")) + "\n")
        written.append(path)
    return written


def _bundled_dir() -> Path:
    return Path(str(resources.files("profam").joinpath("data/groups")))


def load_library(
    directory: str | Path | None = None, max_order: int | None = None
) -> list[FiniteGroup]:
    """Load the group library from JSON tables.

    Order of precedence: explicit ``directory`` argument, then the
    ``PF_LIBRARY_DIR`` environment variable, then the bundled data.
    """
    if directory is None:
        directory = os.environ.get("PF_LIBRARY_DIR") or _bundled_dir()
    directory = Path(directory)
    groups = []
    for path in sorted(directory.glob("*.json")):
        g = FiniteGroup.from_json(json.loads(path.read_text()))
        if max_order is None or g.order <= max_order:
            groups.append(g)
    if not groups:
        raise FileNotFoundError(f"no group tables found in {directory}")
    return sorted(groups, key=lambda g: (g.order, g.name))
