"""Python access to the shallow-light tree builder.

Point sets, trees and reports use the same JSON layout as the command line tool,
as plain dicts.
"""

import json

from ._slt import SltError, run

__all__ = ["SltError", "generate", "build", "verify", "run"]


def generate(kind="random", eps=0.04, d=2, n=10, seed=1):
    from ._slt import generate_points

    return json.loads(generate_points(kind, eps, d, n, seed))


def build(points, eps=0.04, gamma=8.0, lam=1.25, chord_shortcut=False):
    """Returns {"tree": ..., "report": ...}."""
    from ._slt import build_tree

    return json.loads(build_tree(json.dumps(points), eps, gamma, lam, chord_shortcut))


def verify(tree, points):
    from ._slt import verify_tree

    return json.loads(verify_tree(json.dumps(tree), json.dumps(points)))
