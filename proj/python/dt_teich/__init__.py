"""Decorated Teichmueller coordinates, cells and arc complexes for bordered surfaces.

Objects are plain dicts in the library's JSON schema.
"""

import json

from . import _core

DtError = _core.DtError
DtError.code = property(lambda self: self.args[0])


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def seed_triangulation(g, r, s):
    return json.loads(_core.seed_triangulation(g, r, s))


def validate(triangulation):
    return _core.validate(_dump(triangulation))


def uniform_structure(triangulation, value=1.0):
    return json.loads(_core.uniform_structure(_dump(triangulation), value))


def flip(structure, edge):
    return json.loads(_core.flip(_dump(structure), edge))


def simplicial_coordinates(structure):
    return {int(k): v for k, v in json.loads(_core.simplicial_coordinates(_dump(structure))).items()}


def boundary_traces(structure):
    return _core.boundary_traces(_dump(structure))


def delaunay(structure, first_negative=False):
    return json.loads(_core.delaunay(_dump(structure), first_negative))


def solve(triangulation, coordinates, require_membership=True):
    coords = {str(k): v for k, v in coordinates.items()} if isinstance(coordinates, dict) else coordinates
    return json.loads(_core.solve(_dump(triangulation), _dump(coords), require_membership))


def psi(structure):
    return json.loads(_core.psi(_dump(structure)))


def twist(family, boundary, t):
    return json.loads(_core.twist(_dump(family), boundary, t))


def arc_to_moduli(family):
    return json.loads(_core.arc_to_moduli(_dump(family)))


def enumerate_arc_complex(g, r, s, max_triangulations=5000):
    return json.loads(_core.enumerate_arc_complex(g, r, s, max_triangulations))


def render_triangulation(triangulation):
    return _core.render_triangulation(_dump(triangulation))


def run_cli(args):
    """Returns (exit code, stdout text, stderr text)."""
    return _core.run_cli([str(a) for a in args])
