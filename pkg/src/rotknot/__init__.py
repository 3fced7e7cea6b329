"""Exact rotation-quandle colorings of torus-knot diagrams.

Subpackages by role:

- exactnum: cyclotomic field arithmetic, rational turns, unit scans
- geom: points, exact signed areas, rigid rotations, polygon builders
- quandle: dihedral and rotation quandles, the area two-cocycle
- diagram: torus-knot diagram combinatorics, colorings, weights
- trochoid: trochoid data, deformation moves, equivalence classifier
- render: SVG output for colorings
- cli: command-line entry points
"""

from __future__ import annotations

__version__ = "0.1.0"
