"""Exact building-theoretic machinery at desk scale.

Modules:
  root_system   exact root data and affine Weyl arithmetic (types A, C, D)
  coxeter       alcove cells, projections toward infinity, upper/lower faces
  windows       finite windows, sigma-convexity, the deconstruction filtration,
                upper/lower complexes of generic heights, horizontal reduction
  spherical     flag complexes of F_q^n: thickness, opposition, apartments
  chevalley     SL_n Steinberg generators, valuations, Borel characters
  building      Bruhat-Tits truncations: retraction, heights, cone chains
  homology      sparse F2 chain complexes and induced-map tests
  sigma         finiteness-type verdicts for S-arithmetic Borel subgroups
  acceptance    the certification suites driven by `sigmabuild certify`
"""

__version__ = "0.1.0"
