"""Finite windows of the Coxeter complex and the deconstruction toolbox.

A window is a box of floor bounds on the simple-root functionals; the cells
inside form a finite face-closed complex on which galleries, the residual
boundary R(Z), sigma-convexity, the chamber-by-chamber deconstruction
filtration and the upper/lower complexes of a generic height are computed
with certificates.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .complexes import CellComplex
from .coxeter import FLOOR, AlcoveGeometry, GeometryError, WindowTooSmall
from .linalg import Q0


@dataclass(frozen=True)
class HeightForm:
    """Linear height x -> sum coeffs_i * kappa(x, alpha_i) over the simple roots."""

    coeffs: tuple

    def value(self, geometry, x):
        return sum(
            (c * geometry.root_value(x, geometry._simple_idx[i]) for i, c in enumerate(self.coeffs)),
            Q0,
        )

    def range_on_cell(self, geometry, cell):
        vals = [self.value(geometry, v) for v in geometry.vertices(cell)]
        return min(vals), max(vals)

    def is_generic_decreasing(self, geometry):
        """Strictly decreasing along every ray into the base chamber at infinity.

        Equivalent to all coefficients being negative; returns the index of an
        offending boundary vertex direction otherwise.
        """
        for i, c in enumerate(self.coeffs):
            if c >= 0:
                return False, i
        return True, None


class Window:
    """All cells whose simple-root floors fit in the given box, from a BFS seed."""

    def __init__(self, datum, lo, hi, geometry=None):
        self.geometry = geometry or AlcoveGeometry(datum)
        self.datum = datum
        self.lo = tuple(int(x) for x in lo)
        self.hi = tuple(int(x) for x in hi)
        if len(self.lo) != datum.rank or len(self.hi) != datum.rank:
            raise GeometryError("window bounds must give one range per simple root")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise GeometryError("empty window bounds")
        self._chambers = None
        self._cells = None
        self._complex = None

    @classmethod
    def radius(cls, datum, r, geometry=None):
        """Symmetric window with simple-root floors in [-r, r-1]."""
        return cls(datum, [-r] * datum.rank, [r - 1] * datum.rank, geometry)

    # --- membership -----------------------------------------------------

    def contains_chamber(self, cell):
        for i, pi in enumerate(self.geometry._simple_idx):
            f, k = cell[pi]
            assert f == FLOOR
            if not self.lo[i] <= k <= self.hi[i]:
                return False
        return True

    def contains_cell(self, cell):
        for i, pi in enumerate(self.geometry._simple_idx):
            f, k = cell[pi]
            if f == FLOOR:
                if not self.lo[i] <= k <= self.hi[i]:
                    return False
            else:
                if not self.lo[i] <= k <= self.hi[i] + 1:
                    return False
        return True

    def interior_cell(self, cell, margin=1):
        """Cells far enough from the rim that their full star is in the window."""
        for i, pi in enumerate(self.geometry._simple_idx):
            f, k = cell[pi]
            span = (k, k + 1) if f == FLOOR else (k, k)
            if span[0] < self.lo[i] + margin or span[1] > self.hi[i] + 1 - margin:
                return False
        return True

    # --- construction -----------------------------------------------------

    def _seed_chamber(self):
        g = self.geometry
        for attempt in range(50):
            den = 101 + 13 * attempt
            target = [
                Fraction(self.lo[i] + self.hi[i] + 1, 2) + Fraction(1, den + 7 * i)
                for i in range(self.datum.rank)
            ]
            x = tuple(
                sum((target[i] * w[j] for i, w in enumerate(self.datum.coweight_dirs)), Q0)
                for j in range(self.datum.rank)
            )
            cell = g.cell_of_point(x)
            if g.is_chamber(cell) and self.contains_chamber(cell):
                return cell
        raise GeometryError("could not seed the window with a generic chamber")

    def chambers(self):
        if self._chambers is not None:
            return self._chambers
        g = self.geometry
        seed = self._seed_chamber()
        seen = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for c in frontier:
                for _, nb in g.chamber_neighbors(c):
                    if nb not in seen and self.contains_chamber(nb):
                        seen.add(nb)
                        nxt.append(nb)
            frontier = nxt
        self._chambers = frozenset(seen)
        return self._chambers

    def cells(self):
        if self._cells is not None:
            return self._cells
        g = self.geometry
        out = set()
        for c in self.chambers():
            out |= g.closure(c)
        self._cells = frozenset(out)
        return self._cells

    def complex(self):
        if self._complex is not None:
            return self._complex
        g = self.geometry
        cx = CellComplex()
        for c in self.cells():
            cx.add_cell(c, g.dim(c), g.facets(c))
        self._complex = cx.freeze()
        return self._complex

    def subcomplex(self, cells):
        g = self.geometry
        cx = CellComplex()
        cells = set(cells)
        for c in cells:
            facets = g.facets(c)
            if not facets <= cells:
                raise GeometryError("cell set is not face-closed")
            cx.add_cell(c, g.dim(c), facets)
        return cx.freeze()

    # --- galleries -------------------------------------------------------

    def gallery_distance(self, c, d):
        """Minimal gallery length via BFS over panel adjacency inside the window."""
        if c == d:
            return 0
        chambers = self.chambers()
        if c not in chambers or d not in chambers:
            raise WindowTooSmall("chambers outside the window")
        g = self.geometry
        dist = {c: 0}
        frontier = [c]
        while frontier:
            nxt = []
            for cur in frontier:
                for _, nb in g.chamber_neighbors(cur):
                    if nb in chambers and nb not in dist:
                        dist[nb] = dist[cur] + 1
                        if nb == d:
                            return dist[nb]
                        nxt.append(nb)
            frontier = nxt
        raise GeometryError("window is disconnected between the two chambers")

    def gate_check(self, a_cell, c_chamber, d_chamber):
        """The gate identity d(D,C) = d(D, pr_A(C)) + d(pr_A(C), C)."""
        g = self.geometry
        gate = g.project_to_cell(a_cell, c_chamber)
        lhs = g.wall_distance(d_chamber, c_chamber)
        rhs = g.wall_distance(d_chamber, gate) + g.wall_distance(gate, c_chamber)
        return lhs == rhs


# --- the section-4 toolbox ---------------------------------------------------


def residual_r(geometry, cells, sigma):
    """R(Z): cells of Z whose projection away from sigma leaves Z."""
    cells = frozenset(cells)
    op = sigma.opposite()
    return frozenset(
        a for a in cells if geometry.project_toward(a, op) not in cells
    )


def sigma_length(geometry, cells, chamber, sigma):
    """Length of the longest sigma-minimal gallery inside Z starting at the chamber."""
    chambers = {c for c in cells if geometry.is_chamber(c)}
    if chamber not in chambers:
        raise GeometryError("chamber not in the subcomplex")
    memo = {}

    # sigma-minimal steps strictly increase the signed floor sum, so the
    # step relation is acyclic and plain memoized recursion terminates.
    def longest(c):
        if c in memo:
            return memo[c]
        best = 0
        for panel, nb in geometry.chamber_neighbors(c):
            if nb in chambers and geometry.project_toward(panel, sigma) == nb:
                best = max(best, 1 + longest(nb))
        memo[c] = best
        return best

    return longest(chamber)


def sigma_convex_check(geometry, cells, sigma):
    """Definition-level sigma-convexity test; returns (ok, witness_gallery)."""
    cells = frozenset(cells)
    chambers = {c for c in cells if geometry.is_chamber(c)}
    op = sigma.opposite()
    starts = {}
    ends = {}
    for a in cells:
        starts.setdefault(geometry.project_toward(a, sigma), True)
        ends.setdefault(geometry.project_toward(a, op), True)
    for c in starts:
        for d in ends:
            # quick filter: a sigma-minimal gallery increases every floor
            if any(kd < kc for (_, kc), (_, kd) in zip(c, d)):
                continue
            for gallery in geometry.sigma_minimal_galleries(c, d, sigma):
                if any(ch not in chambers for ch in gallery):
                    return False, gallery
    return True, None


@dataclass
class DeconstructionStep:
    chamber: tuple
    lower_face: tuple
    removed_star: frozenset
    certificates: dict = field(default_factory=dict)


@dataclass
class Deconstruction:
    filtration: list  # cell sets Z_0 < Z_1 < ... < Z_n = Z
    steps: list  # one DeconstructionStep per removal, in removal order
    residual: frozenset


def deconstruct(geometry, cells, sigma, check_convexity=True):
    """Filter a finite sigma-convex subcomplex chamber by chamber.

    Each step removes one chamber C of sigma-length 0 together with the open
    star of its lower face, and records the certificate facts: the removed
    star lies in the closed chamber, the intersection with the previous stage
    is the boundary of that star, and R is unchanged.
    """
    cells = frozenset(cells)
    if check_convexity:
        ok, witness = sigma_convex_check(geometry, cells, sigma)
        if not ok:
            raise GeometryError(f"subcomplex is not sigma-convex; witness gallery {witness}")
    r_z = residual_r(geometry, cells, sigma)
    current = set(cells)
    filtration = [frozenset(current)]
    steps = []
    while True:
        chambers = sorted(c for c in current if geometry.is_chamber(c))
        if not chambers:
            break
        zero = [c for c in chambers if sigma_length(geometry, current, c, sigma) == 0]
        if not zero:
            raise GeometryError("no chamber of sigma-length zero; subcomplex not deconstructible")
        c = min(zero)  # lexicographic tie-break for determinism
        lower = geometry.lower_face(c, sigma)
        closure_c = geometry.closure(c)
        star = frozenset(
            x for x in current if lower in geometry.closure(x) or x == lower
        )
        cert = {}
        cert["star_in_closed_chamber"] = star <= closure_c
        star_closure = set()
        for x in star:
            star_closure |= geometry.closure(x)
        star_closure &= set(current)
        boundary = frozenset(star_closure) - star
        nxt = set(current) - star
        cert["intersection_is_star_boundary"] = (nxt & closure_c) == (nxt & boundary)
        cert["residual_unchanged"] = residual_r(geometry, nxt, sigma) == r_z
        cert["sigma_length_zero"] = True
        if not all(cert.values()):
            raise GeometryError(f"deconstruction certificate failed at {c}: {cert}")
        steps.append(DeconstructionStep(c, lower, star, cert))
        current = nxt
        filtration.append(frozenset(current))
    if frozenset(current) != r_z:
        raise GeometryError("deconstruction did not terminate at R(Z)")
    filtration.reverse()
    steps.reverse()
    return Deconstruction(filtration, steps, r_z)


# --- upper and lower complexes of a generic height ---------------------------


def epsilon_for_height(geometry, h):
    """The uniform constant 2*d1 + 2*d2 controlling sector covers for h."""
    datum = geometry.datum
    e = tuple(
        sum((w[j] for w in datum.coweight_dirs), Q0) for j in range(datum.rank)
    )
    d1 = abs(h.value(geometry, e))
    d2 = Q0
    for flags in product((-1, 0), repeat=geometry.npos):
        cand = tuple((FLOOR, k) for k in flags)
        try:
            geometry.witness(cand)
        except GeometryError:
            continue
        for v in geometry.vertices(cand):
            d2 = max(d2, abs(h.value(geometry, v)))
    return 2 * d1 + 2 * d2


def special_vertices_above(window, h, r):
    """Special vertices w with h(w) >= r whose opposite sector meets the window.

    Special vertices are exactly the points with integral simple-root values,
    so the enumeration runs over an explicit integer box.
    """
    g = window.geometry
    datum = window.datum
    lam = h.coeffs
    lo_vals = [Fraction(b) for b in window.lo]
    out = []
    ranges = []
    for i in range(datum.rank):
        rest = sum((lam[j] * lo_vals[j] for j in range(datum.rank) if j != i), Q0)
        bound = (Fraction(r) - rest) / lam[i]  # lam[i] < 0 flips the inequality
        hi_c = bound.numerator // bound.denominator
        ranges.append(range(window.lo[i], hi_c + 1))
    for c in product(*ranges):
        val = sum((lam[i] * c[i] for i in range(datum.rank)), Q0)
        if val < r:
            continue
        w = tuple(
            sum((Fraction(c[i]) * datum.coweight_dirs[i][j] for i in range(datum.rank)), Q0)
            for j in range(datum.rank)
        )
        out.append(w)
    return out


def upper_complex(window, h, r):
    """U_h(r): the union of closed opposite sectors at special vertices above r."""
    return _upper_lower(window, h, r)[0]


def lower_complex(window, h, r):
    """L_h(r): the window minus the open opposite sectors at special vertices above r."""
    return _upper_lower(window, h, r)[1]


def upper_lower_certified(window, h, r):
    """U_h(r), L_h(r) and the certificate record of their defining inclusions."""
    up, low, eps = _upper_lower(window, h, r, with_eps=True)
    g = window.geometry
    cert = {"epsilon": eps}
    ok_low = True
    ok_band = True
    for cell in window.cells():
        if h.range_on_cell(g, cell)[1] <= r and cell not in low:
            ok_low = False
    sigma = g.base_chamber_at_infinity()
    r_low = residual_r(g, low, sigma)
    for cell in r_low:
        if not window.interior_cell(cell):
            continue
        mn, mx = h.range_on_cell(g, cell)
        if mn < r or mx > r + eps:
            ok_band = False
    ok_upper_bound = all(
        h.range_on_cell(g, cell)[0] <= r + eps for cell in low if window.interior_cell(cell)
    )
    cert["sublevel_in_lower"] = ok_low
    cert["lower_below_r_plus_eps"] = ok_upper_bound
    cert["residual_in_band"] = ok_band
    return up, low, cert


def _upper_lower(window, h, r, with_eps=False):
    """Fast membership via the extremal special dominator of each cell.

    Every point of a cell with simple floor levels k_i is strictly dominated
    by the special vertex at (k_i + 1), and that vertex maximizes the height
    among all special dominators; so the cell meets the union of open
    opposite sectors iff h(k+1) >= r.  Likewise the closed-sector hull of the
    cell is governed by its componentwise ceiling.
    """
    g = window.geometry
    ok, bad = h.is_generic_decreasing(g)
    if not ok:
        raise GeometryError(
            f"height is not strictly decreasing toward the boundary vertex of sector ray {bad}"
        )
    lam = h.coeffs
    upper = set()
    lower = set()
    r = Fraction(r)
    for cell in window.cells():
        dominator = Q0
        ceiling = Q0
        for i, pi in enumerate(g._simple_idx):
            f, k = cell[pi]
            dominator += lam[i] * (k + 1)
            ceiling += lam[i] * (k + 1 if f == FLOOR else k)
        if ceiling >= r:
            upper.add(cell)
        if dominator < r:
            lower.add(cell)
    if with_eps:
        return frozenset(upper), frozenset(lower), epsilon_for_height(g, h)
    return frozenset(upper), frozenset(lower)


def upper_lower_by_sectors(window, h, r):
    """Reference route: explicit sector membership tests over enumerated tips."""
    g = window.geometry
    ok, bad = h.is_generic_decreasing(g)
    if not ok:
        raise GeometryError(
            f"height is not strictly decreasing toward the boundary vertex of sector ray {bad}"
        )
    sigma_op = g.base_chamber_at_infinity().opposite()
    tips = special_vertices_above(window, h, r)
    upper = set()
    lower = set()
    for cell in window.cells():
        if any(g.cell_in_closed_sector(w, sigma_op, cell) for w in tips):
            upper.add(cell)
        if not any(g.cell_meets_open_sector(w, sigma_op, cell) for w in tips):
            lower.add(cell)
    return frozenset(upper), frozenset(lower)


def closed_sector_cells(window, tip, tau):
    """Cells of the window inside the closed cone from tip toward tau."""
    g = window.geometry
    return frozenset(
        c for c in window.cells() if g.cell_in_closed_sector(tip, tau, c)
    )


def covering_special_vertex(geometry, h, x):
    """A special vertex w with x in K_w(sigma_op) and h(w) > h(x) - epsilon."""
    datum = geometry.datum
    cell = geometry.cell_of_point(x)
    if not geometry.is_chamber(cell):
        # move into an incident chamber: project along a fully generic direction
        sigma = geometry.base_chamber_at_infinity()
        cell = geometry.project_toward(cell, sigma)
    special = [v for v in geometry.vertices(cell) if geometry.is_special_vertex(v)]
    if not special:
        raise GeometryError("chamber has no special vertex")
    u1 = special[0]
    c = [geometry.root_value(u1, pi) + 2 for pi in geometry._simple_idx]
    w = tuple(
        sum((c[i] * datum.coweight_dirs[i][j] for i in range(datum.rank)), Q0)
        for j in range(datum.rank)
    )
    return w


# --- horizontal (Coxeter-level) reduction ------------------------------------


@dataclass
class ReducedCoxeterData:
    """Rank-reduced wall data after cutting along one horizontal direction."""

    simple_indices: tuple  # surviving simple roots, as indices into the old simples
    gram: tuple  # Gram matrix of the surviving simple roots
    positive_roots: tuple  # coefficient tuples over the surviving simples
    height_coeffs: tuple  # restricted height coefficients
    horizontal_dim: int  # dimension of the horizontal face of the reduced chamber


def horizontal_dimension(h):
    """dim of the horizontal face of sigma for h: #zero coefficients - 1."""
    return sum(1 for c in h.coeffs if c == 0) - 1


def horizontal_reduction(datum, h):
    """One reduction step along a boundary vertex of sigma fixed by h.

    The surviving walls are those parallel to the chosen direction: the roots
    with zero coefficient on the removed simple root.  Dimension drops by
    exactly one and the horizontal dimension of the chamber drops by one.
    """
    zeros = [i for i, c in enumerate(h.coeffs) if c == 0]
    if not zeros:
        raise GeometryError("nothing to reduce: the height is already generic")
    if any(c > 0 for c in h.coeffs):
        raise GeometryError("height must be non-increasing toward the base chamber")
    i0 = zeros[0]
    keep = [i for i in range(datum.rank) if i != i0]
    gram = tuple(tuple(datum.gram[i][j] for j in keep) for i in keep)
    pos = []
    for root in datum.positive_roots:
        if root[i0] == 0:
            pos.append(tuple(root[i] for i in keep))
    coeffs = tuple(h.coeffs[i] for i in keep)
    reduced = ReducedCoxeterData(
        simple_indices=tuple(keep),
        gram=gram,
        positive_roots=tuple(sorted(pos, key=lambda c: (sum(c), c))),
        height_coeffs=coeffs,
        horizontal_dim=sum(1 for c in coeffs if c == 0) - 1,
    )
    assert len(reduced.simple_indices) == datum.rank - 1
    assert reduced.horizontal_dim == horizontal_dimension(h) - 1
    return reduced


def iterate_reduction(datum, h):
    """Reduce until the restricted height is strictly decreasing; returns the chain."""
    chain = []
    current_datum = datum
    current = h
    while any(c == 0 for c in current.coeffs):
        red = horizontal_reduction(current_datum, current)
        chain.append(red)
        current_datum = _datum_view(red)
        current = HeightForm(red.height_coeffs)
    return chain


class _datum_view:
    """Just enough of the RootDatum surface for iterated reduction."""

    def __init__(self, red):
        self.rank = len(red.simple_indices)
        self.gram = red.gram
        self.positive_roots = red.positive_roots
