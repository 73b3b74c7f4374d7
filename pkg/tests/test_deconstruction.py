"""Residual boundaries, sigma-convexity, the deconstruction filtration, U/L complexes."""

import random
from fractions import Fraction

import pytest

from sigmabuild.coxeter import FLOOR, WALL, AlcoveGeometry, GeometryError
from sigmabuild.root_system import build_root_system
from sigmabuild.windows import (
    HeightForm,
    Window,
    closed_sector_cells,
    covering_special_vertex,
    deconstruct,
    epsilon_for_height,
    horizontal_dimension,
    horizontal_reduction,
    iterate_reduction,
    lower_complex,
    residual_r,
    sigma_convex_check,
    sigma_length,
    upper_complex,
    upper_lower_certified,
)


@pytest.fixture(scope="module")
def a1():
    datum = build_root_system("A", 1)
    return datum, AlcoveGeometry(datum)


@pytest.fixture(scope="module")
def a2():
    datum = build_root_system("A", 2)
    return datum, AlcoveGeometry(datum)


def a1_interval(g, lo, hi):
    """Closed union of the A_1 chambers (lo, lo+1), ..., (hi-1, hi)."""
    cells = set()
    for k in range(lo, hi):
        cells |= g.closure(((FLOOR, k),))
    return frozenset(cells)


def test_residual_a1_interval(a1):
    datum, g = a1
    sigma = g.base_chamber_at_infinity()
    z = a1_interval(g, 0, 3)
    assert residual_r(g, z, sigma) == {((WALL, 0),)}


def test_residual_full_window_is_outward_rim(a2):
    datum, g = a2
    sigma = g.base_chamber_at_infinity()
    window = Window.radius(datum, 2, g)
    z = window.cells()
    r = residual_r(g, z, sigma)
    # brute force against the definition
    op = sigma.opposite()
    expected = {a for a in z if g.project_toward(a, op) not in z}
    assert r == expected
    assert r  # rim cells exist
    # no chamber is ever in R
    assert all(not g.is_chamber(a) for a in r)


def test_residual_single_chamber(a2):
    datum, g = a2
    sigma = g.base_chamber_at_infinity()
    c = next(iter(Window.radius(datum, 1, g).chambers()))
    z = frozenset(g.closure(c))
    r = residual_r(g, z, sigma)
    down = g.lower_face(c, sigma)
    interval = {a for a in z if down in g.closure(a) or a == down}
    assert r == z - interval


def test_sigma_length_a1(a1):
    datum, g = a1
    sigma = g.base_chamber_at_infinity()
    z = a1_interval(g, 0, 3)
    assert sigma_length(g, z, ((FLOOR, 2),), sigma) == 0
    assert sigma_length(g, z, ((FLOOR, 0),), sigma) == 2
    single = frozenset(g.closure(((FLOOR, 5),)))
    assert sigma_length(g, single, ((FLOOR, 5),), sigma) == 0


def test_sigma_convexity(a1):
    datum, g = a1
    sigma = g.base_chamber_at_infinity()
    ok, _ = sigma_convex_check(g, a1_interval(g, 0, 3), sigma)
    assert ok
    gap = a1_interval(g, 0, 1) | a1_interval(g, 2, 3)
    ok, witness = sigma_convex_check(g, gap, sigma)
    assert not ok
    assert ((FLOOR, 1),) in witness


def test_closed_sector_is_sigma_convex(a2):
    datum, g = a2
    sigma = g.base_chamber_at_infinity()
    window = Window.radius(datum, 3, g)
    tip = datum.zero()
    z = closed_sector_cells(window, tip, sigma.opposite())
    ok, _ = sigma_convex_check(g, z, sigma)
    assert ok


def test_single_chamber_is_sigma_convex(a2):
    datum, g = a2
    sigma = g.base_chamber_at_infinity()
    c = next(iter(Window.radius(datum, 1, g).chambers()))
    ok, _ = sigma_convex_check(g, frozenset(g.closure(c)), sigma)
    assert ok


def test_deconstruct_a1_interval(a1):
    datum, g = a1
    sigma = g.base_chamber_at_infinity()
    z = a1_interval(g, 0, 3)
    result = deconstruct(g, z, sigma)
    assert result.residual == {((WALL, 0),)}
    assert result.filtration[0] == result.residual
    assert result.filtration[-1] == z
    # chambers are added in sigma-ward order (0,1), (1,2), (2,3)
    added = [s.chamber for s in result.steps]
    assert added == [((FLOOR, 0),), ((FLOOR, 1),), ((FLOOR, 2),)]
    for step in result.steps:
        assert all(step.certificates.values())


def test_deconstruct_empty(a1):
    datum, g = a1
    sigma = g.base_chamber_at_infinity()
    result = deconstruct(g, frozenset(), sigma)
    assert result.filtration == [frozenset()]
    assert result.steps == []


def test_deconstruct_sector_corner(a2):
    datum, g = a2
    sigma = g.base_chamber_at_infinity()
    window = Window.radius(datum, 3, g)
    tip = datum.zero()
    sector = closed_sector_cells(window, tip, sigma.opposite())
    # keep the three chambers closest to the tip
    chambers = sorted(
        (c for c in sector if g.is_chamber(c)),
        key=lambda c: g.wall_distance(c, g.project_toward(g.cell_of_point(tip), sigma.opposite())),
    )[:3]
    z = set()
    for c in chambers:
        z |= g.closure(c)
    result = deconstruct(g, frozenset(z), sigma)
    assert result.filtration[0] == residual_r(g, frozenset(z), sigma)
    for step in result.steps:
        assert all(step.certificates.values())


def test_deconstruct_rejects_nonconvex(a1):
    datum, g = a1
    sigma = g.base_chamber_at_infinity()
    gap = a1_interval(g, 0, 1) | a1_interval(g, 2, 3)
    with pytest.raises(GeometryError):
        deconstruct(g, gap, sigma)


def test_intersection_residual_identity(a2):
    datum, g = a2
    sigma = g.base_chamber_at_infinity()
    window = Window.radius(datum, 2, g)
    cx = window.complex()
    rng = random.Random(30)
    chambers = sorted(window.chambers())
    for _ in range(50):
        y = set()
        for c in rng.sample(chambers, 4):
            y |= g.closure(c)
        z = set()
        for c in rng.sample(chambers, 4):
            z |= g.closure(c)
        y, z = frozenset(y), frozenset(z)
        inter = y & z
        lhs = residual_r(g, inter, sigma)
        rhs = inter & (residual_r(g, y, sigma) | residual_r(g, z, sigma))
        assert lhs == rhs


def test_upper_lower_a1(a1):
    datum, g = a1
    window = Window(datum, [-4], [3], g)
    h = HeightForm((Fraction(-1),))
    up = upper_complex(window, h, 0)
    low = lower_complex(window, h, 0)
    # h = -kappa(., alpha): special vertices with h >= 0 are kappa-values <= 0;
    # their opposite sectors cover the kappa <= 0 half of the window.
    for cell in window.cells():
        vals = [g.root_value(v, 0) for v in g.vertices(cell)]
        if max(vals) <= 0:
            assert cell in up
        if min(vals) >= 0:
            assert cell in low
        if min(vals) < 0:
            assert cell not in low


def test_upper_complex_everything_below(a1):
    datum, g = a1
    window = Window(datum, [-4], [3], g)
    h = HeightForm((Fraction(-1),))
    up = upper_complex(window, h, -100)
    assert up == window.cells()


def test_upper_lower_certificates_a2(a2):
    datum, g = a2
    window = Window.radius(datum, 4, g)
    h = HeightForm((Fraction(-1), Fraction(-1)))  # -kappa(., alpha_1 + alpha_2)
    up, low, cert = upper_lower_certified(window, h, Fraction(-1))
    assert cert["sublevel_in_lower"]
    assert cert["lower_below_r_plus_eps"]
    assert cert["residual_in_band"]
    assert cert["epsilon"] > 0


def test_upper_lower_fast_route_matches_sector_route(a2):
    datum, g = a2
    from sigmabuild.windows import upper_lower_by_sectors

    window = Window.radius(datum, 3, g)
    for lam, r in [((-1, -1), -1), ((-1, -2), 0), ((-3, -1), -2)]:
        h = HeightForm(tuple(Fraction(x) for x in lam))
        up_fast = upper_complex(window, h, r)
        low_fast = lower_complex(window, h, r)
        up_ref, low_ref = upper_lower_by_sectors(window, h, r)
        assert up_fast == up_ref
        assert low_fast == low_ref


def test_upper_lower_dual_route_c2():
    from sigmabuild.windows import upper_lower_by_sectors

    datum = build_root_system("C", 2)
    g = AlcoveGeometry(datum)
    window = Window.radius(datum, 2, g)
    h = HeightForm((Fraction(-1), Fraction(-2)))
    for r in (-3, -1):
        up_fast = upper_complex(window, h, r)
        low_fast = lower_complex(window, h, r)
        up_ref, low_ref = upper_lower_by_sectors(window, h, r)
        assert up_fast == up_ref
        assert low_fast == low_ref


def test_deconstruct_c2_sector_corner():
    # the filtration machinery is family-generic: run it on a C_2 corner
    datum = build_root_system("C", 2)
    g = AlcoveGeometry(datum)
    window = Window.radius(datum, 2, g)
    sigma = g.base_chamber_at_infinity()
    corner = closed_sector_cells(window, datum.zero(), sigma.opposite())
    assert sum(1 for c in corner if g.is_chamber(c)) >= 4
    result = deconstruct(g, corner, sigma)
    assert result.filtration[0] == residual_r(g, corner, sigma)
    for step in result.steps:
        assert all(step.certificates.values())


def test_upper_lower_rejects_nongeneric(a2):
    datum, g = a2
    window = Window.radius(datum, 2, g)
    with pytest.raises(GeometryError):
        upper_complex(window, HeightForm((Fraction(-1), Fraction(0))), 0)


def test_sector_covering_simplex_constant(a2):
    datum, g = a2
    h = HeightForm((Fraction(-1), Fraction(-2)))
    eps = epsilon_for_height(g, h)
    rng = random.Random(77)
    sigma_op = g.base_chamber_at_infinity().opposite()
    for _ in range(100):
        vals = [Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3])) for _ in range(2)]
        from tests.test_coxeter import point_with_values

        x = point_with_values(datum, vals)
        w = covering_special_vertex(g, h, x)
        assert g.is_special_vertex(w)
        hx = h.value(g, x)
        hw = h.value(g, w)
        assert hw > hx - eps
        # x lies in the open opposite sector at w
        assert all(
            g.root_value(x, pi) < g.root_value(w, pi) for pi in g._simple_idx
        )


def test_horizontal_reduction_a2(a2):
    datum, g = a2
    h = HeightForm((Fraction(-1), Fraction(0)))
    assert horizontal_dimension(h) == 0
    red = horizontal_reduction(datum, h)
    assert len(red.simple_indices) == 1
    assert len(red.positive_roots) == 1  # rank-one wall system
    assert red.horizontal_dim == -1
    assert red.height_coeffs == (Fraction(-1),)


def test_horizontal_reduction_error_branch(a2):
    datum, g = a2
    with pytest.raises(GeometryError):
        horizontal_reduction(datum, HeightForm((Fraction(-1), Fraction(-2))))


def test_iterated_reduction_terminates():
    datum = build_root_system("A", 3)
    h = HeightForm((Fraction(0), Fraction(-1), Fraction(0)))
    chain = iterate_reduction(datum, h)
    assert len(chain) == horizontal_dimension(h) + 1 == 2
    assert all(c < 0 for c in chain[-1].height_coeffs)
    # each step drops the rank and the horizontal dimension by exactly one
    dims = [horizontal_dimension(h)] + [c.horizontal_dim for c in chain]
    assert dims == [1, 0, -1]
