"""Points, forms, quadrics, polarity: exhaustive checks at desk scale."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadswitch.gf2geom import (
    CONTAINED,
    ELLIPTIC,
    EXTERNAL,
    HYPERBOLIC,
    PARABOLIC,
    GeometryError,
    QuadraticForm,
    SECANT,
    Subspace,
    TANGENT,
    bilinear,
    canonical_form,
    classify_line,
    count_external_lines_through,
    echelonize,
    enumerate_points,
    nonquadric_points,
    nucleus,
    perp,
    point_count,
    quadric_points,
    quadric_size,
    span,
    whole_space,
)


def poly_eval(rows, x):
    """Oracle: evaluate sum a_ij x_i x_j by expanding coordinates directly."""
    total = 0
    n1 = len(rows)
    xs = [(x >> i) & 1 for i in range(n1)]
    for i in range(n1):
        for j in range(i, n1):
            if (rows[i] >> j) & 1:
                total += xs[i] * xs[j]
    return total % 2


def monomials(form):
    return {(i, j) for i, row in enumerate(form.rows) for j in range(len(form.rows)) if (row >> j) & 1}


def all_lines(n):
    """Every projective line of PG(n,2) as a sorted triple."""
    top = 1 << (n + 1)
    for a in range(1, top):
        for b in range(a + 1, top):
            c = a ^ b
            if c > b:
                yield (a, b, c)


# --- points -------------------------------------------------------------------


def test_enumerate_points_smallest_line():
    assert enumerate_points(1) == [1, 2, 3]


@pytest.mark.parametrize("n,count", [(5, 63), (7, 255)])
def test_enumerate_points_count(n, count):
    pts = enumerate_points(n)
    assert len(pts) == count == point_count(n)
    assert pts == sorted(pts)


def test_enumerate_points_rejects_bad_dimension():
    with pytest.raises(GeometryError):
        enumerate_points(0)


# --- canonical forms ------------------------------------------------------------


def test_canonical_hyperbolic_monomials():
    form = canonical_form(5, HYPERBOLIC)
    assert monomials(form) == {(0, 1), (2, 3), (4, 5)}


def test_canonical_elliptic_monomials():
    form = canonical_form(5, ELLIPTIC)
    assert monomials(form) == {(0, 0), (0, 1), (1, 1), (2, 3), (4, 5)}


def test_canonical_parabolic_monomials():
    form = canonical_form(4, PARABOLIC)
    assert monomials(form) == {(0, 0), (1, 2), (3, 4)}


@pytest.mark.parametrize(
    "n,kind",
    [(4, ELLIPTIC), (4, HYPERBOLIC), (5, PARABOLIC), (6, ELLIPTIC), (7, PARABOLIC)],
)
def test_canonical_form_parity_mismatch(n, kind):
    with pytest.raises(GeometryError):
        canonical_form(n, kind)


def test_singular_form_rejected():
    # X0X1 alone has too many zeros in PG(3,2) to be non-singular hyperbolic
    with pytest.raises(GeometryError):
        QuadraticForm(3, HYPERBOLIC, (0b0010, 0, 0, 0))


def test_evaluate_matches_polynomial_oracle():
    for n, kind in [(5, ELLIPTIC), (5, HYPERBOLIC), (4, PARABOLIC)]:
        form = canonical_form(n, kind)
        for x in enumerate_points(n):
            assert form.evaluate(x) == poly_eval(form.rows, x)


# --- quadric sizes ---------------------------------------------------------------


@pytest.mark.parametrize(
    "n,kind,size",
    [
        (5, ELLIPTIC, 27),
        (5, HYPERBOLIC, 35),
        (4, PARABOLIC, 15),
    ],
)
def test_quadric_point_examples(n, kind, size):
    assert len(quadric_points(canonical_form(n, kind))) == size


def test_quadric_sizes_all_desk_dimensions():
    for n in range(4, 10):
        kinds = (PARABOLIC,) if n % 2 == 0 else (ELLIPTIC, HYPERBOLIC)
        for kind in kinds:
            form = canonical_form(n, kind)
            assert len(quadric_points(form)) == quadric_size(n, kind)


# --- bilinear form ---------------------------------------------------------------


@pytest.mark.parametrize("kind", [ELLIPTIC, HYPERBOLIC])
def test_bilinear_alternating(kind):
    form = canonical_form(5, kind)
    for x in enumerate_points(5):
        assert bilinear(form, x, x) == 0


def test_bilinear_symmetric_sampled():
    rng = random.Random(42)
    for kind in (ELLIPTIC, HYPERBOLIC):
        form = canonical_form(7, kind)
        pts = enumerate_points(7)
        for _ in range(200):
            x, y = rng.choice(pts), rng.choice(pts)
            assert bilinear(form, x, y) == bilinear(form, y, x)


def test_bilinear_hyperbolic_e0_e1():
    form = canonical_form(5, HYPERBOLIC)
    # expand X0X1+X2X3+X4X5 on e0, e1, e0+e1 by hand: 0 + 0 + 1
    e0, e1 = 1, 2
    assert poly_eval(form.rows, e0) == 0
    assert poly_eval(form.rows, e1) == 0
    assert poly_eval(form.rows, e0 ^ e1) == 1
    assert bilinear(form, e0, e1) == 1


def test_bilinear_is_polarization_of_evaluation():
    rng = random.Random(1)
    for kind in (ELLIPTIC, HYPERBOLIC):
        form = canonical_form(5, kind)
        pts = enumerate_points(5)
        for _ in range(300):
            x, y = rng.choice(pts), rng.choice(pts)
            expect = (
                0
                if x == y
                else (poly_eval(form.rows, x ^ y) + poly_eval(form.rows, x) + poly_eval(form.rows, y)) % 2
            )
            assert bilinear(form, x, y) == expect


# --- subspaces and the polarity ---------------------------------------------------


def random_subspace(rng, n, max_vdim):
    pts = [rng.randrange(1, 1 << (n + 1)) for _ in range(rng.randint(1, max_vdim))]
    return span(n, pts)


def test_span_examples():
    assert span(5, [9]).vdim == 1
    assert span(5, [9, 9]).vdim == 1
    assert span(5, [1, 2, 3]).vdim == 2
    with pytest.raises(GeometryError):
        span(5, [])


@given(st.lists(st.integers(min_value=1, max_value=63), min_size=1, max_size=7))
@settings(max_examples=80)
def test_span_properties(points):
    sub = span(5, points)
    assert len(sub.points()) == (1 << sub.vdim) - 1
    assert all(sub.contains(p) for p in points)
    # echelon representation is canonical: re-spanning the points reproduces it
    assert span(5, sub.points()).basis == sub.basis


@given(st.lists(st.integers(min_value=1, max_value=255), min_size=1, max_size=9))
@settings(max_examples=80)
def test_echelonize_idempotent_and_order_free(vectors):
    basis = echelonize(vectors)
    assert echelonize(basis) == basis
    shuffled = list(reversed(vectors))
    assert echelonize(shuffled) == basis


def test_perp_whole_space_is_trivial():
    form = canonical_form(5, ELLIPTIC)
    assert perp(form, whole_space(5)).vdim == 0


def test_perp_dimension_involution_containment():
    rng = random.Random(3)
    for kind in (ELLIPTIC, HYPERBOLIC):
        form = canonical_form(5, kind)
        for _ in range(50):
            u = random_subspace(rng, 5, 5)
            pu = perp(form, u)
            assert u.vdim + pu.vdim == 6
            assert perp(form, pu) == u
            w = span(5, u.points() + [rng.randrange(1, 64)])
            assert perp(form, w).is_subspace_of(pu)


def test_perp_rejects_parabolic():
    form = canonical_form(4, PARABOLIC)
    with pytest.raises(GeometryError):
        perp(form, span(4, [1]))


def test_perp_of_singular_line_n7_elliptic():
    # a line inside the quadric has 2^(n-t-1) + 2^((n-1)/2) = 40 points off Q in its perp
    form = canonical_form(7, ELLIPTIC)
    line = None
    for a, b, c in all_lines(7):
        if form.contains(a) and form.contains(b) and form.contains(c):
            line = (a, b, c)
            break
    assert line is not None
    pp = perp(form, span(7, list(line)))
    off = [p for p in pp.points() if not form.contains(p)]
    assert len(off) == 40


# --- line classification ----------------------------------------------------------


def test_classify_line_definitional():
    form = canonical_form(5, ELLIPTIC)
    zeros = quadric_points(form)
    seen = set()
    for a, b, c in all_lines(5):
        hits = len({a, b, c} & zeros)
        want = {0: EXTERNAL, 1: TANGENT, 2: SECANT, 3: CONTAINED}[hits]
        assert classify_line(form, a, b) == want
        seen.add(want)
    assert seen == {EXTERNAL, TANGENT, SECANT, CONTAINED}


def test_classify_line_rejects_equal_points():
    form = canonical_form(5, ELLIPTIC)
    with pytest.raises(GeometryError):
        classify_line(form, 7, 7)


def test_external_line_total_n5_elliptic():
    # full enumeration of all 651 lines; closed form (1/3)*2^(n-2)*(2^((n+1)/2)+1)*(2^((n-1)/2)+1)
    form = canonical_form(5, ELLIPTIC)
    lines = list(all_lines(5))
    assert len(lines) == 651
    external = sum(1 for a, b, _ in lines if classify_line(form, a, b) == EXTERNAL)
    assert external == 120 == (1 * 8 * 9 * 5) // 3


@pytest.mark.parametrize("kind,count", [(ELLIPTIC, 10), (HYPERBOLIC, 6)])
def test_external_lines_through_every_point_n5(kind, count):
    form = canonical_form(5, kind)
    for x in nonquadric_points(form):
        assert count_external_lines_through(form, x) == count


def test_external_lines_through_rejects_quadric_point():
    form = canonical_form(5, ELLIPTIC)
    x = min(quadric_points(form))
    with pytest.raises(GeometryError):
        count_external_lines_through(form, x)


def test_external_lines_through_even_dimension():
    # nucleus sees none; every other point sees 2^(n-2) of them (the off-by-one
    # variant 2^(n-2)-1 fails the triple-count identity below)
    form = canonical_form(4, PARABOLIC)
    nuc = nucleus(form)
    for x in nonquadric_points(form):
        want = 0 if x == nuc else 4
        assert count_external_lines_through(form, x) == want


@pytest.mark.parametrize(
    "n,kind", [(5, ELLIPTIC), (5, HYPERBOLIC), (4, PARABOLIC), (2, PARABOLIC)]
)
def test_external_line_count_sum_identity(n, kind):
    # every external line has 3 points, so per-point counts sum to 3x the total
    form = canonical_form(n, kind)
    total = sum(1 for a, b, _ in all_lines(n) if classify_line(form, a, b) == EXTERNAL)
    per_point = sum(count_external_lines_through(form, x) for x in nonquadric_points(form))
    assert per_point == 3 * total


# --- nucleus ----------------------------------------------------------------------


def brute_force_nucleus(form):
    """Oracle: the non-quadric point through which every line is tangent."""
    hits = []
    for x in nonquadric_points(form):
        if all(
            classify_line(form, x, y) == TANGENT
            for y in enumerate_points(form.n)
            if y != x
        ):
            hits.append(x)
    assert len(hits) == 1
    return hits[0]


@pytest.mark.parametrize("n", [2, 4])
def test_nucleus_is_e0_for_canonical_parabolic(n):
    form = canonical_form(n, PARABOLIC)
    assert nucleus(form) == 1 == brute_force_nucleus(form)


def test_nucleus_rejects_elliptic():
    with pytest.raises(GeometryError):
        nucleus(canonical_form(5, ELLIPTIC))


# --- hyperplane sections -----------------------------------------------------------


def hyperplanes(n):
    """Every hyperplane of PG(n,2) as its point list, via a linear functional."""
    top = 1 << (n + 1)
    for c in range(1, top):
        yield [x for x in range(1, top) if (x & c).bit_count() % 2 == 0]


@pytest.mark.parametrize(
    "n,kind",
    [(5, ELLIPTIC), (5, HYPERBOLIC), (7, ELLIPTIC), (7, HYPERBOLIC)],
)
def test_hyperplane_nonquadric_counts(n, kind):
    form = canonical_form(n, kind)
    h = 1 << ((n - 1) // 2)
    base = 1 << (n - 1)
    allowed = {base, base + h} if kind == ELLIPTIC else {base, base - h}
    for sigma in hyperplanes(n):
        off = sum(1 for p in sigma if not form.contains(p))
        assert off in allowed


def test_singular_space_perp_meets_quadric_in_cone_size():
    # perp of a t-space inside the quadric carries 2^(n-t-1) -+ 2^((n-1)/2) - 1
    # quadric points (minus sign for elliptic), the point count of a cone over
    # the small quadric of the same kind
    from quadswitch.switching import find_singular_subspace, legal_t_range

    for n in (5, 7):
        for kind in (ELLIPTIC, HYPERBOLIC):
            form = canonical_form(n, kind)
            sign = -1 if kind == ELLIPTIC else 1
            for t in legal_t_range(n, kind, "t"):
                alpha = find_singular_subspace(form, t)
                pp = perp(form, alpha)
                on_q = sum(1 for p in pp.points() if form.contains(p))
                want = (1 << (n - t - 1)) + sign * (1 << ((n - 1) // 2)) - 1
                assert on_q == want


def test_subspace_point_count_matches_vdim():
    rng = random.Random(9)
    for _ in range(30):
        sub = random_subspace(rng, 6, 6)
        assert len(sub.points()) == (1 << sub.vdim) - 1


def test_subspace_rejects_non_echelon_basis():
    with pytest.raises(GeometryError):
        Subspace(5, (3, 1))  # reducible pair: 3 ^ 1 = 2 has a fresh pivot
