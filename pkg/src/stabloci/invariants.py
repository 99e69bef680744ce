"""Degree-by-degree invariant rings from derivation kernels.

Group invariants are computed as joint kernels of Lie-algebra
derivations on the finite-dimensional space of polynomials of a fixed
degree: connected groups in characteristic zero have the same
invariants as their Lie algebras, so no averaging operator is needed.

Convention, fixed once: a matrix N acting on the coordinate vector
space induces the derivation  x_i -> -sum_j N[i][j] x_j  on coordinate
functions (the negative transpose action), extended by Leibniz.  All
weight bookkeeping below uses the induced function weights, which are
the negatives of the coordinate weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Sequence

from .actions import ProjectivePoint, UnipotentData
from .errors import DegreeBoundExceeded, DimensionMismatch, ZeroForm
from .linalg import RatMatrix, Vector, int_kernel, row_space_basis
from .poly import Exponent, MultiPoly, max_root_multiplicity


@dataclass(frozen=True)
class GradedInvariantSpace:
    """Basis of the invariants of one degree, with its defining data."""

    degree: int
    basis: tuple[MultiPoly, ...]
    constraints: str
    gm_weights: tuple[Fraction, ...] | None = None
    bidegree: tuple[int, int] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)


def monomials_of_degree(num_vars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of the given total degree, sorted."""
    out = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        exp = [0] * num_vars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    if degree == 0:
        out = [(0,) * num_vars]
    return sorted(set(out))


def derivation_images(n_matrix: RatMatrix) -> list[MultiPoly]:
    """Images of the coordinate functions under the induced derivation."""
    size = n_matrix.rows
    images = []
    for i in range(size):
        acc = MultiPoly.zero(size)
        for j in range(size):
            c = n_matrix.entry(i, j)
            if c != 0:
                acc = acc.add(MultiPoly.variable(size, j).scale(-c))
        images.append(acc)
    return images


def apply_derivation(images: Sequence[MultiPoly], p: MultiPoly) -> MultiPoly:
    out = MultiPoly.zero(p.num_vars)
    for i, image in enumerate(images):
        if image.is_zero():
            continue
        partial = p.partial(i)
        if not partial.is_zero():
            out = out.add(image.mul(partial))
    return out


def derivation_on_degree(n_matrix: RatMatrix, degree: int) -> RatMatrix:
    """Exact matrix of the induced derivation on the degree-d monomials."""
    if degree < 0:
        raise DegreeBoundExceeded("degree must be nonnegative")
    size = n_matrix.rows
    monos = monomials_of_degree(size, degree)
    index = {m: r for r, m in enumerate(monos)}
    images = derivation_images(n_matrix)
    rows = [[Fraction(0)] * len(monos) for _ in monos]
    for c, mono in enumerate(monos):
        image = apply_derivation(images, MultiPoly.monomial(size, mono))
        for exp, coeff in image.terms.items():
            rows[index[exp]][c] = coeff
    return RatMatrix(rows)


def _kernel_on_monomials(
    operator_images: Sequence[Sequence[MultiPoly]], monos: Sequence[Exponent], num_vars: int
) -> list[Vector]:
    """Joint kernel of derivations restricted to a span of monomials.

    Rows are collected over every operator's image monomials; entries
    are cleared to integers rowwise so the fraction-free kernel applies.
    """
    columns: list[dict[tuple[int, Exponent], Fraction]] = []
    row_keys: dict[tuple[int, Exponent], int] = {}
    for c, mono in enumerate(monos):
        col: dict[tuple[int, Exponent], Fraction] = {}
        p = MultiPoly.monomial(num_vars, mono)
        for op_index, images in enumerate(operator_images):
            image = apply_derivation(images, p)
            for exp, coeff in image.terms.items():
                key = (op_index, exp)
                if key not in row_keys:
                    row_keys[key] = len(row_keys)
                col[key] = coeff
        columns.append(col)
    nrows = len(row_keys)
    rows = [[Fraction(0)] * len(monos) for _ in range(nrows)]
    for c, col in enumerate(columns):
        for key, coeff in col.items():
            rows[row_keys[key]][c] = coeff
    int_rows = []
    for row in rows:
        denom = 1
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        int_rows.append([int(x * denom) for x in row])
    return int_kernel(int_rows, len(monos))


def _vectors_to_polys(
    vectors: Iterable[Vector], monos: Sequence[Exponent], num_vars: int
) -> list[MultiPoly]:
    polys = []
    for v in vectors:
        terms = {m: c for m, c in zip(monos, v) if c != 0}
        polys.append(MultiPoly(num_vars, terms))
    return polys


def unipotent_invariants(
    u: UnipotentData,
    degree: int,
    gm_weights: Sequence[int] | None = None,
    degree_cap: int = 12,
) -> GradedInvariantSpace:
    """Joint kernel of the generator derivations in one degree.

    When grading weights are supplied the computation runs per weight
    block (the derivations shift function weights homogeneously) and
    each basis element is tagged with its function weight.
    """
    if degree < 0 or degree > degree_cap:
        raise DegreeBoundExceeded(f"degree {degree} outside [0, {degree_cap}]")
    num_vars = u.generators[0].rows if u.dim else (len(gm_weights) if gm_weights else 0)
    if num_vars == 0:
        raise DimensionMismatch("cannot infer the coordinate count")
    if degree == 0:
        return GradedInvariantSpace(
            degree=0,
            basis=(MultiPoly.const(num_vars, 1),),
            constraints="constants",
            gm_weights=(Fraction(0),) if gm_weights is not None else None,
        )
    images = [derivation_images(g) for g in u.generators]
    monos = monomials_of_degree(num_vars, degree)
    constraints = f"annihilated by {u.dim} unipotent derivation(s), degree {degree}"
    if gm_weights is None:
        kernel = _kernel_on_monomials(images, monos, num_vars)
        basis = _vectors_to_polys(kernel, monos, num_vars)
        return GradedInvariantSpace(degree=degree, basis=tuple(basis), constraints=constraints)
    fn_weights = [-w for w in gm_weights]
    blocks: dict[int, list[Exponent]] = {}
    for mono in monos:
        w = sum(e * fw for e, fw in zip(mono, fn_weights))
        blocks.setdefault(w, []).append(mono)
    basis: list[MultiPoly] = []
    weights: list[Fraction] = []
    for w in sorted(blocks):
        block = blocks[w]
        kernel = _kernel_on_monomials(images, block, num_vars)
        for p in _vectors_to_polys(kernel, block, num_vars):
            basis.append(p)
            weights.append(Fraction(-w))
    return GradedInvariantSpace(
        degree=degree,
        basis=tuple(basis),
        constraints=constraints + ", split by grading weight",
        gm_weights=tuple(weights),
    )


def _sym_raising(k: int) -> RatMatrix:
    rows = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]
    for j in range(1, k + 1):
        rows[j - 1][j] = Fraction(j)
    return RatMatrix(rows)


def _sym_lowering(k: int) -> RatMatrix:
    rows = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]
    for j in range(k):
        rows[j + 1][j] = Fraction(k - j)
    return RatMatrix(rows)


def _coordinate_weights_sym(n: int) -> list[int]:
    return [n - 2 * j for j in range(n + 1)]


def sl2_invariants_binary_form(
    n: int, d: int, degree_cap: int = 12
) -> GradedInvariantSpace:
    """Invariants of degree d in the coefficients of a binary n-form.

    Joint kernel of the raising and lowering derivations intersected
    with torus weight zero.
    """
    if n < 1:
        raise DimensionMismatch("form degree must be >= 1")
    if d < 0 or d > degree_cap:
        raise DegreeBoundExceeded(f"degree {d} outside [0, {degree_cap}]")
    num_vars = n + 1
    if d == 0:
        return GradedInvariantSpace(
            degree=0, basis=(MultiPoly.const(num_vars, 1),), constraints="constants"
        )
    images = [derivation_images(_sym_raising(n)), derivation_images(_sym_lowering(n))]
    fn_weights = [-w for w in _coordinate_weights_sym(n)]
    monos = [
        m
        for m in monomials_of_degree(num_vars, d)
        if sum(e * fw for e, fw in zip(m, fn_weights)) == 0
    ]
    kernel = _kernel_on_monomials(images, monos, num_vars)
    basis = _vectors_to_polys(kernel, monos, num_vars)
    return GradedInvariantSpace(
        degree=d,
        basis=tuple(basis),
        constraints=f"sl2 raising+lowering kernel at weight 0, binary {n}-form",
        gm_weights=tuple(Fraction(0) for _ in basis),
    )


def _product_matrices(n: int) -> tuple[RatMatrix, RatMatrix]:
    """Raising and lowering on (plane coordinates) + (n-form coefficients).

    The plane is the defining 2-dimensional representation plus a
    trivial line; variables are ordered z0, z1, z2, w0..wn.
    """
    size = 3 + n + 1
    raising = [[Fraction(0)] * size for _ in range(size)]
    lowering = [[Fraction(0)] * size for _ in range(size)]
    raising[0][1] = Fraction(1)
    lowering[1][0] = Fraction(1)
    sym_e = _sym_raising(n)
    sym_f = _sym_lowering(n)
    for i in range(n + 1):
        for j in range(n + 1):
            raising[3 + i][3 + j] = sym_e.entry(i, j)
            lowering[3 + i][3 + j] = sym_f.entry(i, j)
    return RatMatrix(raising), RatMatrix(lowering)


def _bidegree_monomials(n: int, a: int, b: int) -> list[Exponent]:
    z_monos = monomials_of_degree(3, a)
    w_monos = monomials_of_degree(n + 1, b)
    return sorted(zm + wm for zm in z_monos for wm in w_monos)


def product_sl2_invariants(
    n: int, a: int, b: int, bidegree_cap: int = 16
) -> GradedInvariantSpace:
    """Invariants of bidegree (a, b) on the plane-times-forms product.

    The kernel of the raising derivation on the weight-zero block is
    computed first and every element is then checked against the
    lowering derivation, which must also kill it; the check is an exact
    assertion, not a heuristic.
    """
    if a < 0 or b < 0 or a + b > bidegree_cap:
        raise DegreeBoundExceeded(f"bidegree ({a},{b}) outside the cap {bidegree_cap}")
    raising, lowering = _product_matrices(n)
    num_vars = 3 + n + 1
    fn_weights = [-1, 1, 0] + [-w for w in _coordinate_weights_sym(n)]
    monos = [
        m
        for m in _bidegree_monomials(n, a, b)
        if sum(e * fw for e, fw in zip(m, fn_weights)) == 0
    ]
    if not monos:
        return GradedInvariantSpace(
            degree=a + b, basis=(), constraints="empty weight-0 block", bidegree=(a, b)
        )
    e_images = derivation_images(raising)
    kernel = _kernel_on_monomials([e_images], monos, num_vars)
    basis = _vectors_to_polys(kernel, monos, num_vars)
    f_images = derivation_images(lowering)
    for p in basis:
        if not apply_derivation(f_images, p).is_zero():
            raise AssertionError("weight-0 raising kernel escaped the lowering kernel")
    return GradedInvariantSpace(
        degree=a + b,
        basis=tuple(basis),
        constraints=f"sl2 invariants of bidegree ({a},{b}) on plane x forms",
        gm_weights=tuple(Fraction(0) for _ in basis),
        bidegree=(a, b),
    )


def restriction_to_slice(space: GradedInvariantSpace, n: int) -> GradedInvariantSpace:
    """Restrict product invariants to the distinguished plane point.

    Substitutes (z0, z1, z2) = (1, 0, 1) and returns an echelon basis of
    the span; every restricted element is verified to be annihilated by
    the one-parameter derivation on the form coefficients, exactly.
    """
    if space.bidegree is None:
        raise DimensionMismatch("expected a product invariant space")
    a, b = space.bidegree
    keep = list(range(3, 3 + n + 1))
    restricted = []
    for p in space.basis:
        q = p.substitute_constants({0: Fraction(1), 1: Fraction(0), 2: Fraction(1)})
        restricted.append(q.restrict_vars(keep))
    monos = monomials_of_degree(n + 1, b)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for q in restricted:
        row = [Fraction(0)] * len(monos)
        for exp, c in q.terms.items():
            row[index[exp]] = c
        rows.append(row)
    echelon = row_space_basis(rows)
    basis = _vectors_to_polys(echelon, monos, n + 1)
    ga_images = derivation_images(_sym_raising(n))
    for q in basis:
        if not apply_derivation(ga_images, q).is_zero():
            raise AssertionError("restricted invariant escaped the additive-group kernel")
    return GradedInvariantSpace(
        degree=b,
        basis=tuple(basis),
        constraints=f"slice restriction of bidegree ({a},{b}) invariants",
    )


@dataclass(frozen=True)
class NonvanishingReport:
    found: bool
    witness_degree: int | None
    bound: int


def invariant_nonvanishing_verdict(
    spaces: Sequence[GradedInvariantSpace], x: ProjectivePoint
) -> NonvanishingReport:
    """One-sided semistability probe by evaluating computed invariants.

    True certifies a nonvanishing positive-degree invariant; False only
    means none was found up to the examined bound.
    """
    bound = 0
    for space in spaces:
        if space.degree < 1:
            continue
        bound = max(bound, space.degree)
        for p in space.basis:
            if p.evaluate(x.coords) != 0:
                return NonvanishingReport(found=True, witness_degree=space.degree, bound=bound)
    return NonvanishingReport(found=False, witness_degree=None, bound=bound)


@dataclass(frozen=True)
class InfinityReport:
    multiplicity_at_infinity: int
    max_multiplicity: int


def points_at_infinity_classifier(n: int, x: ProjectivePoint) -> InfinityReport:
    """Root multiplicities of a binary form given by its coefficients.

    Coordinate j is the coefficient of s^(n-j) t^j; the distinguished
    fixed point of the additive group is [1:0], whose multiplicity as a
    root is the number of trailing zero coefficients.  The largest
    multiplicity anywhere is found by gcd chains, with no root
    extraction.
    """
    if len(x.coords) != n + 1:
        raise DimensionMismatch(f"a binary {n}-form needs {n + 1} coefficients")
    if all(c == 0 for c in x.coords):
        raise ZeroForm("the zero form has no root data")
    top = max(j for j, c in enumerate(x.coords) if c != 0)
    mult_inf = n - top
    coeffs = [Fraction(c) for c in x.coords[: top + 1]]
    finite_max = max_root_multiplicity(coeffs) if len(coeffs) > 1 else 0
    return InfinityReport(
        multiplicity_at_infinity=mult_inf,
        max_multiplicity=max(mult_inf, finite_max),
    )


@dataclass(frozen=True)
class GeneratorDegreeRow:
    degree: int
    dim: int
    from_products: int
    new_generators: int


def generator_degree_report(
    spaces: Sequence[GradedInvariantSpace],
) -> list[GeneratorDegreeRow]:
    """New-generator count per degree, by exact linear algebra.

    A degree-d invariant is new when it lies outside the span of
    products of lower-degree invariants; products of full invariant
    spaces realise every product of algebra elements of lower degrees.
    """
    by_degree = {s.degree: s for s in spaces if s.degree >= 1}
    report = []
    for d in sorted(by_degree):
        space = by_degree[d]
        if not space.basis:
            report.append(GeneratorDegreeRow(degree=d, dim=0, from_products=0, new_generators=0))
            continue
        num_vars = space.basis[0].num_vars
        monos = monomials_of_degree(num_vars, d)
        index = {m: i for i, m in enumerate(monos)}
        product_rows = []
        for d1 in range(1, d):
            d2 = d - d1
            if d1 > d2 or d1 not in by_degree or d2 not in by_degree:
                continue
            for p in by_degree[d1].basis:
                for q in by_degree[d2].basis:
                    prod = p.mul(q)
                    row = [Fraction(0)] * len(monos)
                    for exp, c in prod.terms.items():
                        row[index[exp]] = c
                    product_rows.append(row)
        product_dim = len(row_space_basis(product_rows)) if product_rows else 0
        report.append(
            GeneratorDegreeRow(
                degree=d,
                dim=space.dim,
                from_products=product_dim,
                new_generators=space.dim - product_dim,
            )
        )
    return report


def sl2_weight_counting_dimension(n: int, d: int) -> int:
    """Independent dimension count: weight-0 minus weight-2 multiplicities.

    Multiplicities are computed purely combinatorially from the
    symmetric-power weights, with no linear algebra.
    """
    weights = _coordinate_weights_sym(n)

    def multiplicity(target: int) -> int:
        count = 0
        for combo in combinations_with_replacement(weights, d):
            if sum(combo) == target:
                count += 1
        return count

    return multiplicity(0) - multiplicity(2)
