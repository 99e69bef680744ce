"""Graded-unipotent stability: weight ladders, orbit sweeps, conditions.

For an action graded by a circle with character twist, the twisted
coordinate weights ladder up from their minimum.  The fixed locus of
minimal weight is a coordinate subspace; points flowing into it form an
open set preserved by the unipotent group (each generator strictly
raises the twisted weight).  Stability for the extended group is then
"flows to the minimal fixed locus, but cannot be translated into it":
the translate of a point along a one-parameter unipotent direction has
polynomial coordinates in the group parameter, so membership in the
sweep of the fixed locus is exactly solvability of a finite polynomial
system; for one-dimensional groups a univariate gcd computation.

Stabiliser dimensions are exact kernel computations.  On the minimal
fixed locus the stabiliser condition collapses to a linear one (the
generators raise weights, so "fixes the point projectively" means
"kills the vector"), which makes the two semistability-equals-stability
conditions exactly decidable for one generator, or for fixed loci of
coordinate dimension at most two; larger cases fall back to seeded
exact-per-sample checks and say so.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Sequence

from .actions import GradingData, ProjectivePoint, UnipotentData, WeightedAction
from .errors import (
    DimensionMismatch,
    MTooSmall,
    NotAdapted,
    TrivialAction,
    UnsupportedUnipotentDimension,
)
from .linalg import RatMatrix, Vector, rref_kernel, zero_vec
from .poly import (
    MultiPoly,
    poly_gcd_univariate,
    rational_roots_with_multiplicity,
    univariate_coeffs,
)
from .torus import (
    StabilityVerdict,
    Status,
    chamber_contains_zero_interior,
    lowest_bounded_chamber,
    torus_verdict,
)


@dataclass(frozen=True)
class OmegaSequence:
    """Strictly increasing distinct twisted grading weights."""

    values: tuple[Fraction, ...]

    def minimum(self) -> Fraction:
        return self.values[0]


@dataclass(frozen=True)
class AdaptedWindow:
    """Open character window in which a twist is adapted.

    `well_adapted_hi` is the default choice just above the lower end;
    any character strictly inside the window yields the same loci, so
    the midpoint is used.
    """

    lo: Fraction
    hi: Fraction
    well_adapted_hi: Fraction


@dataclass(frozen=True)
class SweepCertificate:
    in_sweep: bool
    witness: str = ""
    witness_params: Vector | None = None
    heuristic: bool = False


@dataclass(frozen=True)
class StabDimReport:
    point: ProjectivePoint
    dim: int
    kernel_basis: tuple[Vector, ...]


class ConditionVerdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    PROBABLY_HOLDS = "probably-holds"


@dataclass(frozen=True)
class ConditionReport:
    verdict: ConditionVerdict
    exact: bool
    witness: ProjectivePoint | None = None
    detail: str = ""
    seed: int | None = None
    samples: int = 0


@dataclass(frozen=True)
class BlowupCentre:
    """Determinantal description of the maximal-stabiliser locus.

    `equations` cut out the locus where the single generator fixes the
    point projectively (2x2 minors of the generator image against the
    point); `max_stab_dim_x0min` is the exact maximum of the stabiliser
    dimension over the open set flowing to the minimal fixed locus, and
    `meets_x0min` says whether the cut-out locus intersects that set.
    No blow-up is performed.
    """

    max_stab_dim_x0min: int
    equations: tuple[MultiPoly, ...]
    meets_x0min: bool
    fixed_kernel_basis: tuple[Vector, ...]


# -- weight ladders -----------------------------------------------------


def omega_sequence(g: GradingData) -> OmegaSequence:
    return OmegaSequence(values=tuple(sorted(set(g.twisted_weights()))))


def adapted_window(om: OmegaSequence) -> AdaptedWindow:
    if len(om.values) < 2:
        raise TrivialAction("a single grading weight has no adapted window")
    lo, hi = om.values[0], om.values[1]
    return AdaptedWindow(lo=lo, hi=hi, well_adapted_hi=lo + (hi - lo) / 2)


def min_weight_indices(g: GradingData) -> tuple[int, ...]:
    tw = g.twisted_weights()
    lowest = min(tw)
    return tuple(i for i, w in enumerate(tw) if w == lowest)


def in_Z_min(g: GradingData, x: ProjectivePoint) -> bool:
    """Supported only on coordinates of minimal twisted weight."""
    if len(x.coords) != len(g.gm_weights):
        raise DimensionMismatch("point dimension differs from grading")
    lowest = set(min_weight_indices(g))
    return all(i in lowest for i in x.support())


def in_X0_min(g: GradingData, x: ProjectivePoint) -> bool:
    """The circle flow sends x into the minimal fixed locus."""
    if len(x.coords) != len(g.gm_weights):
        raise DimensionMismatch("point dimension differs from grading")
    tw = g.twisted_weights()
    return min(tw[i] for i in x.support()) == min(tw)


def is_adapted(g: GradingData) -> bool:
    return chamber_contains_zero_interior(lowest_bounded_chamber(g))


# -- unipotent translates ------------------------------------------------


def _exp_nilpotent_poly(n_matrix: RatMatrix, var_index: int, num_vars: int) -> list[list[MultiPoly]]:
    """Matrix of exp(s * N) with entries polynomial in variable `var_index`."""
    size = n_matrix.rows
    result = [
        [MultiPoly.const(num_vars, 1) if i == j else MultiPoly.zero(num_vars) for j in range(size)]
        for i in range(size)
    ]
    power = RatMatrix.identity(size)
    factorial = 1
    for k in range(1, size):
        power = power.mul(n_matrix)
        if power.is_zero():
            break
        factorial *= k
        exp = [0] * num_vars
        exp[var_index] = k
        s_k = MultiPoly.monomial(num_vars, tuple(exp), Fraction(1, factorial))
        for i in range(size):
            for j in range(size):
                c = power.entry(i, j)
                if c != 0:
                    result[i][j] = result[i][j].add(s_k.scale(c))
    return result


def _apply_poly_matrix(
    matrix: list[list[MultiPoly]], coords: list[MultiPoly]
) -> list[MultiPoly]:
    out = []
    for row in matrix:
        acc = MultiPoly.zero(coords[0].num_vars)
        for entry, c in zip(row, coords):
            if not entry.is_zero() and not c.is_zero():
                acc = acc.add(entry.mul(c))
        out.append(acc)
    return out


def translate_coordinate_polys(
    u: UnipotentData, x: ProjectivePoint
) -> list[MultiPoly]:
    """Coordinates of exp(s_1 N_1)...exp(s_u N_u) x, polynomial in the s_j.

    The product of one-parameter subgroups parametrises the whole group
    when the generators span its Lie algebra (coordinates of the second
    kind), which is the data model's standing assumption.
    """
    dim = u.dim
    coords: list[MultiPoly] = [MultiPoly.const(dim, c) for c in x.coords]
    for j in range(dim - 1, -1, -1):
        matrix = _exp_nilpotent_poly(u.generators[j], j, dim)
        coords = _apply_poly_matrix(matrix, coords)
    return coords


# -- vanishing systems ---------------------------------------------------


def _solve_affine_linear(conds: list[MultiPoly], num_vars: int) -> Vector | None:
    rows = []
    rhs = []
    for c in conds:
        row = [Fraction(0)] * num_vars
        const = Fraction(0)
        for exp, coeff in c.terms.items():
            degree = sum(exp)
            if degree == 0:
                const = coeff
            else:
                row[exp.index(1)] = coeff
        rows.append(row)
        rhs.append(-const)
    from .linalg import solve

    return solve(RatMatrix(rows), rhs)


def _solve_vanishing(
    conds: list[MultiPoly], num_vars: int, depth: int
) -> tuple[str, Vector | None]:
    """Decide solvability of conds = 0 over the rationals where possible.

    Returns ("yes", witness), ("no", None) for exact decisions, or
    ("unknown", None) when neither elimination path applies.  A "yes"
    is always backed by an explicit rational witness; "no" is exact.
    """
    live = [c for c in conds if not c.is_zero()]
    if not live:
        return "yes", zero_vec(num_vars)
    if any(c.is_constant() for c in live):
        return "no", None
    if all(c.total_degree() <= 1 for c in live):
        sol = _solve_affine_linear(live, num_vars)
        return ("yes", sol) if sol is not None else ("no", None)
    if depth <= 0:
        return "unknown", None
    decided_no = False
    for cond in sorted(live, key=lambda c: (c.total_degree(), len(c.terms))):
        used = cond.variables_used()
        if len(used) != 1:
            continue
        var = used.pop()
        coeffs = univariate_coeffs(cond.restrict_vars([var]))
        roots = rational_roots_with_multiplicity(coeffs)
        exhaustive = sum(m for _, m in roots) == len(coeffs) - 1
        saw_unknown = False
        for root, _ in roots:
            substituted = [c.substitute_constants({var: root}) for c in live]
            outcome, witness = _solve_vanishing(substituted, num_vars, depth - 1)
            if outcome == "yes":
                assert witness is not None
                full = list(witness)
                full[var] = root
                return "yes", tuple(full)
            if outcome == "unknown":
                saw_unknown = True
        if exhaustive and not saw_unknown:
            # every root of this condition is rational and every branch
            # failed exactly, so the whole system is unsolvable
            decided_no = True
            break
    return ("no", None) if decided_no else ("unknown", None)


def _grid_search(
    conds: list[MultiPoly], num_vars: int, seed: int, samples: int
) -> Vector | None:
    rng = random.Random(seed)
    for _ in range(samples):
        point = tuple(
            Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(num_vars)
        )
        if all(c.evaluate(point) == 0 for c in conds):
            return point
    return None


def _exists_common_vanishing(
    conds: list[MultiPoly], num_vars: int, seed: int
) -> SweepCertificate:
    """Solvability of a polynomial system over the algebraic closure.

    Univariate systems are decided exactly by gcd; multivariate systems
    go through rational elimination and, failing that, a seeded grid:
    a negative answer from the grid alone is flagged heuristic.
    """
    live = [c for c in conds if not c.is_zero()]
    if not live:
        return SweepCertificate(in_sweep=True, witness="identically zero system")
    if num_vars <= 1:
        if any(c.is_constant() for c in live):
            return SweepCertificate(in_sweep=False, witness="a nonzero constant condition")
        gcd_poly = poly_gcd_univariate(live)
        if gcd_poly.is_constant():
            return SweepCertificate(in_sweep=False, witness="coprime coordinate polynomials")
        roots = rational_roots_with_multiplicity(univariate_coeffs(gcd_poly))
        params: Vector | None = (roots[0][0],) if roots else None
        return SweepCertificate(
            in_sweep=True,
            witness=f"gcd of coordinate polynomials has degree {gcd_poly.total_degree()}",
            witness_params=params,
        )
    outcome, witness = _solve_vanishing(live, num_vars, depth=num_vars + 2)
    if outcome == "yes":
        return SweepCertificate(in_sweep=True, witness="rational witness", witness_params=witness)
    if outcome == "no":
        return SweepCertificate(in_sweep=False, witness="no solution (exact elimination)")
    point = _grid_search(live, num_vars, seed, samples=200)
    if point is not None:
        return SweepCertificate(in_sweep=True, witness="rational witness", witness_params=point)
    return SweepCertificate(
        in_sweep=False,
        witness="no witness found on the sampled grid",
        heuristic=True,
    )


# -- sweeps --------------------------------------------------------------


def _sweep_certificate(
    action: WeightedAction, x: ProjectivePoint, target_indices: Sequence[int], seed: int
) -> SweepCertificate:
    """Can some group translate of x kill every coordinate in the target set?"""
    targets = list(target_indices)
    if not targets:
        return SweepCertificate(in_sweep=True, witness="no coordinates constrained")
    u = action.unipotent
    if u is None or u.dim == 0:
        vanish = all(x.coords[i] == 0 for i in targets)
        return SweepCertificate(
            in_sweep=vanish,
            witness="trivial group: point itself" if vanish else "trivial group: a constrained coordinate is nonzero",
        )
    coords = translate_coordinate_polys(u, x)
    conds = [coords[i] for i in targets]
    return _exists_common_vanishing(conds, u.dim, seed)


def u_sweep_membership(
    u: UnipotentData, g: GradingData, x: ProjectivePoint, seed: int = 0
) -> SweepCertificate:
    """Membership of x in the one-parameter sweep of the minimal locus."""
    if u.dim != 1:
        raise UnsupportedUnipotentDimension(
            f"exact sweep requires one generator, got {u.dim}"
        )
    lowest = set(min_weight_indices(g))
    above = [i for i in range(len(g.gm_weights)) if i not in lowest]
    action = WeightedAction(
        torus=_rank_one_torus(g), grading=g, unipotent=u, label="sweep"
    )
    return _sweep_certificate(action, x, above, seed)


def _rank_one_torus(g: GradingData):
    from .actions import TorusWeights

    return TorusWeights(rank=1, weights=tuple((w,) for w in g.gm_weights))


def hat_stable_minplus(
    action: WeightedAction, x: ProjectivePoint, seed: int = 0
) -> StabilityVerdict:
    """Stability for the graded extension, by flow plus sweep.

    Stable exactly when the point flows to the minimal fixed locus and
    no group translate lies in it.  Requires an adapted twist; with
    more than one generator a negative sweep answer may be heuristic
    and the verdict says so.
    """
    g = action.grading
    if g is None:
        raise NotAdapted("action carries no grading data")
    if g.is_trivial():
        # a trivial circle forces a trivial unipotent group; plain torus
        # stability is the whole story then
        if action.unipotent_dim() > 0:
            raise UnsupportedUnipotentDimension(
                "a trivial grading forces a trivial unipotent group"
            )
        return torus_verdict(action.torus, zero_vec(action.torus.rank), x)
    if not is_adapted(g):
        raise NotAdapted(
            "character twist is not adapted: 0 is not interior to the lowest bounded chamber"
        )
    support = x.support()
    if not in_X0_min(g, x):
        return StabilityVerdict(
            status=Status.UNSTABLE,
            support=support,
            detail="does not flow to the minimal fixed locus",
        )
    lowest = set(min_weight_indices(g))
    above = [i for i in range(len(g.gm_weights)) if i not in lowest]
    cert = _sweep_certificate(action, x, above, seed)
    if cert.in_sweep:
        return StabilityVerdict(
            status=Status.UNSTABLE,
            support=support,
            detail=f"translates into the minimal fixed locus ({cert.witness})",
            heuristic=cert.heuristic,
            seed=seed if cert.heuristic else None,
        )
    return StabilityVerdict(
        status=Status.STABLE,
        support=support,
        detail="flows to the minimal locus; complement of the sweep",
        heuristic=cert.heuristic,
        seed=seed if cert.heuristic else None,
    )


# -- stabiliser dimensions ------------------------------------------------


def _span_condition_rows(
    generators: Sequence[RatMatrix], coords: Sequence[Fraction]
) -> list[list[Fraction]]:
    """Rows of the linear system on c: (sum c_j N_j) x lies in span(x)."""
    n = len(coords)
    images = [g.mul_vec(coords) for g in generators]
    rows = []
    for i, k in combinations(range(n), 2):
        rows.append([im[i] * coords[k] - im[k] * coords[i] for im in images])
    return rows


def stab_dim_u(u: UnipotentData, x: ProjectivePoint) -> StabDimReport:
    """Dimension of the Lie-algebra stabiliser of the point."""
    if u.dim == 0:
        return StabDimReport(point=x, dim=0, kernel_basis=())
    if u.generators[0].rows != len(x.coords):
        raise DimensionMismatch("point dimension differs from the generators")
    rows = _span_condition_rows(u.generators, x.coords)
    kernel = rref_kernel(RatMatrix(rows))
    return StabDimReport(point=x, dim=len(kernel), kernel_basis=tuple(kernel))


def _poly_matrix_rank(rows: list[list[MultiPoly]]) -> int:
    """Rank over the rational function field, by fraction-free elimination."""
    rows = [list(r) for r in rows if any(not e.is_zero() for e in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = None
        best = None
        for i in range(rank, len(rows)):
            e = rows[i][c]
            if not e.is_zero():
                size = (e.total_degree(), len(e.terms))
                if best is None or size < best:
                    best, pivot = size, i
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            if not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [p.mul(a).sub(f.mul(b)) for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def generic_stab_dim(u: UnipotentData, n: int) -> int:
    """Minimum stabiliser dimension over the whole space, exactly.

    The span condition is linear in the Lie coefficients with entries
    polynomial in the point; its rank over the function field is the
    generic rank, attained off a proper closed subset, so the minimal
    stabiliser dimension is the corank.
    """
    if u.dim == 0:
        return 0
    num_vars = n + 1
    xs = [MultiPoly.variable(num_vars, i) for i in range(num_vars)]
    images = []
    for g in u.generators:
        image = []
        for i in range(num_vars):
            acc = MultiPoly.zero(num_vars)
            for j in range(num_vars):
                c = g.entry(i, j)
                if c != 0:
                    acc = acc.add(xs[j].scale(c))
            image.append(acc)
        images.append(image)
    rows = []
    for i, k in combinations(range(num_vars), 2):
        rows.append(
            [im[i].mul(xs[k]).sub(im[k].mul(xs[i])) for im in images]
        )
    return u.dim - _poly_matrix_rank(rows)


# -- semistability-equals-stability conditions ----------------------------


def _kill_matrix_on_block(
    generators: Sequence[RatMatrix], block: Sequence[int]
) -> list[list[MultiPoly]]:
    """Matrix of (c, z) -> sum_j c_j N_j z, entries linear in the block coords.

    Rows are ambient coordinates, columns are generators; variable i of
    the polynomial ring is the i-th block coordinate of z.
    """
    nb = len(block)
    size = generators[0].rows if generators else 0
    rows = []
    for i in range(size):
        row = []
        for g in generators:
            acc = MultiPoly.zero(nb)
            for b_pos, b in enumerate(block):
                c = g.entry(i, b)
                if c != 0:
                    acc = acc.add(MultiPoly.variable(nb, b_pos).scale(c))
            row.append(acc)
        rows.append(row)
    return rows


def _point_on_block(block: Sequence[int], block_coords: Sequence[Fraction], n: int) -> ProjectivePoint:
    coords = [Fraction(0)] * (n + 1)
    for b, c in zip(block, block_coords):
        coords[b] = Fraction(c)
    return ProjectivePoint(coords)


def _restricted_columns(gen: RatMatrix, block: Sequence[int]) -> RatMatrix:
    """The generator as a map out of the coordinate block (columns kept)."""
    return RatMatrix([[gen.entry(i, b) for b in block] for i in range(gen.rows)])


def _binary_forms_common_zero(
    forms: list[MultiPoly],
) -> tuple[bool, Vector | None, str]:
    """Common projective zero of binary forms (2 variables), exactly.

    Returns (exists, rational witness or None, detail).  Existence over
    the algebraic closure is gcd nonconstancy; a rational witness is
    reported when the gcd has a rational root or the zero is at [0:1].
    """
    live = [f for f in forms if not f.is_zero()]
    if not live:
        return True, (Fraction(1), Fraction(0)), "all forms vanish identically"
    if all(f.substitute_constants({0: Fraction(0), 1: Fraction(1)}).is_zero() for f in live):
        return True, (Fraction(0), Fraction(1)), "common zero at [0:1]"
    dehom = [f.substitute_constants({0: Fraction(1)}).restrict_vars([1]) for f in live]
    gcd_poly = poly_gcd_univariate(dehom)
    if gcd_poly.is_constant():
        return False, None, "coprime dehomogenisations"
    roots = rational_roots_with_multiplicity(univariate_coeffs(gcd_poly))
    if roots:
        return True, (Fraction(1), roots[0][0]), "rational common zero"
    return True, None, f"gcd of degree {gcd_poly.total_degree()} (irrational zero)"


def _require_grading(action: WeightedAction) -> GradingData:
    if action.grading is None:
        raise NotAdapted("action carries no grading data")
    return action.grading


def _sample_block_points(
    block: Sequence[int], n: int, seed: int, samples: int
) -> list[ProjectivePoint]:
    rng = random.Random(seed)
    points = [_point_on_block(block, [Fraction(1 if i == k else 0) for i in range(len(block))], n) for k in range(len(block))]
    for _ in range(samples):
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in block]
        if any(c != 0 for c in coords):
            points.append(_point_on_block(block, coords, n))
    return points


def check_condition_cstar(
    action: WeightedAction, seed: int = 0, samples: int = 12
) -> ConditionReport:
    """Trivial unipotent stabilisers on the minimal fixed locus.

    On that locus the generators raise the twisted weight, so a Lie
    combination fixing a point projectively must kill it outright; the
    condition is the everywhere-injectivity of a matrix with entries
    linear in the locus coordinates.  Exact for one generator or a
    locus of coordinate dimension <= 2; sampled (exact per sample)
    otherwise.
    """
    g = _require_grading(action)
    u = action.unipotent
    n = action.n
    if u is None or u.dim == 0:
        return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail="trivial unipotent group")
    block = list(min_weight_indices(g))
    if u.dim == 1:
        kernel = rref_kernel(_restricted_columns(u.generators[0], block))
        if kernel:
            witness = _point_on_block(block, kernel[0], n)
            return ConditionReport(
                ConditionVerdict.FAILS, exact=True, witness=witness,
                detail="the generator kills a minimal-locus vector",
            )
        return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail="generator injective on the minimal locus")
    if len(block) == 1:
        z = _point_on_block(block, [Fraction(1)], n)
        columns = [gen.col(block[0]) for gen in u.generators]
        kernel_dim = len(rref_kernel(RatMatrix([[col[i] for col in columns] for i in range(n + 1)])))
        if kernel_dim == 0:
            return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail="full rank at the single minimal coordinate")
        return ConditionReport(
            ConditionVerdict.FAILS, exact=True, witness=z,
            detail="a Lie combination kills the minimal coordinate point",
        )
    rows = _kill_matrix_on_block(u.generators, block)
    if len(block) == 2:
        minors = _poly_minors(rows, u.dim)
        exists, witness_coords, detail = _binary_forms_common_zero(minors)
        if not exists:
            return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail="minor gcd is constant")
        witness = _point_on_block(block, witness_coords, n) if witness_coords else None
        return ConditionReport(
            ConditionVerdict.FAILS, exact=True, witness=witness,
            detail=f"rank drops on the minimal locus: {detail}",
        )
    for z in _sample_block_points(block, n, seed, samples):
        report = stab_dim_u(u, z)
        if report.dim > 0:
            return ConditionReport(
                ConditionVerdict.FAILS, exact=True, witness=z,
                detail="sampled minimal-locus point with nontrivial stabiliser",
                seed=seed, samples=samples,
            )
    return ConditionReport(
        ConditionVerdict.PROBABLY_HOLDS, exact=False,
        detail="no stabiliser found at sampled minimal-locus points",
        seed=seed, samples=samples,
    )


def _poly_minors(rows: list[list[MultiPoly]], size: int) -> list[MultiPoly]:
    """All size x size minors of a polynomial matrix."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    minors = []
    for row_idx in combinations(range(nrows), size):
        for col_idx in combinations(range(ncols), size):
            minors.append(_poly_det([[rows[i][j] for j in col_idx] for i in row_idx]))
    return minors


def _poly_det(m: list[list[MultiPoly]]) -> MultiPoly:
    size = len(m)
    if size == 1:
        return m[0][0]
    num_vars = m[0][0].num_vars
    det = MultiPoly.zero(num_vars)
    for j in range(size):
        if m[0][j].is_zero():
            continue
        sub = [[m[i][k] for k in range(size) if k != j] for i in range(1, size)]
        term = m[0][j].mul(_poly_det(sub))
        det = det.sub(term) if j % 2 else det.add(term)
    return det


def check_condition_cstar_tilde(
    action: WeightedAction, seed: int = 0, samples: int = 12
) -> ConditionReport:
    """Minimal-locus stabiliser dimensions all equal the generic minimum.

    The generic minimum is exact (function-field rank of the span
    condition); on the minimal locus the stabiliser is a kernel of a
    matrix linear in the locus coordinates, so constancy is exact for
    one generator or locus coordinate dimension <= 2, sampled
    otherwise.
    """
    g = _require_grading(action)
    u = action.unipotent
    n = action.n
    if u is None or u.dim == 0:
        return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail="trivial unipotent group")
    d_min = generic_stab_dim(u, n)
    r_star = u.dim - d_min
    block = list(min_weight_indices(g))
    detail_prefix = f"generic stabiliser dimension {d_min}"
    if r_star == 0:
        return ConditionReport(
            ConditionVerdict.HOLDS, exact=True,
            detail=f"{detail_prefix}; every stabiliser has the full dimension",
        )
    rows = _kill_matrix_on_block(u.generators, block)
    if len(block) == 1:
        z = _point_on_block(block, [Fraction(1)], n)
        dim_z = stab_dim_u(u, z).dim
        if dim_z == d_min:
            return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail=f"{detail_prefix}; matched at the single minimal coordinate")
        return ConditionReport(
            ConditionVerdict.FAILS, exact=True, witness=z,
            detail=f"{detail_prefix} but the minimal coordinate point has dimension {dim_z}",
        )
    if u.dim == 1:
        kernel = rref_kernel(_restricted_columns(u.generators[0], block))
        if not kernel:
            return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail=f"{detail_prefix}; generator injective on the minimal locus")
        witness = _point_on_block(block, kernel[0], n)
        return ConditionReport(
            ConditionVerdict.FAILS, exact=True, witness=witness,
            detail=f"{detail_prefix} but a minimal-locus vector is killed",
        )
    if len(block) == 2:
        minors = _poly_minors(rows, r_star)
        exists, witness_coords, detail = _binary_forms_common_zero(minors)
        if not exists:
            return ConditionReport(ConditionVerdict.HOLDS, exact=True, detail=f"{detail_prefix}; rank constant on the minimal locus")
        witness = _point_on_block(block, witness_coords, n) if witness_coords else None
        return ConditionReport(
            ConditionVerdict.FAILS, exact=True, witness=witness,
            detail=f"{detail_prefix} but the rank drops on the minimal locus: {detail}",
        )
    for z in _sample_block_points(block, n, seed, samples):
        dim_z = stab_dim_u(u, z).dim
        if dim_z != d_min:
            return ConditionReport(
                ConditionVerdict.FAILS, exact=True, witness=z,
                detail=f"{detail_prefix} but a sampled point has dimension {dim_z}",
                seed=seed, samples=samples,
            )
    return ConditionReport(
        ConditionVerdict.PROBABLY_HOLDS, exact=False,
        detail=f"{detail_prefix}; matched at all sampled minimal-locus points",
        seed=seed, samples=samples,
    )


# -- blow-up centre -------------------------------------------------------


def blowup_centre(action: WeightedAction) -> BlowupCentre:
    """Equations of the locus where the generator stabiliser jumps.

    For one generator the jump locus is the projective fixed locus
    (kernel of the nilpotent generator), cut out by the 2x2 minors of
    the generator image against the point.  Only the centre description
    is computed; no blow-up is performed.
    """
    g = _require_grading(action)
    u = action.unipotent
    n = action.n
    if u is None or u.dim == 0:
        return BlowupCentre(max_stab_dim_x0min=0, equations=(), meets_x0min=False, fixed_kernel_basis=())
    if u.dim != 1:
        raise UnsupportedUnipotentDimension(
            f"exact centre identification requires one generator, got {u.dim}"
        )
    gen = u.generators[0]
    num_vars = n + 1
    xs = [MultiPoly.variable(num_vars, i) for i in range(num_vars)]
    image = []
    for i in range(num_vars):
        acc = MultiPoly.zero(num_vars)
        for j in range(num_vars):
            c = gen.entry(i, j)
            if c != 0:
                acc = acc.add(xs[j].scale(c))
        image.append(acc)
    equations = []
    for i, k in combinations(range(num_vars), 2):
        minor = image[i].mul(xs[k]).sub(image[k].mul(xs[i]))
        if not minor.is_zero():
            equations.append(minor)
    kernel = rref_kernel(gen)
    lowest = set(min_weight_indices(g))
    meets = any(any(v[i] != 0 for i in lowest) for v in kernel)
    return BlowupCentre(
        max_stab_dim_x0min=1 if meets or not equations else 0,
        equations=tuple(equations),
        meets_x0min=meets,
        fixed_kernel_basis=tuple(kernel),
    )


# -- hat construction ------------------------------------------------------


def m_lower_bound(action: WeightedAction, q: Fraction) -> int:
    """Smallest admissible twist power of the auxiliary line factor.

    Large enough that the line-factor weight range dominates the
    twisted coordinate weights (their spread, and their absolute size
    for the trivially-graded case with a nonzero common weight), and
    clearing the denominator of q so the twisted product weights stay
    comparable to integers.  Verdicts are stable under m -> m+1 above
    this bound.
    """
    q = Fraction(q)
    g = action.grading
    if g is None:
        scale = 0
    else:
        tw = g.twisted_weights()
        scale = ceil(max(max(tw) - min(tw), max(abs(w) for w in tw)))
    return 2 * (scale + 1) * q.denominator


def q_hat_stable(
    action: WeightedAction,
    q: Fraction,
    m: int,
    x: ProjectivePoint,
    seed: int = 0,
    torus_twist: Sequence[Fraction] | None = None,
) -> StabilityVerdict:
    """Stability of (x, [1:1]) on the product with the twisted line.

    The auxiliary line contributes weights 0..m shifted by -q*m; at the
    point [1:1] every line weight is supported.  With a trivial grading
    the unipotent part must be trivial and the verdict is the plain
    torus verdict intersected with the line-factor interval test (the
    interval contains 0 strictly iff 0 < q < 1).  With a nontrivial
    grading the circle test at every unipotent translate reduces to two
    sweep queries against the weight thresholds q*m and q*m - m.
    """
    q = Fraction(q)
    g = action.grading
    trivial = g is None or g.is_trivial()
    m0 = m_lower_bound(action, q)
    if m < m0:
        raise MTooSmall(f"m={m} is below the lower bound {m0}")
    if trivial:
        if action.unipotent_dim() > 0:
            raise UnsupportedUnipotentDimension(
                "a trivial grading forces a trivial unipotent group"
            )
        base = Fraction(g.twisted_weights()[0]) if g is not None else Fraction(0)
        lo = base - q * m
        hi = base + m - q * m
        if lo < 0 < hi:
            line_status = Status.STABLE
        elif lo <= 0 <= hi:
            line_status = Status.STRICTLY_SEMISTABLE
        else:
            line_status = Status.UNSTABLE
        twist = torus_twist if torus_twist is not None else zero_vec(action.torus.rank)
        tv = torus_verdict(action.torus, twist, x)
        order = {Status.UNSTABLE: 0, Status.STRICTLY_SEMISTABLE: 1, Status.STABLE: 2}
        status = tv.status if order[tv.status] <= order[line_status] else line_status
        return StabilityVerdict(
            status=status,
            support=tv.support,
            hull_position=tv.hull_position,
            detail=f"torus {tv.status.value}, line factor {line_status.value}",
        )
    if action.unipotent_dim() > 1:
        raise UnsupportedUnipotentDimension(
            f"hat test requires at most one generator, got {action.unipotent_dim()}"
        )
    if not is_adapted(g):
        raise NotAdapted(
            "character twist is not adapted: 0 is not interior to the lowest bounded chamber"
        )
    tw = g.twisted_weights()
    low = [i for i, w in enumerate(tw) if w < q * m]
    high = [i for i, w in enumerate(tw) if w > q * m - m]
    kill_low = _sweep_certificate(action, x, low, seed)
    kill_high = _sweep_certificate(action, x, high, seed)
    heuristic = kill_low.heuristic or kill_high.heuristic
    if kill_low.in_sweep or kill_high.in_sweep:
        # a positive sweep always carries an exact certificate
        side = "below" if kill_low.in_sweep else "above"
        return StabilityVerdict(
            status=Status.UNSTABLE,
            support=x.support(),
            detail=f"a translate loses every weight {side} the line threshold",
        )
    return StabilityVerdict(
        status=Status.STABLE,
        support=x.support(),
        detail="every translate keeps weights on both sides of the line threshold",
        heuristic=heuristic,
        seed=seed if heuristic else None,
    )
