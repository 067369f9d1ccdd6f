"""Degree-descending triangular solver and certificate search.

A candidate representation of a monic target G(t) of degree 2N over a support
s_1 < ... < s_L = N is

    G = q_L**2 + D_{L-1} q_{L-1}**2 + ... + D_2 q_2**2 + D_1 (t**s_1)**2

with q_j = t**s_j + sum_{i<j} u[j,i] t**s_i monic.  Matching coefficients of
t**e in strictly decreasing order of e gives a triangular system:

  * u[L,i]  (top square, lower coefficients) solves at e = N + s_i,
  * u[j,1]  (constant-basis coefficient of each lower square) at e = s_j + s_1,
  * D_1     (the residual "constant square", Delta(C, D)) at e = 2 s_1,

and every other matched exponent is an exact check that either holds or
rejects the point.  Diagonal multipliers D_j and the interior (core) u[j,i]
with 2 <= i < j < L are the search parameters; non-monic inputs contribute a
global positive rational scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence, Union

from .certificate import SosCertificate, verify
from .unipoly import UniPoly, _to_fraction, format_rational

MASK64 = (1 << 64) - 1
MCG_MULTIPLIER = 6364136223846793005  # Knuth's MMIX constant


@dataclass(frozen=True)
class SupportSet:
    """Strictly increasing nonnegative exponents s_1 < ... < s_{l+1}."""

    powers: tuple[int, ...]

    def __post_init__(self):
        powers = tuple(int(s) for s in self.powers)
        object.__setattr__(self, "powers", powers)
        if not powers:
            raise ValueError("support must be nonempty")
        if any(s < 0 for s in powers):
            raise ValueError("support exponents must be nonnegative")
        if any(a >= b for a, b in zip(powers, powers[1:])):
            raise ValueError("support exponents must strictly increase")

    @property
    def size(self) -> int:
        return len(self.powers)

    @property
    def top(self) -> int:
        return self.powers[-1]


def dense_support(half_degree: int) -> SupportSet:
    return SupportSet(tuple(range(half_degree + 1)))


def diagonal_positions(num_squares: int) -> list[int]:
    """Square indices carrying a free diagonal multiplier, descending (L-1..2)."""
    return list(range(num_squares - 1, 1, -1))


def core_positions(num_squares: int) -> list[tuple[int, int]]:
    """Interior coefficient slots (j, i), 2 <= i < j <= L-1, in (desc j, desc i) order."""
    return [(j, i) for j in range(num_squares - 1, 2, -1) for i in range(j - 1, 1, -1)]


@dataclass
class TriangularScheme:
    support: SupportSet
    diagonal: dict[int, Fraction]           # j -> multiplier D_j (j = L-1..2)
    core: dict[tuple[int, int], Fraction]   # (j, i) -> u[j, i]
    border: dict[tuple[int, int], Fraction]  # solved u values (top row and constants)


@dataclass
class SolveOutcome:
    scheme: TriangularScheme
    constant_square: Fraction  # Delta(C, D): multiplier of the trailing square
    certificate: SosCertificate


@dataclass(frozen=True)
class Reject:
    exponent: int
    reason: str


@dataclass(frozen=True)
class InfeasibilityWitness:
    exponent: int
    forced_value: Fraction
    explanation: str


@dataclass(frozen=True)
class Exhausted:
    points_tested: int
    note: str = ""


DEFAULT_DIAGONAL_GRID = (
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(1),
    Fraction(9, 4),
    Fraction(4),
)
DEFAULT_CORE_GRID = (
    Fraction(0),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(1),
    Fraction(-1),
    Fraction(3, 2),
    Fraction(-3, 2),
    Fraction(2),
    Fraction(-2),
)

STRATEGIES = ("core_zero", "full_grid", "monte_carlo", "banded")


@dataclass(frozen=True)
class SearchConfig:
    strategy: str = "core_zero"
    diagonal_grid: tuple[Fraction, ...] = DEFAULT_DIAGONAL_GRID
    core_grid: tuple[Fraction, ...] = DEFAULT_CORE_GRID
    max_points: int = 10**6
    seed: int = 1
    deterministic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "diagonal_grid", tuple(_to_fraction(x) for x in self.diagonal_grid))
        object.__setattr__(self, "core_grid", tuple(_to_fraction(x) for x in self.core_grid))
        if not self.diagonal_grid or not self.core_grid:
            raise ValueError("grids must be nonempty")
        if any(d <= 0 for d in self.diagonal_grid):
            raise ValueError("diagonal grid values must be positive")
        if self.max_points <= 0:
            raise ValueError("max_points must be positive")


class Mcg:
    """Multiplicative congruential generator, state' = (a * state) mod 2**64.

    a = 6364136223846793005; the seed is forced odd to stay in the maximal
    2**62 orbit.  Indices are taken from the top 32 bits.  This generator is
    part of the reproducibility contract: identical seeds draw identical
    points on any implementation.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = (int(seed) | 1) & MASK64

    def next_index(self, n: int) -> int:
        self.state = (self.state * MCG_MULTIPLIER) & MASK64
        return (self.state >> 32) % n


# ---------------------------------------------------------------------------
# Equation plan
# ---------------------------------------------------------------------------

_CHECK, _TOP, _BOTTOM, _FINAL, _STUCK = range(5)


@dataclass(frozen=True)
class _Equation:
    exponent: int
    terms: tuple[tuple[int, int, int], ...]  # (j, a, b) with a <= b <= j
    kind: int
    target: int = 0          # i for TOP, j for BOTTOM
    pivot_term: tuple[int, int, int] | None = None
    reason: str = ""
    all_diagonal: bool = False


class _Plan:
    """Structure of the triangular system for one support (value-independent)."""

    __slots__ = ("support", "L", "s", "equations", "covered")

    def __init__(self, support: SupportSet):
        self.support = support
        powers = support.powers
        L = len(powers)
        self.L = L
        s = [0] * (L + 1)
        for idx, p in enumerate(powers, start=1):
            s[idx] = p
        self.s = s

        pair_map: dict[int, list[tuple[int, int]]] = {}
        for a in range(1, L + 1):
            for b in range(a, L + 1):
                pair_map.setdefault(s[a] + s[b], []).append((a, b))
        self.covered = set(pair_map)

        is_border = set()
        for i in range(1, L):
            is_border.add((L, i))
        for j in range(2, L):
            is_border.add((j, 1))

        solved: set[tuple[int, int]] = set()
        equations: list[_Equation] = []
        for e in sorted(pair_map, reverse=True):
            terms = tuple(
                (j, a, b) for (a, b) in pair_map[e] for j in range(b, L + 1)
            )
            all_diag = all(a == b for (a, b) in pair_map[e])
            unknowns: dict[tuple[int, int], bool] = {}  # pos -> appears linearly
            d1_ref = False
            stuck_reason = ""
            for (j, a, b) in terms:
                if j == 1:
                    d1_ref = True  # the D_1 * 1 term of the trailing square
                    continue
                pos_a = (j, a) if (j, a) in is_border and (j, a) not in solved else None
                pos_b = (j, b) if (j, b) in is_border and (j, b) not in solved else None
                if pos_a and pos_b:
                    if pos_a == pos_b:
                        unknowns[pos_a] = False  # squared occurrence
                        stuck_reason = "nonlinear unknown"
                    else:
                        unknowns[pos_a] = False
                        unknowns[pos_b] = False
                        stuck_reason = "product of two unknowns"
                else:
                    if pos_a:
                        unknowns.setdefault(pos_a, True)
                    if pos_b:
                        unknowns.setdefault(pos_b, True)
            if d1_ref:
                # q_1 contributes only at e = 2 s_1; the unknown is D_1 itself.
                if unknowns:
                    equations.append(
                        _Equation(e, terms, _STUCK, reason="unsolved unknowns at the constant-square equation")
                    )
                    break
                equations.append(_Equation(e, terms, _FINAL, pivot_term=(1, 1, 1), all_diagonal=all_diag))
                continue
            if not unknowns:
                equations.append(_Equation(e, terms, _CHECK, all_diagonal=all_diag))
                continue
            if len(unknowns) > 1 or not all(unknowns.values()):
                reason = stuck_reason or "under-determined"
                equations.append(_Equation(e, terms, _STUCK, reason=reason, all_diagonal=all_diag))
                break
            (j, i), _linear = next(iter(unknowns.items()))
            if j == L:
                equations.append(
                    _Equation(e, terms, _TOP, target=i, pivot_term=(L, min(i, L), max(i, L)), all_diagonal=all_diag)
                )
            else:
                # bottom-row unknown u[j, 1], pivot 2 * D_j
                equations.append(
                    _Equation(e, terms, _BOTTOM, target=j, pivot_term=(j, 1, j), all_diagonal=all_diag)
                )
            solved.add((j, i))
        self.equations = tuple(equations)

    def structural_defect(self) -> Optional[_Equation]:
        for eq in self.equations:
            if eq.kind == _STUCK:
                return eq
        return None


_PLAN_CACHE: dict[tuple[int, ...], _Plan] = {}


def _plan_for(support: SupportSet) -> _Plan:
    key = support.powers
    plan = _PLAN_CACHE.get(key)
    if plan is None:
        plan = _Plan(support)
        _PLAN_CACHE[key] = plan
    return plan


# ---------------------------------------------------------------------------
# Point evaluation
# ---------------------------------------------------------------------------


def _monic_coefficient_table(p: UniPoly) -> tuple[Fraction, list[Fraction]]:
    scale = p.leading_coefficient
    inv = 1 / scale
    table = [c * inv for c in p.coeffs]
    return scale, table


def _solve_point(
    plan: _Plan,
    coeff: Sequence[Fraction],
    diag: Mapping[int, Fraction],
    core: Mapping[tuple[int, int], Fraction],
) -> Union[tuple[list[list], Fraction], Reject]:
    """Run the triangular solve at one (diagonal, core) point.

    Returns (u, D_1) on success; u[j][i] are the square coefficients over
    support indices.  Rejections carry the exponent they fire at.
    """
    L = plan.L
    zero = Fraction(0)
    mult: list[Fraction | None] = [None] * (L + 1)
    mult[L] = Fraction(1)
    for j in range(2, L):
        mult[j] = diag[j]
    u: list[list] = [None] * (L + 1)  # type: ignore[assignment]
    u[1] = [None, Fraction(1)]
    for j in range(2, L + 1):
        row = [None] * (j + 1)
        row[j] = Fraction(1)
        u[j] = row
    for (j, i), v in core.items():
        u[j][i] = v
    d1 = None

    for eq in plan.equations:
        if eq.kind == _STUCK:
            return Reject(eq.exponent, eq.reason)
        e = eq.exponent
        target = coeff[e] if e < len(coeff) else zero
        total = zero
        for term in eq.terms:
            if term == eq.pivot_term:
                continue
            j, a, b = term
            if j == 1:
                continue
            mj = mult[j]
            if mj == 0:
                continue
            va = u[j][a]
            if va == 0:
                continue
            vb = u[j][b]
            if vb == 0:
                continue
            prod = va * vb
            if a != b:
                prod += prod
            total += mj * prod
        if eq.kind == _CHECK:
            if total != target:
                return Reject(e, "coefficient mismatch")
        elif eq.kind == _TOP:
            u[L][eq.target] = (target - total) / 2
        elif eq.kind == _BOTTOM:
            pivot = 2 * mult[eq.target]
            if pivot == 0:
                if total != target:
                    return Reject(e, "zero pivot")
                u[eq.target][1] = zero
            else:
                u[eq.target][1] = (target - total) / pivot
        else:  # _FINAL
            d1 = target - total
            if d1 < 0:
                return Reject(e, "negative constant square")
    if d1 is None:
        # Single-point support {s}: p = lc * t**(2s); the trailing square is
        # the leading square itself and the residual is zero.
        d1 = zero
    return u, d1


def _uncovered_exponent(plan: _Plan, coeff: Sequence[Fraction]) -> Optional[int]:
    for e in range(len(coeff) - 1, -1, -1):
        if coeff[e] != 0 and e not in plan.covered:
            return e
    return None


def _assemble(
    p: UniPoly,
    plan: _Plan,
    scale: Fraction,
    diag: Mapping[int, Fraction],
    core: Mapping[tuple[int, int], Fraction],
    u: list[list],
    d1: Fraction,
    strategy: str,
) -> SolveOutcome:
    L = plan.L
    s = plan.s
    terms: list[tuple[Fraction, UniPoly]] = []
    for j in range(L, 1, -1):
        mj = Fraction(1) if j == L else diag[j]
        if mj == 0:
            continue
        poly = UniPoly.from_terms({s[i]: u[j][i] for i in range(1, j + 1) if u[j][i] != 0})
        terms.append((mj, poly))
    constant = Fraction(0)
    if d1 != 0:
        if s[1] == 0:
            constant = d1
        else:
            terms.append((d1, UniPoly.x_power(s[1])))
    cert = SosCertificate(
        scale=scale,
        terms=tuple(terms),
        constant=constant,
        support=plan.support.powers,
        strategy=strategy,
    )
    if not verify(cert, p):  # soundness gate on every accepted point
        raise RuntimeError("internal error: assembled certificate failed exact verification")
    border: dict[tuple[int, int], Fraction] = {}
    for i in range(1, L):
        border[(L, i)] = u[L][i]
    for j in range(2, L):
        border[(j, 1)] = u[j][1]
    scheme = TriangularScheme(
        support=plan.support,
        diagonal={j: diag[j] for j in range(L - 1, 1, -1)},
        core=dict(core),
        border=border,
    )
    return SolveOutcome(scheme=scheme, constant_square=d1, certificate=cert)


def _normalize_diagonal(L: int, diagonal) -> dict[int, Fraction]:
    slots = diagonal_positions(L)
    if isinstance(diagonal, Mapping):
        diag = {int(j): _to_fraction(v) for j, v in diagonal.items()}
        if sorted(diag) != sorted(slots):
            raise ValueError(f"diagonal must cover square indices {slots}")
    else:
        values = [_to_fraction(v) for v in diagonal]
        if len(values) != len(slots):
            raise ValueError(f"expected {len(slots)} diagonal multipliers, got {len(values)}")
        diag = dict(zip(slots, values))
    for j, v in diag.items():
        if v < 0:
            raise ValueError("diagonal multipliers must be nonnegative")
    return diag


def _normalize_core(L: int, core) -> dict[tuple[int, int], Fraction]:
    slots = core_positions(L)
    if core is None:
        return {pos: Fraction(0) for pos in slots}
    if isinstance(core, Mapping):
        cv = {(int(j), int(i)): _to_fraction(v) for (j, i), v in core.items()}
        unknown = set(cv) - set(slots)
        if unknown:
            raise ValueError(f"not core positions: {sorted(unknown)}")
        return {pos: cv.get(pos, Fraction(0)) for pos in slots}
    values = [_to_fraction(v) for v in core]
    if len(values) != len(slots):
        raise ValueError(f"expected {len(slots)} core values, got {len(values)}")
    return dict(zip(slots, values))


def _validate_input(p: UniPoly, support: SupportSet):
    if p.is_zero:
        raise ValueError("cannot certify the zero polynomial here; it is trivially SOS")
    if p.degree % 2 != 0:
        raise ValueError("odd degree: not a sum of squares")
    if p.leading_coefficient <= 0:
        raise ValueError("leading coefficient must be positive")
    if p.degree != 2 * support.top:
        raise ValueError(
            f"support top exponent {support.top} does not match degree {p.degree} (need deg = 2*top)"
        )


def border_solve(
    p: UniPoly,
    support: SupportSet,
    diagonal,
    core=None,
    strategy: str = "pinned",
) -> Union[SolveOutcome, Reject]:
    """Solve the border unknowns for a fixed (diagonal, core) assignment.

    ``diagonal`` lists multipliers for square indices L-1 .. 2 (descending),
    or maps index -> multiplier.  ``core`` likewise in the canonical
    (descending j, descending i) order.  Zero diagonal multipliers are
    accepted for pinned reproduction: the corresponding square drops out and
    its forced coefficients must be consistently absent.
    """
    _validate_input(p, support)
    plan = _plan_for(support)
    scale, coeff = _monic_coefficient_table(p)
    diag = _normalize_diagonal(plan.L, diagonal)
    core_map = _normalize_core(plan.L, core)
    bad = _uncovered_exponent(plan, coeff)
    if bad is not None:
        return Reject(bad, "exponent not representable on support")
    result = _solve_point(plan, coeff, diag, core_map)
    if isinstance(result, Reject):
        return result
    u, d1 = result
    return _assemble(p, plan, scale, diag, core_map, u, d1, strategy)


def delta(p: UniPoly, support: SupportSet, diagonal, core=None) -> Optional[Fraction]:
    """Delta(C, D): the residual constant square at a point, or None on reject."""
    outcome = border_solve(p, support, diagonal, core)
    if isinstance(outcome, Reject):
        return None
    return outcome.constant_square


# ---------------------------------------------------------------------------
# Infeasibility pre-check
# ---------------------------------------------------------------------------


def _term_label(plan: _Plan, j: int, a: int) -> str:
    if j == 1:
        return "D1"
    if a == j:
        return "1" if j == plan.L else f"D{j}"
    if j == plan.L:
        return f"u({j},{a})^2"
    return f"D{j}*u({j},{a})^2"


def diagonal_contradiction(p: UniPoly, support: SupportSet) -> Optional[InfeasibilityWitness]:
    """Point-independent infeasibility: an equation whose left side is a sum
    of nonnegative terms (squares times positive multipliers) equated to a
    negative coefficient.  Values are in the monic normalization of p."""
    _validate_input(p, support)
    plan = _plan_for(support)
    _, coeff = _monic_coefficient_table(p)
    for eq in plan.equations:
        if not eq.all_diagonal or eq.kind == _STUCK:
            continue
        c = coeff[eq.exponent] if eq.exponent < len(coeff) else Fraction(0)
        if c >= 0:
            continue
        labels = [_term_label(plan, j, a) for (j, a, _b) in eq.terms]
        explanation = (
            f"coefficient of t^{eq.exponent} forces "
            + " + ".join(labels)
            + f" = {format_rational(c)}; a sum of nonnegative terms cannot be negative"
        )
        return InfeasibilityWitness(eq.exponent, c, explanation)
    return None


# ---------------------------------------------------------------------------
# Search strategies
# ---------------------------------------------------------------------------


def _core_zero_points(plan, config) -> Iterator[tuple[dict, dict]]:
    d_slots = diagonal_positions(plan.L)
    c_slots = core_positions(plan.L)
    zero_core = {pos: Fraction(0) for pos in c_slots}
    for dvals in itertools.product(config.diagonal_grid, repeat=len(d_slots)):
        yield dict(zip(d_slots, dvals)), zero_core


def _full_grid_points(plan, config) -> Iterator[tuple[dict, dict]]:
    d_slots = diagonal_positions(plan.L)
    c_slots = core_positions(plan.L)
    for dvals in itertools.product(config.diagonal_grid, repeat=len(d_slots)):
        dpoint = dict(zip(d_slots, dvals))
        for cvals in itertools.product(config.core_grid, repeat=len(c_slots)):
            yield dpoint, dict(zip(c_slots, cvals))


def _monte_carlo_points(plan, config) -> Iterator[tuple[dict, dict]]:
    d_slots = diagonal_positions(plan.L)
    c_slots = core_positions(plan.L)
    gen = Mcg(config.seed)
    dgrid, cgrid = config.diagonal_grid, config.core_grid
    while True:
        dpoint = {j: dgrid[gen.next_index(len(dgrid))] for j in d_slots}
        cpoint = {pos: cgrid[gen.next_index(len(cgrid))] for pos in c_slots}
        yield dpoint, cpoint


def _banded_pin(p: UniPoly, support: SupportSet):
    """Bidiagonal layout: q_j = t**s_j + beta_j t**s_{j-1}.

    Walking exponents downward alternates "solve beta_j" (odd rows) and
    "solve D_{j-1}" (even rows); any negative multiplier kills the layout.
    Dense supports only.
    """
    if support.powers != tuple(range(support.top + 1)):
        return None, "banded strategy requires a dense support"
    L = support.size
    _, coeff = _monic_coefficient_table(p)

    def c(e: int) -> Fraction:
        return coeff[e] if 0 <= e < len(coeff) else Fraction(0)

    D: dict[int, Fraction] = {L: Fraction(1)}
    beta: dict[int, Fraction] = {}
    for j in range(L, 1, -1):
        odd_e = 2 * (j - 1) - 1  # s_j + s_{j-1}
        if D[j] == 0:
            if c(odd_e) != 0:
                return None, f"banded layout inconsistent at exponent {odd_e}"
            beta[j] = Fraction(0)
        else:
            beta[j] = c(odd_e) / (2 * D[j])
        D[j - 1] = c(2 * (j - 2)) - D[j] * beta[j] ** 2
        if j - 1 >= 2 and D[j - 1] < 0:
            return None, f"banded multiplier for square {j - 1} is negative"
    diag = {j: D[j] for j in diagonal_positions(L)}
    core = {pos: Fraction(0) for pos in core_positions(L)}
    for j in range(3, L):
        core[(j, j - 1)] = beta[j]
    return (diag, core), ""


def _point_stream(plan, config) -> Iterator[tuple[dict, dict]]:
    if config.strategy == "core_zero":
        return _core_zero_points(plan, config)
    if config.strategy == "full_grid":
        return _full_grid_points(plan, config)
    if config.strategy == "monte_carlo":
        return _monte_carlo_points(plan, config)
    raise ValueError(f"unknown strategy {config.strategy!r}")


def search(
    p: UniPoly,
    support: SupportSet | None = None,
    config: SearchConfig = SearchConfig(),
) -> Union[SolveOutcome, InfeasibilityWitness, Exhausted]:
    """Search (diagonal, core) assignments until a certificate emerges.

    The diagonal-contradiction check runs before any enumeration; the first
    accepted point in canonical order wins.  Strategy "banded" tries the
    single bidiagonal candidate instead of a grid.
    """
    if support is None:
        _validate_input(p, dense_support(max(p.degree, 0) // 2))
        support = dense_support(p.degree // 2)
    _validate_input(p, support)
    plan = _plan_for(support)
    scale, coeff = _monic_coefficient_table(p)

    witness = diagonal_contradiction(p, support)
    if witness is not None:
        return witness
    bad = _uncovered_exponent(plan, coeff)
    if bad is not None:
        return Exhausted(0, f"coefficient at t^{bad} not representable on support")
    defect = plan.structural_defect()
    if defect is not None:
        return Exhausted(0, f"{defect.reason} at t^{defect.exponent}")

    if config.strategy == "banded":
        pin, note = _banded_pin(p, support)
        if pin is None:
            return Exhausted(1, note)
        diag, core = pin
        result = _solve_point(plan, coeff, diag, core)
        if isinstance(result, Reject):
            return Exhausted(1, f"banded candidate rejected at t^{result.exponent}: {result.reason}")
        u, d1 = result
        return _assemble(p, plan, scale, diag, core, u, d1, "banded")

    count = 0
    for diag, core in _point_stream(plan, config):
        if count >= config.max_points:
            break
        count += 1
        result = _solve_point(plan, coeff, diag, core)
        if isinstance(result, Reject):
            continue
        u, d1 = result
        label = f"{config.strategy}[point {count}]"
        return _assemble(p, plan, scale, diag, core, u, d1, label)
    return Exhausted(count)


def search_all(
    p: UniPoly,
    support: SupportSet | None = None,
    config: SearchConfig = SearchConfig(),
) -> list[SolveOutcome]:
    """Every accepted point of the enumeration (capped by max_points)."""
    if support is None:
        support = dense_support(max(p.degree, 0) // 2)
    _validate_input(p, support)
    plan = _plan_for(support)
    scale, coeff = _monic_coefficient_table(p)
    if diagonal_contradiction(p, support) is not None:
        return []
    if _uncovered_exponent(plan, coeff) is not None or plan.structural_defect() is not None:
        return []
    outcomes = []
    count = 0
    for diag, core in _point_stream(plan, config):
        if count >= config.max_points:
            break
        count += 1
        result = _solve_point(plan, coeff, diag, core)
        if isinstance(result, Reject):
            continue
        u, d1 = result
        outcomes.append(_assemble(p, plan, scale, diag, core, u, d1, f"{config.strategy}[point {count}]"))
    return outcomes
