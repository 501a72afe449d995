"""V_s sequences of knots from staircase data.

Three independent routes produce the non-increasing sequence V_0, V_1, ...
for a knot whose full knot Floer complex is a single staircase:

* ``vs_thin``          -- closed formula in tau for Floer thin knots;
* ``vs_lspace_formula``-- piecewise closed formulas in the stair lengths
                          l_k read off the Alexander polynomial;
* ``vs_staircase_oracle`` -- explicit mod-2 homology of the truncated
                          staircase complex, used as the ground truth.

The torsion coefficients t_s = sum_{j>=1} j*a_{s+j} of the Alexander
polynomial give a fourth cross-check: they equal V_s whenever the complex
is a single staircase.  Disagreement between routes is surfaced as
``OracleDisagreement``, never resolved silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:  # pragma: no cover
    from .knots import KnotRecord


class NotLSpaceForm(ValueError):
    """Alexander coefficients do not have the alternating +-1 staircase shape."""


class VsUnavailable(LookupError):
    """The record carries no route to its V_s sequence."""


class OracleDisagreement(RuntimeError):
    """Two independent V_s computations produced different sequences."""


class WindowTooSmall(RuntimeError):
    """The translate window provably truncates a needed staircase copy."""


@dataclass(frozen=True)
class VsSequence:
    """Non-increasing, eventually-zero sequence of non-negative integers.

    Only the positive prefix is stored; ``v(s)`` returns 0 past it.
    """

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(not isinstance(x, int) or x <= 0 for x in self.values):
            raise ValueError(f"stored prefix must be positive integers: {self.values}")
        if any(self.values[i] < self.values[i + 1] for i in range(len(self.values) - 1)):
            raise ValueError(f"sequence must be non-increasing: {self.values}")

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "VsSequence":
        """Build from a raw list, validating monotonicity and trimming the zero tail."""
        vals = list(values)
        if any(v < 0 for v in vals):
            raise ValueError(f"V_s entries must be non-negative: {vals}")
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            raise ValueError(f"V_s must be non-increasing: {vals}")
        while vals and vals[-1] == 0:
            vals.pop()
        return cls(tuple(vals))

    def v(self, s: int) -> int:
        if s < 0:
            raise ValueError("s must be non-negative")
        return self.values[s] if s < len(self.values) else 0

    def is_zero(self) -> bool:
        return not self.values

    def steps_are_unit(self) -> bool:
        """True when consecutive drops (including onto the zero tail) are 0 or 1."""
        full = list(self.values) + [0]
        return all(0 <= full[i] - full[i + 1] <= 1 for i in range(len(full) - 1))

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.values) + "]"


def nu_plus(v: VsSequence) -> int:
    """Smallest s with V_s = 0; the length of the stored positive prefix."""
    return len(v.values)


@dataclass(frozen=True)
class Staircase:
    """Staircase data of an L-space-type Alexander polynomial.

    ``n`` lists the positive support exponents n_1 < ... < n_m.  The full
    support is e_0 > ... > e_2m = (n_m, ..., n_1, 0, -n_1, ..., -n_m); the
    gaps are the consecutive differences and the width is the alternating
    sum n_m - n_{m-1} + ... +- n_1.
    """

    n: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.n:
            raise ValueError("staircase needs at least one positive exponent")
        if any(x < 1 for x in self.n) or any(
            self.n[i] >= self.n[i + 1] for i in range(len(self.n) - 1)
        ):
            raise ValueError(f"exponents must be strictly increasing positives: {self.n}")

    @property
    def m(self) -> int:
        return len(self.n)

    @property
    def e(self) -> tuple[int, ...]:
        pos = tuple(reversed(self.n))
        return pos + (0,) + tuple(-x for x in self.n)

    @property
    def gaps(self) -> tuple[int, ...]:
        e = self.e
        return tuple(e[t - 1] - e[t] for t in range(1, len(e)))

    @property
    def width(self) -> int:
        return sum(x if i % 2 == 0 else -x for i, x in enumerate(reversed(self.n)))

    def stair_lengths(self) -> tuple[int, ...]:
        """l_k = n_k - n_{k-1} with n_0 = 0, for k = 1..m."""
        prev = 0
        out = []
        for x in self.n:
            out.append(x - prev)
            prev = x
        return tuple(out)


def _genus(coeffs: Sequence[int]) -> int:
    if len(coeffs) % 2 == 0:
        raise ValueError("coefficient list must have odd length (exponents -g..g)")
    return len(coeffs) // 2


def _check_symmetric(coeffs: Sequence[int]) -> None:
    g = _genus(coeffs)
    if any(coeffs[g + i] != coeffs[g - i] for i in range(g + 1)):
        raise ValueError("coefficients must be palindromic")
    if sum(coeffs) != 1:
        raise ValueError("polynomial must evaluate to 1 at t = 1")


def staircase_from_alexander(coeffs: Sequence[int]) -> Staircase:
    """Read the staircase exponents off an L-space-form Alexander polynomial.

    Requires coefficient (-1)^(m-i) at exponent n_i, (-1)^m at 0, and zero
    elsewhere, for some 0 < n_1 < ... < n_m.
    """
    _check_symmetric(coeffs)
    g = _genus(coeffs)
    support = [i for i in range(1, g + 1) if coeffs[g + i] != 0]
    if not support:
        raise NotLSpaceForm("no positive support exponents")
    m = len(support)
    for idx, ni in enumerate(support, start=1):
        expected = (-1) ** (m - idx)
        if coeffs[g + ni] != expected:
            raise NotLSpaceForm(
                f"coefficient at exponent {ni} is {coeffs[g + ni]}, expected {expected}"
            )
    if coeffs[g] != (-1) ** m:
        raise NotLSpaceForm(f"constant coefficient is {coeffs[g]}, expected {(-1) ** m}")
    return Staircase(tuple(support))


def torsion_coefficients(coeffs: Sequence[int], s: int) -> int:
    """Torsion coefficient t_s = sum_{j>=1} j * a_{s+j} of the polynomial."""
    if s < 0:
        raise ValueError("s must be non-negative")
    _check_symmetric(coeffs)
    g = _genus(coeffs)
    return sum(j * coeffs[g + s + j] for j in range(1, g - s + 1)) if s < g else 0


def torsion_sequence(coeffs: Sequence[int]) -> VsSequence:
    """All torsion coefficients t_0, t_1, ... as a VsSequence."""
    g = _genus(coeffs)
    return VsSequence.from_values([torsion_coefficients(coeffs, s) for s in range(g + 1)])


def vs_thin(tau: int) -> VsSequence:
    """V_s of a Floer thin knot: max(floor((tau+1-s)/2), 0), zero for tau <= 0."""
    if tau <= 0:
        return VsSequence(())
    return VsSequence.from_values(
        [max((tau + 1 - s) // 2, 0) for s in range(tau + 1)]
    )


def vs_lspace_formula(st: Staircase) -> VsSequence:
    """Piecewise closed formula for V_s in the stair lengths.

    With l_0 = 0, l_{m+1} = +infinity and w the staircase width:

    * m odd:  on s in [sum_{k<N} l_{2k}, sum_{k<=N} l_{2k}), 1 <= N <= ceil(m/2):
        V_s = w - max_{1<=i<=N} min(sum_{k<i} l_{2k+1}, s - sum_{k<i} l_{2k})
    * m even: on s in [sum_{k<N} l_{2k+1}, sum_{k<=N} l_{2k+1}), 0 <= N <= m/2:
        V_s = w - max_{0<=i<=N} min(sum_{k<=i} l_{2k}, s - sum_{k<i} l_{2k+1})

    (indices of l are 0-based over l_0..l_{m+1}; empty sums are 0).
    """
    m = st.m
    ln = (0,) + st.stair_lengths()  # l_0..l_m; l_{m+1} handled as infinity
    width = st.width

    def l(idx: int) -> int | None:
        return ln[idx] if idx <= m else None  # None = +infinity

    def sum_l(indices: Iterable[int]) -> int:
        total = 0
        for idx in indices:
            li = l(idx)
            assert li is not None, "infinite stair inside a finite sum"
            total += li
        return total

    def value(s: int) -> int:
        if m % 2 == 1:
            n_top = (m + 1) // 2  # ceil(m/2)
            for big_n in range(1, n_top + 1):
                lo = sum_l(2 * k for k in range(big_n))
                hi_l = l(2 * big_n)
                hi = None if hi_l is None else lo + hi_l
                if s >= lo and (hi is None or s < hi):
                    best = max(
                        min(
                            sum_l(2 * k + 1 for k in range(i)),
                            s - sum_l(2 * k for k in range(i)),
                        )
                        for i in range(1, big_n + 1)
                    )
                    return width - best
        else:
            for big_n in range(0, m // 2 + 1):
                lo = sum_l(2 * k + 1 for k in range(big_n))
                hi_l = l(2 * big_n + 1)
                hi = None if hi_l is None else lo + hi_l
                if s >= lo and (hi is None or s < hi):
                    best = max(
                        min(
                            sum_l(2 * k for k in range(i + 1)),
                            s - sum_l(2 * k + 1 for k in range(i)),
                        )
                        for i in range(0, big_n + 1)
                    )
                    return width - best
        raise AssertionError(f"s = {s} not covered by the stair intervals")

    top = st.n[-1]
    return VsSequence.from_values([value(s) for s in range(top + 1)])


# --- staircase homology oracle ---------------------------------------------


def _generator_positions(st: Staircase) -> list[tuple[int, int]]:
    """Lattice positions of the 2m+1 staircase generators.

    x_0 sits at (0, n_m); odd steps move right by the gap, even steps move
    down, so the chain ends at (n_m, 0).  The differential of an odd
    generator hits its two even neighbours and is non-increasing in both
    coordinates.
    """
    pos = [(0, st.n[-1])]
    for t, gap in enumerate(st.gaps, start=1):
        i, j = pos[-1]
        pos.append((i + gap, j) if t % 2 == 1 else (i, j - gap))
    return pos


def _reduce(vec: int, basis: dict[int, int]) -> int:
    while vec:
        lead = vec.bit_length() - 1
        if lead not in basis:
            break
        vec ^= basis[lead]
    return vec


def _class_nonzero(positions: list[tuple[int, int]], level: int, region) -> bool:
    """Is the projected tower cycle non-trivial at this translate level?

    The differential preserves the translate level, so homology splits as a
    direct sum over levels; at each level the tower class is represented by
    the corner generator x_0 (any even generator gives the same class), and
    it is non-zero iff x_0 lies in the region and is not a boundary of the
    odd generators that survive the quotient.
    """
    present = [
        t for t, (i, j) in enumerate(positions) if region(i + level, j + level)
    ]
    present_set = set(present)
    if 0 not in present_set:
        return False
    columns = []
    for t in present:
        if t % 2 == 1:
            col = 0
            for u in (t - 1, t + 1):
                if u in present_set:
                    col |= 1 << u
            if col:
                columns.append(col)
    basis: dict[int, int] = {}
    for col in columns:
        col = _reduce(col, basis)
        if col:
            basis[col.bit_length() - 1] = col
    return _reduce(1 << 0, basis) != 0


def _tower_level(
    positions: list[tuple[int, int]], region, window: tuple[int, int]
) -> int:
    lo, hi = window
    for level in range(lo, hi + 1):
        if _class_nonzero(positions, level, region):
            if level == lo:
                raise WindowTooSmall(
                    f"tower already non-zero at window bottom {lo}; "
                    "a lower translate may be needed"
                )
            return level
    raise WindowTooSmall(f"tower not found below level {hi}")


def vs_staircase_oracle(
    st: Staircase, s_max: int | None = None, window: tuple[int, int] | None = None
) -> VsSequence:
    """V_s by explicit homology of the truncated staircase complex.

    For each region A_s = {max(i, j - s) >= 0} and B = {i >= 0}, scans the
    diagonal translates of the staircase inside the window and finds the
    lowest level whose tower class survives; V_s is the difference of the
    two levels.  The default window is auto-sized from n_m, which provably
    contains both levels; passing a narrower one may raise WindowTooSmall.

    The full sequence down to its vanishing point is always computed, so the
    implicit zero tail of the result is genuine; s_max (default n_m, past
    which V_s vanishes) only extends the scan.
    """
    if s_max is None:
        s_max = st.n[-1]
    if s_max < 0:
        raise ValueError("s_max must be non-negative")
    top = st.n[-1]
    if window is None:
        window = (-top - 2, 2)
    positions = _generator_positions(st)

    level_b = _tower_level(positions, lambda i, j: i >= 0, window)
    values = []
    for s in range(max(s_max, top) + 1):
        level_a = _tower_level(
            positions, lambda i, j, s=s: max(i, j - s) >= 0, window
        )
        values.append(level_b - level_a)
    return VsSequence.from_values(values)


def vs_of(record: "KnotRecord") -> VsSequence:
    """Dispatch a knot record to its V_s sequence.

    Explicit values pass through; thin records use the tau formula; L-space
    records run the piecewise formula and must agree with the torsion
    coefficients of their Alexander polynomial; mirrors of L-space knots
    have vanishing V_s.
    """
    spec = record.vs_spec
    if spec.kind == "explicit":
        return VsSequence.from_values(spec.values)
    if spec.kind == "thin":
        if record.tau is None:
            raise VsUnavailable(f"{record.name}: thin V_s needs tau")
        return vs_thin(record.tau)
    if spec.kind == "lspace":
        if record.alexander is None:
            raise VsUnavailable(f"{record.name}: L-space V_s needs the Alexander polynomial")
        st = staircase_from_alexander(record.alexander)
        formula = vs_lspace_formula(st)
        torsion = torsion_sequence(record.alexander)
        if formula != torsion:
            raise OracleDisagreement(
                f"{record.name}: stair formula {formula} != torsion coefficients {torsion}"
            )
        return formula
    if spec.kind == "mirror_lspace":
        return VsSequence(())
    raise VsUnavailable(f"{record.name}: V_s specification is unknown")
