"""Three independent routes to the pairing of the d-gonal pencil against
the glued Brill-Noether pullback, and the sign table over d.

The three routes are:

* ``pairing_direct``: assemble the full sparse pullback expansion on 4d-4
  markings and contract it against the profile.  Exponential in d, so it is
  guarded by a cap (default d <= 6, about 10^6 boundary indices).
* ``pairing_binomial``: the binomial-sum expression obtained by grouping the
  profile support by subset size.
* ``pairing_closed``: the closed form
  c * (2/3) * ( d(d-2)^(2d-2) - 2(d-3)(d-1)^(2d-1) ).

All routes return the same exact rational, positive at d = 3 and negative
for every d >= 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .corpus import bn_class, bn_scale, profile
from .gluing import glue_pullback
from .picard import pair
from .scalars import Rat, binom, canon, format_rat

DIRECT_ROUTE_DEFAULT_CAP = 6


class ResourceGuardError(RuntimeError):
    """The direct enumeration route was asked to exceed its cap."""


def pairing_direct(d: int, max_d: int = DIRECT_ROUTE_DEFAULT_CAP) -> Rat:
    """Pairing by full sparse enumeration of the pullback on 4d-4 markings."""
    if d < 3:
        raise ValueError(f"gonal pairings need d >= 3, got {d}")
    if d > max_d:
        raise ResourceGuardError(
            f"direct route capped at d = {max_d} (2^{4 * d - 4} subsets at d = {d}); "
            "raise the cap explicitly to override"
        )
    return canon(pair(profile("gonal", d), glue_pullback(bn_class(d), 2 * d - 2)))


def even_subset_sum(d: int) -> int:
    """The middle grouped sum: over s = 1 .. 2d-2 of
    2 (d-2)^(2d-2-s) (s-1) C(2d-2, s).

    Collapses to 2((d-1)^(2d-2) + (d-2)^(2d-2)); both forms are computed
    and compared here.
    """
    total = sum(
        2 * (d - 2) ** (2 * d - 2 - s) * (s - 1) * binom(2 * d - 2, s)
        for s in range(1, 2 * d - 1)
    )
    collapsed = 2 * ((d - 1) ** (2 * d - 2) + (d - 2) ** (2 * d - 2))
    if total != collapsed:
        raise ArithmeticError(
            f"grouped sum {total} disagrees with its collapsed form {collapsed} at d={d}"
        )
    return total


def pairing_binomial(d: int) -> Rat:
    """Pairing via the size-grouped binomial sums.

    Groups the profile support into the 2d-2 pair collisions, the all-even
    subsets, and the odd-augmented subsets; each group's coefficient in the
    pullback depends only on subset size.
    """
    if d < 3:
        raise ValueError(f"gonal pairings need d >= 3, got {d}")
    pairs_term = (2 - Fraction(4 * d, 3)) * 2 * (d - 1) ** (2 * d - 1)
    evens_term = Fraction(d, 3) * even_subset_sum(d)
    odd_term = (
        Fraction(d, 3)
        * (2 * d - 2)
        * sum(
            (d - 1) * (d - 2) ** (2 * d - 3 - s) * s * binom(2 * d - 3, s)
            for s in range(1, 2 * d - 2)
        )
    )
    return canon(bn_scale(d) * (pairs_term + evens_term + odd_term))


def pairing_closed(d: int) -> Rat:
    """Pairing via the closed form."""
    if d < 3:
        raise ValueError(f"gonal pairings need d >= 3, got {d}")
    core = d * (d - 2) ** (2 * d - 2) - 2 * (d - 3) * (d - 1) ** (2 * d - 1)
    return canon(bn_scale(d) * Fraction(2, 3) * core)


@dataclass(frozen=True)
class GonalRow:
    d: int
    value: Rat
    unscaled: Rat  # value divided by the class normalization constant
    sign: str


def negativity_report(d_max: int) -> List[GonalRow]:
    """Signs of the closed-form pairing for d = 3 .. d_max."""
    if d_max < 3:
        raise ValueError(f"report range must reach at least d = 3, got {d_max}")
    rows = []
    for d in range(3, d_max + 1):
        value = pairing_closed(d)
        sign = "+" if value > 0 else ("-" if value < 0 else "0")
        rows.append(GonalRow(d, value, canon(value / bn_scale(d)), sign))
    return rows


def format_report(rows: List[GonalRow]) -> str:
    lines = ["  d  sign  pairing (unscaled)"]
    for row in rows:
        lines.append(f"{row.d:3d}   {row.sign}   {format_rat(row.value)} ({format_rat(row.unscaled)})")
    return "\n".join(lines)
