"""Pullback of divisor classes along the gluing and forgetful maps.

The gluing map identifies markings 2k-1 and 2k of a 2m-marked genus-one
curve into m non-separating nodes, producing a stable curve of arithmetic
genus m+1.  Pulling back the genus-(m+1) Picard basis:

  * lambda pulls back to lambda;
  * the separating class delta_i pulls back to the sum of delta_{0;S} over
    S a union of i glued pairs, plus (for i below the middle index) the sum
    over S whose complement is a union of i-1 glued pairs.  When m is odd
    and i = (m+1)/2 the two membership conditions coincide, so only the
    first sum is emitted;
  * the total boundary delta pulls back to (12-2m)*lambda minus
    (|S|-1)*delta_{0;S} summed over all |S| >= 2, each glued pair
    contributing minus the two cotangent classes at its markings;
  * delta_irr pulls back to the total-boundary pullback minus the
    separating pullbacks, since the bases determine it by elimination.

The forgetful pullback from m to n markings sends lambda to lambda and
delta_{0;S} to the sum of delta_{0;T} over the subsets T of {1..n} whose
intersection with {1..m} is S.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Tuple

from .picard import (
    CurveProfile,
    DivisorClassM1n,
    DivisorClassMg,
    SpaceMismatchError,
    full_mask,
)
from .scalars import Scalar, canon


@dataclass(frozen=True)
class LambdaFamily:
    """All subsets of {1, ..., 2m} that are unions of exactly i glued pairs
    {2k-1, 2k}; for i = 0 the family is {empty set}."""

    m: int
    i: int
    sets: Tuple[int, ...]


def lambda_family(i: int, m: int) -> LambdaFamily:
    """Enumerate the C(m, i) unions of i glued pairs among m."""
    if m < 1:
        raise ValueError(f"pair count must be positive, got {m}")
    if not 0 <= i <= m:
        raise ValueError(f"pair index {i} not in 0..{m}")
    pair_masks = [0b11 << (2 * (k - 1)) for k in range(1, m + 1)]
    sets = []
    for chosen in combinations(pair_masks, i):
        mask = 0
        for p in chosen:
            mask |= p
        sets.append(mask)
    return LambdaFamily(m, i, tuple(sorted(sets)))


def _separating_support(i: int, m: int) -> Tuple[int, ...]:
    """Boundary indices S carrying the pullback of delta_i (each with
    coefficient one)."""
    top = full_mask(2 * m)
    direct = lambda_family(i, m).sets
    if m % 2 == 1 and 2 * i == m + 1:
        # middle index for odd m: S and its complement describe the same
        # degeneration, so a single sum avoids double counting
        return direct
    complements = tuple(top ^ s for s in lambda_family(i - 1, m).sets)
    return direct + complements


def glue_pullback(W: DivisorClassMg, m: int) -> DivisorClassM1n:
    """Pull a genus-(m+1) divisor class back to the 2m-marked genus-one
    space along the gluing map."""
    if m < 2:
        raise ValueError(f"need at least two glued pairs, got m={m}")
    if W.g != m + 1:
        raise SpaceMismatchError(f"class lives on genus {W.g}, gluing lands in genus {m + 1}")
    n = 2 * m
    w_irr = W.delta_irr
    lam = canon(W.lam + (12 - 2 * m) * w_irr)

    boundary: Dict[int, Scalar] = {}
    if w_irr != 0:
        # total-boundary part: coefficient (1-|S|)*w_irr for every |S| >= 2;
        # one shared scalar per subset size
        row = {b: canon((1 - b) * w_irr) for b in range(2, n + 1)}
        for s in range(3, 1 << n):
            b = s.bit_count()
            if b >= 2:
                boundary[s] = row[b]
    for i in range(1, (m + 1) // 2 + 1):
        adjust = canon(W.delta[i - 1] - w_irr)
        if adjust == 0:
            continue
        for s in _separating_support(i, m):
            value = canon(boundary.get(s, 0) + adjust)
            if value == 0:
                boundary.pop(s, None)
            else:
                boundary[s] = value
    return DivisorClassM1n._trusted(n, lam, boundary)


def forget_pullback(W: DivisorClassM1n, n: int) -> DivisorClassM1n:
    """Pull a class on m markings back along the map forgetting markings
    m+1, ..., n."""
    m = W.n
    if n < m:
        raise ValueError(f"cannot forget down from {m} to {n} markings")
    if n == m:
        return W
    extensions = [t << m for t in range(1 << (n - m))]
    boundary: Dict[int, Scalar] = {}
    for s, value in W.boundary.items():
        for t in extensions:
            boundary[s | t] = value
    return DivisorClassM1n._trusted(n, W.lam, boundary)


def pushforward_profile(profile: CurveProfile, m: int) -> CurveProfile:
    """Adjoint of the forgetful pullback on profiles: the value on S is the
    sum of the values on all T with T intersect {1..m} equal to S.  Defined
    whenever no mass lands on subsets meeting {1..m} in fewer than two
    markings."""
    if m > profile.n:
        raise ValueError(f"target marking count {m} exceeds {profile.n}")
    low = full_mask(m)
    out: Dict[int, Scalar] = {}
    for t, value in profile.on_boundary.items():
        s = t & low
        if s.bit_count() < 2:
            raise ValueError(
                f"profile mass on {t:b} meets the retained markings in fewer than two points"
            )
        out[s] = out.get(s, 0) + value
    out = {k: canon(v) for k, v in out.items()}
    out = {k: v for k, v in out.items() if v != 0}
    return CurveProfile(m, profile.on_lambda, out)
