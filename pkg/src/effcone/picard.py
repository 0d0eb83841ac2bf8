"""Divisor classes and curve profiles on moduli spaces of curves.

Two rational Picard groups are modeled.  On the space of stable genus-one
curves with n ordered markings the basis is (lambda, delta_{0;S} for subsets
S of the markings with |S| >= 2).  On the space of stable unmarked genus-g
curves (g >= 3) the basis is (lambda, delta_irr, delta_1, ..., delta_{g//2}).

Boundary indices S are encoded as bit masks: bit i-1 is set iff marking i
belongs to S.  All coefficients are exact scalars from :mod:`.scalars`;
boundary mappings are sparse and zero-pruned, so equality of classes is
plain structural equality.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .scalars import Scalar, canon, scalar_from_json, scalar_to_json

MAX_MARKINGS = 64


class SpaceMismatchError(ValueError):
    """Operands live on different moduli spaces."""


class MarkingIndexError(ValueError):
    """A marking index lies outside {1, ..., n}."""


# ---------------------------------------------------------------------------
# subset masks


def subset_mask(members: Iterable[int], n: int) -> int:
    """Bit mask of a subset of {1, ..., n}."""
    mask = 0
    for i in members:
        if not 1 <= i <= n:
            raise MarkingIndexError(f"marking {i} not in 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def subset_members(mask: int) -> Tuple[int, ...]:
    """Sorted tuple of markings in a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_size(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def _check_n(n: int) -> None:
    if not 2 <= n <= MAX_MARKINGS:
        raise ValueError(f"marking count must be in 2..{MAX_MARKINGS}, got {n}")


def _checked_boundary(boundary, n: int) -> Dict[int, Scalar]:
    out: Dict[int, Scalar] = {}
    top = full_mask(n)
    for mask, value in dict(boundary or {}).items():
        if not isinstance(mask, int) or mask < 0 or mask & ~top:
            raise MarkingIndexError(f"subset {mask!r} not within 1..{n}")
        if mask.bit_count() < 2:
            raise ValueError(
                f"boundary index {subset_members(mask)} has fewer than two markings"
            )
        value = canon(value)
        if value != 0:
            out[mask] = value
    return out


def _sparse_repr(mapping: Mapping[int, Scalar], limit: int = 6) -> str:
    items = sorted(mapping.items(), key=lambda kv: (kv[0].bit_count(), subset_members(kv[0])))
    parts = [f"d0;{set(subset_members(m))}: {v}" for m, v in items[:limit]]
    if len(items) > limit:
        parts.append(f"... ({len(items)} terms)")
    return ", ".join(parts)


# ---------------------------------------------------------------------------
# classes and profiles


class DivisorClassM1n:
    """A divisor class on the n-marked genus-one moduli space, in the
    (lambda, delta_{0;S}) basis."""

    __slots__ = ("n", "lam", "boundary")

    def __init__(self, n: int, lam: Scalar = 0, boundary: Mapping[int, Scalar] | None = None):
        _check_n(n)
        self.n = n
        self.lam = canon(lam)
        self.boundary = _checked_boundary(boundary, n)

    @classmethod
    def _trusted(cls, n: int, lam: Scalar, boundary: Dict[int, Scalar]) -> "DivisorClassM1n":
        # internal fast path: caller guarantees canonical, pruned, in-range data
        obj = object.__new__(cls)
        obj.n = n
        obj.lam = lam
        obj.boundary = boundary
        return obj

    def coeff(self, mask: int) -> Scalar:
        """Coefficient of delta_{0;S} for the given subset mask."""
        return self.boundary.get(mask, 0)

    def is_zero(self) -> bool:
        return self.lam == 0 and not self.boundary

    def __eq__(self, other):
        if not isinstance(other, DivisorClassM1n):
            return NotImplemented
        return self.n == other.n and self.lam == other.lam and self.boundary == other.boundary

    def __repr__(self):
        return f"<DivisorClassM1n n={self.n} lambda={self.lam} {_sparse_repr(self.boundary)}>"


class CurveProfile:
    """Intersection numbers of a one-parameter family of marked genus-one
    curves with the Picard basis: a linear functional given by its value on
    lambda and on each delta_{0;S} (finite support, unlisted indices are 0)."""

    __slots__ = ("n", "on_lambda", "on_boundary")

    def __init__(self, n: int, on_lambda: Scalar = 0, on_boundary: Mapping[int, Scalar] | None = None):
        _check_n(n)
        self.n = n
        self.on_lambda = canon(on_lambda)
        self.on_boundary = _checked_boundary(on_boundary, n)

    def value_on(self, mask: int) -> Scalar:
        return self.on_boundary.get(mask, 0)

    def __eq__(self, other):
        if not isinstance(other, CurveProfile):
            return NotImplemented
        return (
            self.n == other.n
            and self.on_lambda == other.on_lambda
            and self.on_boundary == other.on_boundary
        )

    def __repr__(self):
        return f"<CurveProfile n={self.n} lambda={self.on_lambda} {_sparse_repr(self.on_boundary)}>"


class DivisorClassMg:
    """A divisor class on the genus-g moduli space (g >= 3), in the basis
    (lambda, delta_irr, delta_1, ..., delta_{g//2})."""

    __slots__ = ("g", "lam", "delta_irr", "delta")

    def __init__(self, g: int, lam: Scalar = 0, delta_irr: Scalar = 0, delta: Sequence[Scalar] = ()):
        if g < 3:
            raise ValueError(f"genus must be >= 3, got {g}")
        delta = tuple(canon(c) for c in delta)
        if len(delta) != g // 2:
            raise ValueError(f"expected {g // 2} separating-node coefficients, got {len(delta)}")
        self.g = g
        self.lam = canon(lam)
        self.delta_irr = canon(delta_irr)
        self.delta = delta

    @classmethod
    def from_delta_form(
        cls, g: int, lam: Scalar, total_delta: Scalar, parts: Sequence[Scalar]
    ) -> "DivisorClassMg":
        """Build from the alternative expression lam*lambda + total_delta*delta
        + sum parts[i]*delta_{i+1}, using delta = delta_irr + sum delta_i."""
        parts = tuple(parts)
        if len(parts) != g // 2:
            raise ValueError(f"expected {g // 2} separating-node coefficients, got {len(parts)}")
        return cls(g, lam, total_delta, tuple(total_delta + p for p in parts))

    def delta_form(self):
        """The same class written against (lambda, delta, delta_1, ...)."""
        return (self.lam, self.delta_irr, tuple(canon(c - self.delta_irr) for c in self.delta))

    def __eq__(self, other):
        if not isinstance(other, DivisorClassMg):
            return NotImplemented
        return (
            self.g == other.g
            and self.lam == other.lam
            and self.delta_irr == other.delta_irr
            and self.delta == other.delta
        )

    def __repr__(self):
        ds = " ".join(f"d{i + 1}={c}" for i, c in enumerate(self.delta))
        return f"<DivisorClassMg g={self.g} lambda={self.lam} d_irr={self.delta_irr} {ds}>"


# ---------------------------------------------------------------------------
# operations


def delta_irr_class(n: int) -> DivisorClassM1n:
    """delta_irr rewritten in the basis: it equals 12*lambda here."""
    return DivisorClassM1n(n, 12)


def psi_class(i: int, n: int) -> DivisorClassM1n:
    """The cotangent class at marking i: lambda plus every delta_{0;S} with
    i in S (and |S| >= 2)."""
    _check_n(n)
    if not 1 <= i <= n:
        raise MarkingIndexError(f"marking {i} not in 1..{n}")
    bit = 1 << (i - 1)
    boundary = {}
    for rest in range(1 << n):
        if rest & bit or rest.bit_count() < 1:
            continue
        boundary[rest | bit] = 1
    return DivisorClassM1n._trusted(n, 1, boundary)


def total_delta_class(n: int) -> DivisorClassM1n:
    """Class of the union of all boundary divisors: 12*lambda plus every
    delta_{0;S} with |S| >= 2."""
    _check_n(n)
    boundary = {s: 1 for s in range(1 << n) if s.bit_count() >= 2}
    return DivisorClassM1n._trusted(n, 12, boundary)


def expand_symbol(symbol: str, n: int, index: int | None = None) -> DivisorClassM1n:
    """Rewrite a derived divisor symbol in the (lambda, delta_{0;S}) basis.

    ``symbol`` is one of ``delta_irr``, ``psi`` (requires ``index``) or
    ``total_delta``.
    """
    if symbol == "delta_irr":
        return delta_irr_class(n)
    if symbol == "psi":
        if index is None:
            raise ValueError("psi requires a marking index")
        return psi_class(index, n)
    if symbol == "total_delta":
        return total_delta_class(n)
    raise ValueError(f"unknown symbol {symbol!r}")


def linear_combine(terms: Sequence[Tuple[Scalar, DivisorClassM1n]]) -> DivisorClassM1n:
    """Exact linear combination of classes on one marked space."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty combination has no ambient space")
    n = terms[0][1].n
    lam: Scalar = 0
    boundary: Dict[int, Scalar] = {}
    for coeff, cls in terms:
        if cls.n != n:
            raise SpaceMismatchError(f"cannot combine classes on n={n} and n={cls.n}")
        coeff = canon(coeff)
        if coeff == 0:
            continue
        lam = lam + coeff * cls.lam
        for mask, value in cls.boundary.items():
            boundary[mask] = boundary.get(mask, 0) + coeff * value
    boundary = {m: canon(v) for m, v in boundary.items()}
    boundary = {m: v for m, v in boundary.items() if v != 0}
    return DivisorClassM1n._trusted(n, canon(lam), boundary)


def scale(coeff: Scalar, cls: DivisorClassM1n) -> DivisorClassM1n:
    return linear_combine([(coeff, cls)])


def pair(profile: CurveProfile, cls: DivisorClassM1n) -> Scalar:
    """Intersection number of the family against the class:
    on_lambda * lambda-coefficient plus the sum over the profile support."""
    if profile.n != cls.n:
        raise SpaceMismatchError(f"profile on n={profile.n}, class on n={cls.n}")
    total = profile.on_lambda * cls.lam
    boundary = cls.boundary
    for mask, value in profile.on_boundary.items():
        c = boundary.get(mask)
        if c is not None:
            total = total + value * c
    return total


def _check_permutation(sigma: Sequence[int], n: int) -> Tuple[int, ...]:
    sigma = tuple(sigma)
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {sigma}")
    return sigma


def permute_mask(mask: int, sigma: Sequence[int]) -> int:
    out = 0
    i = 1
    while mask:
        if mask & 1:
            out |= 1 << (sigma[i - 1] - 1)
        mask >>= 1
        i += 1
    return out


def permute_markings(cls: DivisorClassM1n, sigma: Sequence[int]) -> DivisorClassM1n:
    """Relabel markings by ``sigma`` (a sequence of images of 1..n): lambda
    is fixed and each delta_{0;S} coefficient is carried to delta_{0;sigma(S)}."""
    sigma = _check_permutation(sigma, cls.n)
    boundary = {permute_mask(m, sigma): v for m, v in cls.boundary.items()}
    return DivisorClassM1n._trusted(cls.n, cls.lam, boundary)


def permute_profile(profile: CurveProfile, sigma: Sequence[int]) -> CurveProfile:
    sigma = _check_permutation(sigma, profile.n)
    boundary = {permute_mask(m, sigma): v for m, v in profile.on_boundary.items()}
    out = object.__new__(CurveProfile)
    out.n = profile.n
    out.on_lambda = profile.on_lambda
    out.on_boundary = boundary
    return out


def compose_permutations(first: Sequence[int], second: Sequence[int]) -> Tuple[int, ...]:
    """Permutation acting as ``first`` then ``second``."""
    return tuple(second[f - 1] for f in first)


# ---------------------------------------------------------------------------
# JSON formats


def _boundary_to_json(mapping: Mapping[int, Scalar]) -> list:
    items = sorted(mapping.items(), key=lambda kv: (kv[0].bit_count(), subset_members(kv[0])))
    return [{"S": list(subset_members(m)), "coeff": scalar_to_json(v)} for m, v in items]


def _boundary_from_json(entries, n: int) -> Dict[int, Scalar]:
    out: Dict[int, Scalar] = {}
    for entry in entries:
        mask = subset_mask(entry["S"], n)
        if mask in out:
            raise ValueError(f"duplicate boundary index {entry['S']}")
        out[mask] = scalar_from_json(entry["coeff"])
    return out


def m1n_class_to_json(cls: DivisorClassM1n) -> dict:
    return {
        "space": {"type": "M1n", "n": cls.n},
        "lambda": scalar_to_json(cls.lam),
        "boundary": _boundary_to_json(cls.boundary),
    }


def m1n_class_from_json(obj: dict) -> DivisorClassM1n:
    space = obj["space"]
    if space.get("type") != "M1n":
        raise ValueError(f"expected an M1n class, got space {space!r}")
    n = space["n"]
    return DivisorClassM1n(n, scalar_from_json(obj["lambda"]), _boundary_from_json(obj["boundary"], n))


def profile_to_json(profile: CurveProfile) -> dict:
    return {
        "space": {"type": "M1n", "n": profile.n},
        "on_lambda": scalar_to_json(profile.on_lambda),
        "on_boundary": _boundary_to_json(profile.on_boundary),
    }


def profile_from_json(obj: dict) -> CurveProfile:
    space = obj["space"]
    if space.get("type") != "M1n":
        raise ValueError(f"expected an M1n profile, got space {space!r}")
    n = space["n"]
    return CurveProfile(n, scalar_from_json(obj["on_lambda"]), _boundary_from_json(obj["on_boundary"], n))


def mg_class_to_json(cls: DivisorClassMg) -> dict:
    return {
        "space": {"type": "Mg", "g": cls.g},
        "lambda": scalar_to_json(cls.lam),
        "delta_irr": scalar_to_json(cls.delta_irr),
        "delta": [scalar_to_json(c) for c in cls.delta],
    }


def mg_class_from_json(obj: dict) -> DivisorClassMg:
    space = obj["space"]
    if space.get("type") != "Mg":
        raise ValueError(f"expected an Mg class, got space {space!r}")
    return DivisorClassMg(
        space["g"],
        scalar_from_json(obj["lambda"]),
        scalar_from_json(obj["delta_irr"]),
        [scalar_from_json(c) for c in obj["delta"]],
    )
