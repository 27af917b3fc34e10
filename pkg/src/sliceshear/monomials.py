"""Canonical monomials of named spectral-sequence classes.

A :class:`ClassMonomial` is an integer multiple of a product of Euler classes
``a_W``, orientation classes ``u_W`` and normed polynomial-generator classes
``N(t_i)`` living over a subgroup level of an ambient cyclic 2-group.  The
bidegree bookkeeping (stem, filtration, slice dimension) is exact and derived
from the stored exponents; monomials are immutable and always kept in
canonical form, including torsion reduction of the coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .reps import CyclicGroup, RepError, VirtualRep, regular_rep

__all__ = [
    "ClassMonomial",
    "MonomialError",
    "expand_euler",
    "expand_orientation",
    "norm_class",
    "build_D",
    "build_Dbar",
]


class MonomialError(ValueError):
    """Raised for ill-formed monomials or mismatched products."""


# a_exp / u_exp basis layout at level l >= 1: index 0 is sigma (2*sigma for
# u's), index i is lambda_i for 1 <= i <= l-1.  Level 0 carries no factors.


@dataclass(frozen=True)
class ClassMonomial:
    """coeff * prod N_{C_2}^{C_{2^j}}(t_i)^e * prod a_W^e * prod u_W^e.

    ``group`` is the ambient group of the chart; ``level`` l means the class
    lives over the subgroup C_{2^l} (top-level classes have l = exponent).
    ``norms`` holds (i, j, exponent) triples, sorted by (j, i); the a/u
    exponent vectors run over the bases (sigma, lambda_1..lambda_{l-1}) and
    (2sigma, lambda_1..lambda_{l-1}).

    The constructor canonicalizes: norm factors are merged and sorted and the
    coefficient is reduced by the torsion of the Euler classes present (a_sigma
    kills 2, a_lambda_i kills 2^(i+1); the minimum of those moduli applies).
    A vanishing coefficient collapses everything to the zero class.
    """

    group: CyclicGroup
    level: int
    coeff: int = 1
    norms: tuple[tuple[int, int, int], ...] = ()
    a_exp: tuple[int, ...] = ()
    u_exp: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.level <= self.group.exponent:
            raise MonomialError(
                f"level {self.level} out of range for ambient group {self.group}"
            )
        if not isinstance(self.coeff, int):
            raise MonomialError(f"coefficient must be an integer, got {self.coeff!r}")
        a = self._sized("a_exp", self.a_exp)
        u = self._sized("u_exp", self.u_exp)
        norms = self._merged_norms(self.norms)
        coeff = self.coeff
        modulus = self._torsion_modulus(a)
        if modulus is not None:
            coeff %= modulus
        if coeff == 0:
            a = (0,) * len(a)
            u = (0,) * len(u)
            norms = ()
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "norms", norms)
        object.__setattr__(self, "a_exp", a)
        object.__setattr__(self, "u_exp", u)

    def _sized(self, name: str, vec: tuple[int, ...]) -> tuple[int, ...]:
        if len(vec) > self.level:
            raise MonomialError(f"{name} has {len(vec)} entries, level is {self.level}")
        for e in vec:
            if not isinstance(e, int) or e < 0:
                raise MonomialError(f"{name} entries must be non-negative integers")
        return tuple(vec) + (0,) * (self.level - len(vec))

    def _merged_norms(
        self, norms: Iterable[tuple[int, int, int]]
    ) -> tuple[tuple[int, int, int], ...]:
        merged: dict[tuple[int, int], int] = {}
        for i, j, e in norms:
            if i < 1 or not 1 <= j <= self.level:
                raise MonomialError(
                    f"norm factor ({i}, {j}) out of range at level {self.level}"
                )
            if not isinstance(e, int) or e < 0:
                raise MonomialError("norm exponents must be non-negative integers")
            if e:
                merged[(j, i)] = merged.get((j, i), 0) + e
        return tuple((i, j, merged[(j, i)]) for (j, i) in sorted(merged))

    @staticmethod
    def _torsion_modulus(a_exp: tuple[int, ...]) -> int | None:
        moduli = []
        if a_exp and a_exp[0] > 0:
            moduli.append(2)
        for i in range(1, len(a_exp)):
            if a_exp[i] > 0:
                moduli.append(1 << (i + 1))
        return min(moduli) if moduli else None

    # -- constructors --------------------------------------------------------

    @classmethod
    def one(cls, group: CyclicGroup, level: int | None = None) -> "ClassMonomial":
        lv = group.exponent if level is None else level
        return cls(group, lv)

    @classmethod
    def zero(cls, group: CyclicGroup, level: int | None = None) -> "ClassMonomial":
        lv = group.exponent if level is None else level
        return cls(group, lv, coeff=0)

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_one(self) -> bool:
        return (
            self.coeff == 1
            and not self.norms
            and not any(self.a_exp)
            and not any(self.u_exp)
        )

    @property
    def level_group(self) -> CyclicGroup:
        return CyclicGroup(self.level)

    def a_exponent(self, name: int | str) -> int:
        """Exponent of a_sigma (name ``"s"``) or a_lambda_i (name ``i``)."""
        return self._exp(self.a_exp, name)

    def u_exponent(self, name: int | str) -> int:
        return self._exp(self.u_exp, name)

    def _exp(self, vec: tuple[int, ...], name: int | str) -> int:
        if name in ("s", "2s"):
            return vec[0] if vec else 0
        if isinstance(name, int) and 1 <= name <= self.level - 1:
            return vec[name]
        raise MonomialError(f"no basis slot {name!r} at level {self.level}")

    # -- grading -------------------------------------------------------------

    def degree(self) -> VirtualRep:
        """RO(C_{2^level}) degree of the monomial.

        Each norm factor (i, j) contributes (2^i - 1) copies of the regular
        representation of C_{2^j}, included into the level group by name;
        a_W contributes -W and u_W contributes |W| - W.
        """
        lg = self.level_group
        deg = VirtualRep.zero(lg)
        for i, j, e in self.norms:
            deg = deg + (e * ((1 << i) - 1)) * regular_rep(CyclicGroup(j)).pullback_to(lg)
        for idx, e in enumerate(self.a_exp):
            if e:
                deg = deg - e * self._basis_rep(lg, idx, doubled=False)
        for idx, e in enumerate(self.u_exp):
            if e:
                w = self._basis_rep(lg, idx, doubled=True)
                deg = deg + e * (VirtualRep.of(lg, triv=w.dimension) - w)
        return deg

    @staticmethod
    def _basis_rep(lg: CyclicGroup, idx: int, doubled: bool) -> VirtualRep:
        if idx == 0:
            return VirtualRep.of(lg, sigma=2 if doubled else 1)
        return VirtualRep.of(lg, lam={idx: 1})

    @property
    def slice_dim(self) -> int:
        """Total slice dimension t: sum over norm factors of e*(2^i - 1)*2^j."""
        return sum(e * ((1 << i) - 1) * (1 << j) for i, j, e in self.norms)

    @property
    def stem(self) -> int:
        return self.degree().dimension

    @property
    def filtration(self) -> int:
        return self.slice_dim - self.stem

    def bidegree(self) -> tuple[int, int, int]:
        """(stem, filtration, slice_dim); filtration also equals sum(a_exp * dims)."""
        return (self.stem, self.filtration, self.slice_dim)

    # -- algebra ---------------------------------------------------------------

    def __mul__(self, other: "ClassMonomial") -> "ClassMonomial":
        if not isinstance(other, ClassMonomial):
            return NotImplemented
        if self.group != other.group or self.level != other.level:
            raise MonomialError(
                f"cannot multiply classes over {self.group} level {self.level} "
                f"and {other.group} level {other.level}"
            )
        return ClassMonomial(
            self.group,
            self.level,
            self.coeff * other.coeff,
            self.norms + other.norms,
            tuple(a + b for a, b in zip(self.a_exp, other.a_exp)),
            tuple(a + b for a, b in zip(self.u_exp, other.u_exp)),
        )

    def __pow__(self, e: int) -> "ClassMonomial":
        if not isinstance(e, int) or e < 0:
            raise MonomialError("monomial powers must be non-negative integers")
        if e == 0:
            return ClassMonomial.one(self.group, self.level)
        return ClassMonomial(
            self.group,
            self.level,
            self.coeff**e,
            tuple((i, j, ex * e) for i, j, ex in self.norms),
            tuple(a * e for a in self.a_exp),
            tuple(u * e for u in self.u_exp),
        )

    def scaled(self, c: int) -> "ClassMonomial":
        return ClassMonomial(
            self.group, self.level, c * self.coeff, self.norms, self.a_exp, self.u_exp
        )


def expand_euler(V: VirtualRep) -> ClassMonomial:
    """The Euler class of an actual representation, a_V = prod a_W^(c_W).

    V must have non-negative multiplicities and no trivial summand.  The
    result is a top-level monomial over V's group.
    """
    if not V.is_actual() or V.c_triv != 0:
        raise RepError(
            f"Euler classes require an actual representation with no trivial "
            f"summand, got {V}"
        )
    n = V.group.exponent
    a = [V.c_sigma] + [V.c_lambda(i) for i in V.lambda_range] if n >= 1 else []
    return ClassMonomial(V.group, n, a_exp=tuple(a))


def expand_orientation(V: VirtualRep) -> ClassMonomial:
    """The orientation class u_V of an orientable actual representation.

    The sigma multiplicity must be even (the 2*sigma basis slot absorbs
    pairs); no trivial summand is allowed.
    """
    if not V.is_actual() or V.c_triv != 0:
        raise RepError(
            f"orientation classes require an actual representation with no "
            f"trivial summand, got {V}"
        )
    if V.c_sigma % 2:
        raise RepError(f"{V} is not orientable: odd sigma multiplicity")
    n = V.group.exponent
    u = [V.c_sigma // 2] + [V.c_lambda(i) for i in V.lambda_range] if n >= 1 else []
    return ClassMonomial(V.group, n, u_exp=tuple(u))


def norm_class(
    group: CyclicGroup, i: int, j: int | None = None, level: int | None = None, exp: int = 1
) -> ClassMonomial:
    """N_{C_2}^{C_{2^j}}(t_i)^exp as a monomial; j defaults to the level."""
    lv = group.exponent if level is None else level
    jj = lv if j is None else j
    return ClassMonomial(group, lv, norms=((i, jj, exp),))


def build_D(n: int, m: int) -> ClassMonomial:
    """The top-level product of norms N_{C_2}^{C_{2^n}}(t_{2^(n-k) m}), k = 1..n."""
    if n < 1 or m < 1:
        raise MonomialError(f"D indices must satisfy n >= 1, m >= 1, got ({n}, {m})")
    group = CyclicGroup(n)
    norms = tuple(((1 << (n - k)) * m, n, 1) for k in range(1, n + 1))
    return ClassMonomial(group, n, norms=norms)


def build_Dbar(n: int, m: int) -> ClassMonomial:
    """As :func:`build_D` but omitting the k = 1 factor, so that
    D = N(t_{2^(n-1) m}) * Dbar."""
    if n < 1 or m < 1:
        raise MonomialError(f"D indices must satisfy n >= 1, m >= 1, got ({n}, {m})")
    group = CyclicGroup(n)
    norms = tuple(((1 << (n - k)) * m, n, 1) for k in range(2, n + 1))
    return ClassMonomial(group, n, norms=norms)
