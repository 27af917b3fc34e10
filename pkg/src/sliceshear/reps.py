"""Exact arithmetic for cyclic 2-groups and their real representation rings.

Virtual representations of C_{2^n} are stored on the 2-local basis
(1, sigma, lambda_1, ..., lambda_{n-1}): the trivial representation, the
sign representation, and the two-dimensional rotation by pi/2^i.  lambda_0
is never stored; it equals 2*sigma and is collapsed at parse time.  All
coefficients are integers, line intercepts are exact rationals, and nothing
in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

__all__ = [
    "CyclicGroup",
    "VirtualRep",
    "Line",
    "RepError",
    "regular_rep",
    "rho_bar",
    "tau",
    "line_L",
    "constant_C",
]


class RepError(ValueError):
    """A malformed group or representation, or an out-of-range subgroup index."""


@dataclass(frozen=True)
class CyclicGroup:
    """The cyclic 2-group C_{2^exponent}.

    Subgroups are exactly C_{2^k} for 0 <= k <= exponent, and every quotient
    C_{2^exponent}/C_{2^k} is again cyclic of order 2^(exponent-k).
    """

    exponent: int

    def __post_init__(self) -> None:
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise RepError(
                f"group exponent must be a non-negative integer, got {self.exponent!r}"
            )

    @property
    def order(self) -> int:
        return 1 << self.exponent

    def subgroup(self, k: int) -> "CyclicGroup":
        if not 0 <= k <= self.exponent:
            raise RepError(f"C_(2^{k}) is not a subgroup of {self}")
        return CyclicGroup(k)

    def quotient(self, k: int) -> "CyclicGroup":
        if not 0 <= k <= self.exponent:
            raise RepError(f"cannot form the quotient of {self} by C_(2^{k})")
        return CyclicGroup(self.exponent - k)

    def __str__(self) -> str:
        return f"C{self.order}"


def _basis_size(exponent: int) -> int:
    # basis (1,) for the trivial group, else (1, sigma, lambda_1..lambda_{n-1})
    return 1 if exponent == 0 else exponent + 1


@dataclass(frozen=True)
class VirtualRep:
    """A virtual real representation of a cyclic 2-group.

    ``coeffs[0]`` is the multiplicity of the trivial representation,
    ``coeffs[1]`` of sigma (absent for the trivial group) and ``coeffs[1+i]``
    of lambda_i for 1 <= i <= exponent-1.  Values are immutable; arithmetic
    returns new objects.
    """

    group: CyclicGroup
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        want = _basis_size(self.group.exponent)
        if len(self.coeffs) != want:
            raise RepError(
                f"expected {want} basis coefficients for RO({self.group}), "
                f"got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if not isinstance(c, int):
                raise RepError(f"coefficients must be integers, got {c!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, group: CyclicGroup) -> "VirtualRep":
        return cls(group, (0,) * _basis_size(group.exponent))

    @classmethod
    def of(
        cls,
        group: CyclicGroup,
        triv: int = 0,
        sigma: int = 0,
        lam: Mapping[int, int] | None = None,
    ) -> "VirtualRep":
        """Build a representation from named multiplicities."""
        n = group.exponent
        co = [0] * _basis_size(n)
        co[0] = triv
        if sigma:
            if n == 0:
                raise RepError("sigma is not a basis element over the trivial group")
            co[1] = sigma
        for i, c in (lam or {}).items():
            if not 1 <= i <= n - 1:
                raise RepError(f"lambda_{i} is not a basis element of RO({group})")
            co[1 + i] += c
        return cls(group, tuple(co))

    # -- coefficient access ------------------------------------------------

    @property
    def c_triv(self) -> int:
        return self.coeffs[0]

    @property
    def c_sigma(self) -> int:
        return self.coeffs[1] if self.group.exponent >= 1 else 0

    def c_lambda(self, i: int) -> int:
        if not 1 <= i <= self.group.exponent - 1:
            raise RepError(f"lambda_{i} is not a basis element of RO({self.group})")
        return self.coeffs[1 + i]

    @property
    def lambda_range(self) -> range:
        return range(1, max(self.group.exponent, 1))

    @property
    def dimension(self) -> int:
        """Virtual real dimension: triv + sigma + 2 * (sum of lambda parts)."""
        n = self.group.exponent
        if n == 0:
            return self.coeffs[0]
        return self.coeffs[0] + self.coeffs[1] + 2 * sum(self.coeffs[2:])

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_actual(self) -> bool:
        """True when every multiplicity is non-negative."""
        return all(c >= 0 for c in self.coeffs)

    # -- ring operations ---------------------------------------------------

    def _same_group(self, other: "VirtualRep") -> None:
        if self.group != other.group:
            raise RepError(
                f"representations live over different groups: "
                f"{self.group} vs {other.group}"
            )

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        self._same_group(other)
        return VirtualRep(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        self._same_group(other)
        return VirtualRep(self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "VirtualRep":
        return VirtualRep(self.group, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar: int) -> "VirtualRep":
        if not isinstance(scalar, int):
            return NotImplemented
        return VirtualRep(self.group, tuple(scalar * a for a in self.coeffs))

    __rmul__ = __mul__

    # -- change of group ---------------------------------------------------

    def fixed_points(self, k: int) -> "VirtualRep":
        """The C_{2^k}-fixed representation, as a representation of the quotient.

        Basis rule: 1 survives always; sigma survives iff C_{2^k} lies in its
        kernel C_{2^(n-1)}; lambda_i survives iff C_{2^k} lies in its kernel
        C_{2^(n-i-1)}.  Surviving elements keep their names in the quotient.
        """
        n = self.group.exponent
        if not 0 <= k <= n:
            raise RepError(f"fixed-point index k={k} out of range for {self.group}")
        q = self.group.quotient(k)
        out = [0] * _basis_size(q.exponent)
        out[0] = self.c_triv
        if k <= n - 1:
            out[1] = self.c_sigma
        for i in self.lambda_range:
            if k <= n - 1 - i:
                out[1 + i] = self.c_lambda(i)
        return VirtualRep(q, tuple(out))

    def pullback_to(self, group: CyclicGroup) -> "VirtualRep":
        """Name-preserving pullback along the quotient map onto this rep's group.

        Inverse to ``fixed_points``: fixed_points(pullback(V), k) == V.
        """
        if group.exponent < self.group.exponent:
            raise RepError(
                f"cannot pull back from {self.group} to the smaller group {group}"
            )
        out = [0] * _basis_size(group.exponent)
        out[0] = self.c_triv
        if self.group.exponent >= 1:
            out[1] = self.c_sigma
            for i in self.lambda_range:
                out[1 + i] = self.c_lambda(i)
        return VirtualRep(group, tuple(out))

    def restrict(self, m: int) -> "VirtualRep":
        """Restriction to the subgroup C_{2^m}, generated by gamma^(2^(n-m)).

        sigma restricts to sigma only on the full group; lambda_i restricts to
        lambda_{i-(n-m)} when that rotation is still free on C_{2^m}, to
        2*sigma when it becomes rotation by pi, and to two trivial summands
        once it is invisible.
        """
        n = self.group.exponent
        if not 0 <= m <= n:
            raise RepError(f"restriction level m={m} out of range for {self.group}")
        sub = CyclicGroup(m)
        out = [0] * _basis_size(m)
        out[0] = self.c_triv
        if n >= 1:
            if m == n:
                out[1] = self.c_sigma
            else:
                out[0] += self.c_sigma
        for i in self.lambda_range:
            c = self.c_lambda(i)
            if i > n - m:
                out[1 + (i - (n - m))] += c
            elif i == n - m:
                out[1] += 2 * c
            else:
                out[0] += 2 * c
        return VirtualRep(sub, tuple(out))

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        """Literal form used by the chart DSL, e.g. ``2-2s`` or ``10-2s-4l1``."""
        parts: list[str] = []

        def add(coeff: int, name: str) -> None:
            if coeff == 0:
                return
            sign = "-" if coeff < 0 else ("+" if parts else "")
            mag = abs(coeff)
            if name == "":
                parts.append(f"{sign}{mag}")
            else:
                parts.append(f"{sign}{'' if mag == 1 else mag}{name}")

        add(self.c_triv, "")
        add(self.c_sigma, "s")
        for i in self.lambda_range:
            add(self.c_lambda(i), f"l{i}")
        return "".join(parts) if parts else "0"


def regular_rep(group: CyclicGroup) -> VirtualRep:
    """The regular representation: 1 + sigma + sum_i 2^(i-1) lambda_i."""
    n = group.exponent
    if n == 0:
        return VirtualRep.of(group, triv=1)
    return VirtualRep.of(
        group, triv=1, sigma=1, lam={i: 1 << (i - 1) for i in range(1, n)}
    )


def rho_bar(n_plus_1: int, k: int = 0) -> VirtualRep:
    """The reduced-regular family over C_{2^(n+1)}.

    ``rho_bar(n+1, k)`` is sigma + sum_{m=1}^{n-k} 2^(m-1) lambda_m, of
    dimension 2^(n+1-k) - 1.  k = 0 recovers the full reduced regular
    representation.
    """
    n = n_plus_1 - 1
    if n_plus_1 < 1 or not 0 <= k <= n:
        raise RepError(f"rho_bar index k={k} out of range for C_(2^{n_plus_1})")
    group = CyclicGroup(n_plus_1)
    return VirtualRep.of(
        group, sigma=1, lam={m: 1 << (m - 1) for m in range(1, n - k + 1)}
    )


@dataclass(frozen=True)
class Line:
    """A line s = slope*(t-s) + intercept on a fixed-grading chart page.

    Coordinates are (x, s) with x the stem t-s and s the filtration.  The
    intercept is an exact rational; there is no floating point.
    """

    slope: int
    intercept: Fraction
    grading: VirtualRep

    def __post_init__(self) -> None:
        object.__setattr__(self, "intercept", Fraction(self.intercept))

    def at(self, x: Union[int, Fraction]) -> Fraction:
        return Fraction(self.slope) * x + self.intercept

    def on_or_above(self, x: Union[int, Fraction], s: Union[int, Fraction]) -> bool:
        """True when the chart point (x, s) lies on or above the line."""
        return Fraction(s) >= self.at(x)

    def shifted(self, ds: Union[int, Fraction]) -> "Line":
        return Line(self.slope, self.intercept + Fraction(ds), self.grading)

    def equation(self) -> str:
        lhs = f"s = {self.slope}(t-s)" if self.slope != 0 else "s ="
        c = self.intercept
        if self.slope == 0:
            return f"s = {c}"
        if c == 0:
            return lhs
        return f"{lhs} {'+' if c > 0 else '-'} {abs(c)}"


def tau(V: VirtualRep, k: int) -> int:
    """Max over the subgroups C_{2^j}, 0 <= j <= k, of |V^{C_{2^j}}|*2^j - |V|.

    Subgroups of a cyclic 2-group are linearly ordered, so the family of
    subgroups of order at most 2^k contributes exactly j = 0..k.  The j = 0
    term vanishes, hence tau(V, k) >= 0 and tau(V, 0) = 0.
    """
    n = V.group.exponent
    if not 0 <= k <= n:
        raise RepError(f"tau index k={k} out of range for {V.group}")
    dim = V.dimension
    return max(V.fixed_points(j).dimension * (1 << j) - dim for j in range(k + 1))


def line_L(V: VirtualRep, k: int) -> Line:
    """The slope-(2^k - 1) stratification line s = (2^k-1)(t-s) + tau(V, k)."""
    return Line(slope=(1 << k) - 1, intercept=Fraction(tau(V, k)), grading=V)


def constant_C(V: VirtualRep, k: int) -> Fraction:
    """Horizontal threshold on the sheared-down side of the slope-(2^k - 1) region.

    Equals (tau(V, k) - (|V^{C_{2^k}}|*2^k - |V|)) / 2^k; non-negative because
    tau is the max over a set containing that term.
    """
    n_plus_1 = V.group.exponent
    if not 1 <= k <= n_plus_1 - 1:
        raise RepError(f"threshold index k={k} out of range for {V.group}")
    gap = V.fixed_points(k).dimension * (1 << k) - V.dimension
    return Fraction(tau(V, k) - gap, 1 << k)
