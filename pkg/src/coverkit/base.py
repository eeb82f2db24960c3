"""Numerical model of the base variety: lattice classes, pairing, Riemann-Roch.

A NumericalBase carries only numbers: an intersection form on the free part
of the Neron-Severi group, the canonical class, the irregularity q, chi(O)
and the topological Euler number, plus a finite list of "test classes"
standing in for the ample cone.  For surfaces the constructor checks
Noether's identity 12 chi = K^2 + e.

Torsion in NS is ignored.  Positivity is decided against the finite test
list plus positivity of the self-intersection, so "sufficiently ample" is a
contract the caller configures through the margin class, not a theorem.

Degree-zero classes carry an optional marker in a free module of formal
continuous parameters (the Pic^0 directions).  Sections of a degree-zero
bundle exist exactly when the marker vanishes, which is the one cohomology
fact about irregular bases this model uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_PRESET_NAMES = ("P2", "P1xP1", "abelian_pp", "curve_product")


def _as_q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _norm_coord(x):
    q = _as_q(x)
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class NumericalBase:
    dim: int
    ns_rank: int
    form: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    q: int
    chi_o: int
    euler: int | None
    ample_tests: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        if self.dim < 1 or self.ns_rank < 1:
            raise ValueError("need dim >= 1 and ns_rank >= 1")
        rho = self.ns_rank
        if len(self.form) != rho or any(len(row) != rho for row in self.form):
            raise ValueError("intersection form has wrong shape")
        for i in range(rho):
            for j in range(rho):
                if self.form[i][j] != self.form[j][i]:
                    raise ValueError("intersection form must be symmetric")
        if len(self.canonical) != rho:
            raise ValueError("canonical class has wrong length")
        if self.q < 0:
            raise ValueError("irregularity must be >= 0")
        if self.dim == 2:
            if self.euler is None:
                raise ValueError("surfaces need an Euler number")
            k2 = self._pair_raw(self.canonical, self.canonical)
            if 12 * self.chi_o != k2 + self.euler:
                raise ValueError(f"Noether identity fails: 12*{self.chi_o} != {k2} + {self.euler}")

    # -- classes ---------------------------------------------------------

    def cls(self, coords) -> "NSClass":
        coords = tuple(_norm_coord(c) for c in coords)
        if len(coords) != self.ns_rank:
            raise ValueError(f"expected {self.ns_rank} coordinates, got {len(coords)}")
        return NSClass(self, coords)

    def zero_class(self) -> "NSClass":
        return self.cls((0,) * self.ns_rank)

    @property
    def canonical_class(self) -> "NSClass":
        return self.cls(self.canonical)

    def _pair_raw(self, a, b):
        total = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.form[i]
            for j, bj in enumerate(b):
                if bj:
                    total += _as_q(ai) * row[j] * bj
        return total.numerator if total.denominator == 1 else total

    def pairing(self, a: "NSClass", b: "NSClass"):
        """Exact intersection number (rational when inputs are)."""
        if a.base != self or b.base != self:
            raise ValueError("classes from a different base")
        return self._pair_raw(a.coords, b.coords)

    # -- positivity ------------------------------------------------------

    def is_sufficiently_ample(self, a: "NSClass", margin: "NSClass | None" = None) -> bool:
        """Strict positivity of a - margin against every test class.

        For surfaces the self-intersection of a - margin must be positive
        too.  With an empty test list this is only the self-intersection
        check; the bundled presets all carry tests.
        """
        b = a - margin if margin is not None else a
        for t in self.ample_tests:
            if self._pair_raw(b.coords, t) <= 0:
                return False
        if self.dim == 2 and self._pair_raw(b.coords, b.coords) <= 0:
            return False
        return True

    def pairs_negatively(self, a: "NSClass") -> bool:
        return any(self._pair_raw(a.coords, t) < 0 for t in self.ample_tests)

    # -- Riemann-Roch ----------------------------------------------------

    def riemann_roch_h0(self, cls: "NSClass", marker: "Pic0Marker | None" = None) -> int | None:
        """h^0 of a line bundle known only through its class (and marker).

        Degree-zero classes follow the marker rule (1 if the continuous part
        is trivial, else 0).  Under the ampleness margin K the full
        Riemann-Roch value is returned, with vanishing assumed.  Classes
        meeting a test class negatively have no sections.  Anything else is
        None ("unknown"): the model refuses to guess.
        """
        if cls.base != self:
            raise ValueError("class from a different base")
        if cls.is_zero:
            return 1 if marker is None or marker.is_zero else 0
        if self.dim == 2 and self.is_sufficiently_ample(cls, self.canonical_class):
            # the continuous part does not change chi, and vanishing applies
            val = self.chi_o + Fraction(self.pairing(cls, cls - self.canonical_class), 2)
            if val.denominator != 1:
                raise ValueError(f"Riemann-Roch value not an integer: {val}")
            return val.numerator
        if self.pairs_negatively(cls):
            return 0
        return None

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "ns_rank": self.ns_rank,
            "form": [list(r) for r in self.form],
            "K": list(self.canonical),
            "q": self.q,
            "chi_O": self.chi_o,
            "e": self.euler,
            "ample_tests": [list(t) for t in self.ample_tests],
            **({"name": self.name} if self.name else {}),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NumericalBase":
        if isinstance(data, str):
            return cls.preset(data)
        if "preset" in data:
            return cls.preset(data["preset"])
        known = {"dim", "ns_rank", "form", "K", "q", "chi_O", "e", "ample_tests", "name"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown base keys: {sorted(extra)}")
        return cls(
            dim=data["dim"],
            ns_rank=data["ns_rank"],
            form=tuple(tuple(r) for r in data["form"]),
            canonical=tuple(data["K"]),
            q=data.get("q", 0),
            chi_o=data["chi_O"],
            euler=data.get("e"),
            ample_tests=tuple(tuple(t) for t in data.get("ample_tests", [])),
            name=data.get("name", ""),
        )

    @classmethod
    def preset(cls, name: str, genus: tuple[int, int] = (2, 2)) -> "NumericalBase":
        """Bundled surfaces: "P2", "P1xP1", "abelian_pp", "curve_product"."""
        if name == "P2":
            return cls(2, 1, ((1,),), (-3,), 0, 1, 3, ((1,),), name="P2")
        if name == "P1xP1":
            return cls(2, 2, ((0, 1), (1, 0)), (-2, -2), 0, 1, 4, ((1, 0), (0, 1)), name="P1xP1")
        if name == "abelian_pp":
            # principally polarized abelian surface with NS = Z.Theta
            return cls(2, 1, ((2,),), (0,), 2, 0, 0, ((1,),), name="abelian_pp")
        if name == "curve_product":
            g, h = genus
            if g < 2 or h < 2:
                raise ValueError("curve_product preset needs both genera >= 2")
            return cls(
                2,
                2,
                ((0, 1), (1, 0)),
                (2 * g - 2, 2 * h - 2),
                g + h,
                (1 - g) * (1 - h),
                (2 - 2 * g) * (2 - 2 * h),
                ((1, 0), (0, 1)),
                name=f"curve_product({g},{h})",
            )
        raise ValueError(f"unknown preset {name!r}; choose from {_PRESET_NAMES}")


@dataclass(frozen=True)
class NSClass:
    """A lattice class (integer or rational coordinates) on a fixed base."""

    base: NumericalBase
    coords: tuple

    def __add__(self, other: "NSClass") -> "NSClass":
        self._check(other)
        return self.base.cls(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "NSClass") -> "NSClass":
        self._check(other)
        return self.base.cls(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "NSClass":
        return self.base.cls(tuple(-a for a in self.coords))

    def __mul__(self, k) -> "NSClass":
        return self.base.cls(tuple(_as_q(k) * a for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other: "NSClass"):
        return self.base.pairing(self, other)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coords)

    def _check(self, other):
        if self.base != other.base:
            raise ValueError("classes from different bases")

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Pic0Marker:
    """Formal continuous part of a line bundle: a vector of Pic^0 symbols."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def zero(cls, rank: int) -> "Pic0Marker":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, index: int) -> "Pic0Marker":
        return cls(tuple(1 if i == index else 0 for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "Pic0Marker") -> "Pic0Marker":
        self._check(other)
        return Pic0Marker(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Pic0Marker") -> "Pic0Marker":
        self._check(other)
        return Pic0Marker(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Pic0Marker":
        return Pic0Marker(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Pic0Marker":
        return Pic0Marker(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def _check(self, other):
        if self.rank != other.rank:
            raise ValueError("markers of different ranks")

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"
