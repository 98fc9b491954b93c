"""Model parameters and derived structural constants.

The equation under study is

    u_tt + (-Lap)^sigma u + mu (-Lap)^delta u_t = f(u, u_t)

with sigma >= 1, mu > 0 and delta in (0, sigma/2), posed with data
(u0, u1) measured in L^m-regularised Sobolev spaces built on L^q.

All parameters are carried as exact rationals (`fractions.Fraction`)
so that interval endpoints computed downstream (admissibility bounds,
decay exponents) come out as exact rationals, not floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import floor
from typing import Optional, Union

RationalLike = Union[int, str, Fraction]


def as_fraction(value: RationalLike | float) -> Fraction:
    """Convert a value to an exact Fraction.

    Strings may be given as "a/b" or decimal literals; floats are
    converted exactly (callers who want a nice rational should pass a
    string or Fraction).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class ModelParams:
    """The tuple (sigma, delta, mu, n, q, m, s, p) driving every formula.

    Fields
    ------
    sigma : Fraction, >= 1
        Order of the leading spatial operator (-Lap)^sigma.
    delta : Fraction, in (0, sigma/2)
        Order of the structural damping (-Lap)^delta u_t.
    mu : Fraction, > 0
        Damping strength.
    n : int
        Space dimension.
    q : Fraction, in (1, inf)
        Lebesgue base exponent of the data space.
    m : Fraction, in [1, q)
        Additional data-regularity exponent (data also in L^m).
    s : Fraction, >= 0
        Sobolev smoothness of the data.
    p : Fraction or None
        Nonlinearity exponent; None for linear-only runs.
    """

    sigma: Fraction = Fraction(1)
    delta: Fraction = Fraction(1, 4)
    mu: Fraction = Fraction(1)
    n: int = 1
    q: Fraction = Fraction(2)
    m: Fraction = Fraction(1)
    s: Fraction = Fraction(0)
    p: Optional[Fraction] = None

    @staticmethod
    def make(
        sigma: RationalLike = 1,
        delta: RationalLike = "1/4",
        mu: RationalLike = 1,
        n: int = 1,
        q: RationalLike = 2,
        m: RationalLike = 1,
        s: RationalLike = 0,
        p: Optional[RationalLike] = None,
    ) -> "ModelParams":
        """Build ModelParams, coercing every entry to an exact Fraction."""
        return ModelParams(
            sigma=as_fraction(sigma),
            delta=as_fraction(delta),
            mu=as_fraction(mu),
            n=int(n),
            q=as_fraction(q),
            m=as_fraction(m),
            s=as_fraction(s),
            p=None if p is None else as_fraction(p),
        )

    def with_(self, **kwargs) -> "ModelParams":
        """Return a copy with the given fields replaced (rationals coerced)."""
        coerced = {}
        for key, value in kwargs.items():
            if key == "n":
                coerced[key] = int(value)
            elif key == "p":
                coerced[key] = None if value is None else as_fraction(value)
            else:
                coerced[key] = as_fraction(value)
        return replace(self, **coerced)

    # Float views, convenient for the numerical modules.
    @property
    def sigma_f(self) -> float:
        return float(self.sigma)

    @property
    def delta_f(self) -> float:
        return float(self.delta)

    @property
    def mu_f(self) -> float:
        return float(self.mu)


@dataclass(frozen=True)
class DerivedConstants:
    """Structural constants derived from ModelParams.

    s0 : regularity loss, (2 + floor(n/2)) (sigma - 2 delta)
    n0 : dimension threshold, (6 delta - 2 sigma) / (sigma - 2 delta)
    n1 : loss-of-decay dimension threshold, 4 m q (sigma - delta) / (q - m)
    r  : Young conjugate defined by 1 + 1/q = 1/r + 1/m
    half_n_floor : floor(n/2)
    """

    s0: Fraction
    n0: Fraction
    n1: Fraction
    r: Fraction
    half_n_floor: int


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of parameter validation.

    `violations` lists broken standing assumptions (these make the
    parameters unusable).  `warnings` lists failed theorem gates that
    only restrict which existence theorems apply -- currently the
    parabolic-band condition floor(n/2) < n0.
    """

    ok: bool
    violations: tuple[str, ...] = field(default_factory=tuple)
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def derive_constants(params: ModelParams) -> DerivedConstants:
    """Compute the structural constants s0, n0, n1, r in exact arithmetic.

    Raises ValueError when q == m (n1 would divide by zero).
    """
    report = validate(params)
    if not report.ok:
        raise ValueError("invalid parameters: " + "; ".join(report.violations))
    sigma, delta, mu = params.sigma, params.delta, params.mu
    n, q, m = params.n, params.q, params.m
    if q == m:
        raise ValueError("q == m: loss-of-decay threshold n1 undefined")
    half = floor(Fraction(n, 2))
    s0 = (2 + half) * (sigma - 2 * delta)
    n0 = (6 * delta - 2 * sigma) / (sigma - 2 * delta)
    n1 = 4 * m * q * (sigma - delta) / (q - m)
    r = 1 / (1 + Fraction(1, 1) / q - 1 / m)
    return DerivedConstants(s0=s0, n0=n0, n1=n1, r=r, half_n_floor=half)


def validate(params: ModelParams) -> ValidationReport:
    """Check the standing assumptions; report all failures, throw nothing.

    The parabolic-band condition floor(n/2) < n0, required by the
    A-variant existence theorems, is reported in `warnings` when it
    fails: parameters outside that band are still perfectly valid for
    the linear theory and for the B-variant theorems.
    """
    violations: list[str] = []
    warnings: list[str] = []
    if params.sigma < 1:
        violations.append("sigma >= 1 violated")
    if not (0 < params.delta < params.sigma / 2):
        violations.append("delta in (0, sigma/2) violated")
    if params.mu <= 0:
        violations.append("mu > 0 violated")
    if params.n < 1:
        violations.append("n >= 1 violated")
    if params.q <= 1:
        violations.append("q > 1 violated")
    if not (1 <= params.m < params.q):
        violations.append("1 <= m < q violated")
    if params.s < 0:
        violations.append("s >= 0 violated")
    if params.p is not None and params.p <= 1:
        violations.append("p > 1 violated")
    if not violations and not parabolic_band_holds(params):
        warnings.append("parabolic band floor(n/2) < n0 fails "
                        "(A-variant theorems do not apply)")
    return ValidationReport(
        ok=not violations,
        violations=tuple(violations),
        warnings=tuple(warnings),
    )


def parabolic_band_holds(params: ModelParams) -> bool:
    """Gate floor(n/2) < n0 used by the A-variant theorems."""
    n0 = (6 * params.delta - 2 * params.sigma) / (params.sigma - 2 * params.delta)
    return floor(Fraction(params.n, 2)) < n0
