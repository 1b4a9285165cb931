"""Unitarily invariant norms: Schatten-p, Ky Fan-k and Q-norms.

Every norm here is a symmetric gauge function of the singular values, so
evaluation is ``gauge(svd(M).sigma)``.  A Q-norm over a base norm is
``base(|M|^2)^(1/2)``; since ``|M|^2`` has singular values ``sigma^2`` that is
``gauge_base(sigma^2)^(1/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, FixtureError
from .linalg import as_matrix, singular_values

MAX_Q_DEPTH = 2


@dataclass(frozen=True)
class Schatten:
    p: float

    def __post_init__(self):
        if not (self.p >= 1 and math.isfinite(self.p)):
            raise DomainError(f"Schatten exponent must be a finite real >= 1, got {self.p}", witness=self.p)

    def __str__(self):
        return f"S{self.p:g}"


@dataclass(frozen=True)
class KyFan:
    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"Ky Fan index must be a positive integer, got {self.k}", witness=self.k)

    def __str__(self):
        return f"KF{self.k}"


@dataclass(frozen=True)
class QNorm:
    base: "UINormSpec"

    def __post_init__(self):
        if q_depth(self) > MAX_Q_DEPTH:
            raise DomainError(f"Q-norm nesting deeper than {MAX_Q_DEPTH}")

    def __str__(self):
        return f"Q({self.base})"


UINormSpec = Union[Schatten, KyFan, QNorm]

OPERATOR_NORM = KyFan(1)
TRACE_NORM = Schatten(1)
FROBENIUS_NORM = Schatten(2)


def q_depth(spec: UINormSpec) -> int:
    return 1 + q_depth(spec.base) if isinstance(spec, QNorm) else 0


def gauge(spec: UINormSpec, sigma) -> float:
    """Symmetric gauge function of ``spec`` applied to nonnegative ``sigma``."""
    s = np.sort(np.abs(np.asarray(sigma, dtype=float)))[::-1]
    if isinstance(spec, Schatten):
        top = s[0] if s.size else 0.0
        if top == 0:
            return 0.0
        return float(top * np.sum((s / top) ** spec.p) ** (1.0 / spec.p))
    if isinstance(spec, KyFan):
        if spec.k > s.size:
            raise DomainError(f"Ky Fan index {spec.k} exceeds dimension {s.size}", witness=spec.k)
        return float(np.sum(s[: spec.k]))
    if isinstance(spec, QNorm):
        return math.sqrt(gauge(spec.base, s * s))
    raise TypeError(f"not a norm spec: {spec!r}")


def evaluate(spec: UINormSpec, M) -> float:
    """Value of the norm ``spec`` at the matrix ``M``."""
    return gauge(spec, singular_values(as_matrix(M)))


def is_q_norm(spec: UINormSpec) -> bool:
    """True for Q-norms in the catalog: any ``QNorm`` and Schatten p >= 2."""
    if isinstance(spec, QNorm):
        return True
    if isinstance(spec, Schatten):
        return spec.p >= 2
    return False


def catalog(d: int) -> list[UINormSpec]:
    """The finite family of norms the verifiers are exercised on."""
    out: list[UINormSpec] = [Schatten(p) for p in (1, 1.5, 2, 3, 4, 64)]
    out += [KyFan(k) for k in range(1, d + 1)]
    out += [QNorm(Schatten(1)), QNorm(Schatten(2))]
    return out


def to_json(spec: UINormSpec) -> dict:
    if isinstance(spec, Schatten):
        return {"kind": "schatten", "p": spec.p}
    if isinstance(spec, KyFan):
        return {"kind": "kyfan", "k": spec.k}
    if isinstance(spec, QNorm):
        return {"kind": "qnorm", "base": to_json(spec.base)}
    raise TypeError(f"not a norm spec: {spec!r}")


def from_json(obj, location: str = "norm") -> UINormSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FixtureError("expected an object with a 'kind' field", location)
    kind = obj["kind"]
    try:
        if kind == "schatten":
            return Schatten(float(obj["p"]))
        if kind == "kyfan":
            return KyFan(int(obj["k"]))
        if kind == "qnorm":
            return QNorm(from_json(obj["base"], f"{location}.base"))
    except KeyError as exc:
        raise FixtureError(f"missing field {exc}", location) from exc
    except DomainError as exc:
        raise FixtureError(str(exc), location) from exc
    raise FixtureError(f"unknown norm kind {kind!r}", location)
