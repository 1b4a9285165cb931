"""Finite model of the Hilbert module L^2(Omega, mu) over d x d matrices.

An element is a weighted sequence ``(gamma_n, A_n)`` standing for the
function ``n -> A_n`` on a discrete measure space with point masses
``gamma_n``; the matrix-valued inner product is

    <x, y> = sum_n gamma_n A_n* B_n.

Operators are multipliers ``(T x)_n = X_n A_n``.  Continuous families
``t -> A_t`` on [0, 1] enter through :func:`discretize` (composite midpoint
rule), which turns them into elements of the same kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import codec
from .errors import DimensionError, DomainError, FixtureError, InvalidInputError
from .linalg import as_matrix, hermitian_part, polar, psd_power, spectral_fn

MAX_LEN = 16


def _blocks(blocks, what) -> tuple[np.ndarray, ...]:
    out = tuple(as_matrix(b, f"{what}[{i}]") for i, b in enumerate(blocks))
    if not out:
        raise DimensionError(f"{what} is empty")
    d = out[0].shape
    if any(b.shape != d for b in out):
        raise DimensionError(f"{what} blocks have different shapes")
    return out


@dataclass(frozen=True, eq=False)
class ModuleElement:
    weights: np.ndarray
    blocks: tuple[np.ndarray, ...]

    def __init__(self, weights, blocks):
        w = np.asarray(weights, dtype=float).reshape(-1)
        b = _blocks(blocks, "blocks")
        if len(w) != len(b):
            raise DimensionError(f"{len(w)} weights for {len(b)} blocks")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise InvalidInputError("weights must be finite and positive")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "blocks", b)

    @property
    def dim(self) -> int:
        return self.blocks[0].shape[0]

    def __len__(self):
        return len(self.blocks)

    def right_multiply(self, C) -> "ModuleElement":
        """Right module action ``(A_n C)``."""
        C = as_matrix(C, "C")
        return ModuleElement(self.weights, [A @ C for A in self.blocks])

    def to_json(self) -> dict:
        return {"weights": self.weights.tolist(), "blocks": [codec.matrix_to_json(A) for A in self.blocks]}

    @classmethod
    def from_json(cls, obj, location="element") -> "ModuleElement":
        if not isinstance(obj, dict) or "weights" not in obj or "blocks" not in obj:
            raise FixtureError("expected {'weights': [...], 'blocks': [...]}", location)
        try:
            return cls(obj["weights"], codec.matrices_from_json(obj["blocks"], f"{location}.blocks"))
        except (DimensionError, InvalidInputError, TypeError, ValueError) as exc:
            if isinstance(exc, FixtureError):
                raise
            raise FixtureError(str(exc), location) from exc


@dataclass(frozen=True, eq=False)
class MultiplierOperator:
    blocks: tuple[np.ndarray, ...]

    def __init__(self, blocks):
        object.__setattr__(self, "blocks", _blocks(blocks, "operator"))

    @classmethod
    def identity(cls, d: int, m: int) -> "MultiplierOperator":
        return cls([np.eye(d, dtype=complex)] * m)

    @property
    def dim(self) -> int:
        return self.blocks[0].shape[0]

    def __len__(self):
        return len(self.blocks)

    def adjoint(self) -> "MultiplierOperator":
        return MultiplierOperator([X.conj().T for X in self.blocks])

    def sup_norm(self) -> float:
        return max(float(np.linalg.norm(X, 2)) for X in self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [codec.matrix_to_json(X) for X in self.blocks]}

    @classmethod
    def from_json(cls, obj, location="operator") -> "MultiplierOperator":
        if not isinstance(obj, dict) or "blocks" not in obj:
            raise FixtureError("expected {'blocks': [...]}", location)
        return cls(codec.matrices_from_json(obj["blocks"], f"{location}.blocks"))


@dataclass(frozen=True)
class ModulePolar:
    unitary_blocks: tuple[np.ndarray, ...]
    modulus_blocks: tuple[np.ndarray, ...]


class Power:
    """The scalar function ``t -> t**exponent`` on ``[0, inf)`` (``0**0 = 1``).

    Recognised by :func:`transformed_gram`, which then evaluates matrix powers
    directly instead of going through a generic callback.
    """

    def __init__(self, exponent: float):
        if exponent < 0:
            raise DomainError(f"negative exponent {exponent}", witness=exponent)
        self.exponent = float(exponent)

    def __call__(self, t):
        return 1.0 if self.exponent == 0 else max(t, 0.0) ** self.exponent

    def __repr__(self):
        return f"Power({self.exponent:g})"


def _check_pair(x: ModuleElement, y: ModuleElement):
    if len(x) != len(y) or x.dim != y.dim:
        raise DimensionError(f"elements differ in shape: {len(x)}x{x.dim} vs {len(y)}x{y.dim}")
    if not np.array_equal(x.weights, y.weights):
        raise DimensionError("elements carry different weight vectors")


def _check_op(T: MultiplierOperator, x: ModuleElement):
    if len(T) != len(x) or T.dim != x.dim:
        raise DimensionError(f"operator {len(T)}x{T.dim} does not act on element {len(x)}x{x.dim}")


def inner_product(x: ModuleElement, y: ModuleElement) -> np.ndarray:
    """``<x, y> = sum_n gamma_n A_n* B_n``."""
    _check_pair(x, y)
    out = sum(g * (A.conj().T @ B) for g, A, B in zip(x.weights, x.blocks, y.blocks))
    return hermitian_part(out) if x is y else out


def apply(T: MultiplierOperator, x: ModuleElement) -> ModuleElement:
    _check_op(T, x)
    return ModuleElement(x.weights, [X @ A for X, A in zip(T.blocks, x.blocks)])


def module_polar(T: MultiplierOperator) -> ModulePolar:
    parts = [polar(X) for X in T.blocks]
    return ModulePolar(tuple(p.unitary_factor for p in parts), tuple(p.modulus for p in parts))


def _squared(h, P: np.ndarray) -> np.ndarray:
    """``h(P)^2`` for PSD ``P``."""
    if isinstance(h, Power):
        return psd_power(P, 2 * h.exponent)

    def checked(t):
        v = h(max(t, 0.0))
        if not v >= 0:
            raise ValueError(f"function value {v} is not >= 0")
        return v

    hP = spectral_fn(P, checked)
    return hermitian_part(hP @ hP)


def transformed_gram(x: ModuleElement, T: MultiplierOperator, h: Callable[[float], float], side: str = "right") -> np.ndarray:
    """``sum_n gamma_n A_n* h(|Y_n|)^2 A_n`` with ``Y_n = X_n`` (side "right",
    i.e. ``<x, h(|T|)^2 x>``) or ``Y_n = X_n*`` (side "left", ``|T*|``).
    """
    _check_op(T, x)
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    pol = module_polar(T.adjoint() if side == "left" else T)
    out = sum(g * (A.conj().T @ _squared(h, P) @ A) for g, A, P in zip(x.weights, x.blocks, pol.modulus_blocks))
    return hermitian_part(out)


# -- continuous families ------------------------------------------------------


def midpoint_nodes(m: int) -> np.ndarray:
    if not 1 <= m:
        raise DimensionError(f"need at least one node, got {m}")
    return (np.arange(m) + 0.5) / m


def polynomial_family(coeffs: Sequence, t: float) -> np.ndarray:
    """``C_0 + t C_1 + t^2 C_2 + ...``."""
    return sum(t**k * np.asarray(C, dtype=complex) for k, C in enumerate(coeffs))


def sample_family(coeffs: Sequence, m: int) -> list[np.ndarray]:
    return [polynomial_family(coeffs, t) for t in midpoint_nodes(m)]


def discretize(coeffs: Sequence, m: int) -> ModuleElement:
    """Midpoint-rule element for the family ``t -> sum_k t^k C_k`` on [0, 1]."""
    return ModuleElement(np.full(m, 1.0 / m), sample_family(coeffs, m))
