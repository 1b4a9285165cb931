"""Randomized verification campaigns, instance (de)serialization and replay.

Seed splitting: trial ``k`` of inequality ``ident`` under campaign seed ``s``
draws from ``numpy.random.default_rng(hash64(s, ident, k))`` where ``hash64``
is the first 8 bytes (big-endian) of ``sha256(f"{s}:{ident}:{k}")``.  The
parameter grid is shuffled once per inequality with ``hash64(s, ident,
"grid")`` and trial ``k`` takes grid entry ``k mod len(grid)``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import codec
from . import verifiers as V
from .errors import FixtureError
from .linalg import (
    op_norm,
    random_commuting_normal_family,
    random_matrix,
    random_psd,
    random_unitary,
)
from .means import weighted_geometric_mean
from .module import ModuleElement, MultiplierOperator, Power, transformed_gram
from .norms import UINormSpec, catalog, from_json as norm_from_json, is_q_norm, to_json as norm_to_json

DEFAULT_P = (1.5, 2.0, 3.0, 4.0)
DEFAULT_R = (1.0, 2.0, 3.0)
DEFAULT_ALPHA = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_DIMS = (1, 2, 3, 4)
DEFAULT_LENS = (1, 2, 4, 8)
MAX_DIM = 8
MAX_LEN = 16
REPLAY_TOL = 1e-9


def hash64(*parts) -> int:
    text = ":".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


@dataclass
class CampaignConfig:
    inequality_ids: list[str]
    dims: list[int] = field(default_factory=lambda: list(DEFAULT_DIMS))
    seq_lens: list[int] = field(default_factory=lambda: list(DEFAULT_LENS))
    p_values: list[float] = field(default_factory=lambda: list(DEFAULT_P))
    r_values: list[float] = field(default_factory=lambda: list(DEFAULT_R))
    alpha_values: list[float] = field(default_factory=lambda: list(DEFAULT_ALPHA))
    theta_values: list[float] | None = None
    norm_specs: list[UINormSpec] | None = None
    trials: int = 200
    seed: int = 0
    tolerance: float = V.TAU

    def __post_init__(self):
        if not self.inequality_ids:
            raise ValueError("no inequalities selected")
        unknown = [i for i in self.inequality_ids if i not in REGISTRY]
        if unknown:
            raise ValueError(f"unknown inequality ids: {unknown}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not all(1 <= d <= MAX_DIM for d in self.dims):
            raise ValueError(f"dims must lie in 1..{MAX_DIM}")
        if not all(1 <= m <= MAX_LEN for m in self.seq_lens):
            raise ValueError(f"sequence lengths must lie in 1..{MAX_LEN}")
        if not all(p > 1 for p in self.p_values):
            raise ValueError("every p must exceed 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.theta_values is None:
            self.theta_values = [1.0 / p for p in self.p_values]

    def to_json(self) -> dict:
        return {
            "inequality_ids": list(self.inequality_ids),
            "dims": list(self.dims),
            "seq_lens": list(self.seq_lens),
            "p_values": list(self.p_values),
            "q_values": [p / (p - 1) for p in self.p_values],
            "r_values": list(self.r_values),
            "alpha_values": list(self.alpha_values),
            "theta_values": list(self.theta_values),
            "norm_specs": None if self.norm_specs is None else [norm_to_json(n) for n in self.norm_specs],
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
        }


# -- instance generation ----------------------------------------------------------


def _weights(rng, m, normalize=False):
    w = rng.uniform(0.2, 1.0, m)
    return w / w.sum() if normalize else w


def _mats(rng, d, m, singular_prob=0.0):
    out = []
    for _ in range(m):
        M = random_matrix(d, rng)
        if d > 1 and rng.random() < singular_prob:
            M = M @ random_psd(d, rng, rank=int(rng.integers(1, d)))
        out.append(M)
    return out


def _psds(rng, d, m, singular_prob=0.0):
    return [random_psd(d, rng, rank=int(rng.integers(1, d)) if d > 1 and rng.random() < singular_prob else None)
            for _ in range(m)]


def _contraction(rng, d):
    C = random_matrix(d, rng)
    return C * (rng.uniform(0.3, 1.0) / op_norm(C))


def _commuting(rng, d, m):
    return random_commuting_normal_family(d, m, rng)


def _norms_for(cfg: CampaignConfig, d: int, q_only=False):
    specs = cfg.norm_specs if cfg.norm_specs is not None else catalog(d)
    out = []
    for s in specs:
        if getattr(s, "k", 1) > d:
            continue
        if q_only and not is_q_norm(s):
            continue
        out.append(s)
    return out


@dataclass(frozen=True)
class Entry:
    """How to sample, run and (de)serialize one inequality."""

    axes: tuple[str, ...]
    build: Callable  # (rng, params) -> inputs
    run: Callable  # (inputs, params, tau) -> VerdictRecord
    kinds: dict  # input name -> codec kind
    filt: Callable = lambda prm: True
    q_only: bool = False


def _elem(rng, d, m, **kw):
    return ModuleElement(_weights(rng, m), _mats(rng, d, m, **kw))


REGISTRY: dict[str, Entry] = {}


def _register(ident, axes, build, run, kinds, filt=lambda prm: True, q_only=False):
    REGISTRY[ident] = Entry(tuple(axes), build, run, kinds, filt, q_only)


def _b_cs(rng, prm):
    w = _weights(rng, prm["m"])
    return {"x": ModuleElement(w, _mats(rng, prm["d"], prm["m"], singular_prob=0.2)),
            "y": ModuleElement(w, _mats(rng, prm["d"], prm["m"], singular_prob=0.2))}


def _b_wcs(rng, prm):
    out = _b_cs(rng, prm)
    out["T"] = MultiplierOperator(_mats(rng, prm["d"], prm["m"], singular_prob=0.3))
    return out


def _b_hm(rng, prm):
    d = prm["d"]
    A = random_psd(d, rng, rank=int(rng.integers(1, d)) if d > 1 and rng.random() < 0.2 else None)
    B = random_psd(d, rng)
    return {"A": A, "B": B, "X": V.horn_mathias_instance(A, B, _contraction(rng, d))}


def _b_disc(rng, prm, normalize=False):
    d, m = prm["d"], prm["m"]
    return {"gammas": _weights(rng, m, normalize), "As": _mats(rng, d, m, 0.2), "Bs": _mats(rng, d, m, 0.2),
            "Xs": _mats(rng, d, m, 0.3)}


def _b_disc_finite(rng, prm):
    d, m = prm["d"], prm["m"]
    return {"As": _mats(rng, d, m, 0.2), "Bs": _mats(rng, d, m, 0.2), "Xs": _mats(rng, d, m, 0.3)}


def _b_comm(rng, prm, weights=True):
    d, m = prm["d"], prm["m"]
    out = {"As": _commuting(rng, d, m), "Bs": _commuting(rng, d, m), "X": random_matrix(d, rng)}
    if weights:
        out["gammas"] = _weights(rng, m)
    return out


def _poly(rng, d, degree=2):
    return [random_matrix(d, rng) / (k + 1) for k in range(degree + 1)]


def _b_cont(rng, prm):
    d = prm["d"]
    return {"A_coeffs": _poly(rng, d), "B_coeffs": _poly(rng, d), "X_coeffs": _poly(rng, d, 1)}


def _b_cont_comm(rng, prm):
    d = prm["d"]
    W = random_unitary(d, rng)

    def fam():
        return [W @ np.diag(c) @ W.conj().T
                for c in (rng.standard_normal((3, d)) + 1j * rng.standard_normal((3, d))) / math.sqrt(2)]

    return {"A_coeffs": fam(), "B_coeffs": fam(), "X_coeffs": [random_matrix(d, rng)]}


def _b_jensen(rng, prm):
    d, m = prm["d"], prm["m"]
    return {"As": _psds(rng, d, m, 0.3), "gammas": _weights(rng, m, normalize=True)}


def _b_seo(rng, prm):
    d, m = prm["d"], prm["m"]
    return {"x": _elem(rng, d, m, singular_prob=0.2), "A": MultiplierOperator(_psds(rng, d, m, 0.2)),
            "B": MultiplierOperator(_psds(rng, d, m, 0.2))}


def _b_super(rng, prm):
    d, m = prm["d"], prm["m"]
    return {"As": _psds(rng, d, m, 0.3), "Bs": _psds(rng, d, m, 0.3)}


def _b_super_q(rng, prm):
    d = prm["d"]
    return {"FA_coeffs": _poly(rng, d, 1), "FB_coeffs": _poly(rng, d, 1)}


_register("cs_sharp", ["d", "m"], _b_cs,
          lambda i, p, t: V.verify_cs_sharp(i["x"], i["y"], t), {"x": "element", "y": "element"})
_register("weighted_cs", ["d", "m", "alpha"], _b_wcs,
          lambda i, p, t: V.verify_weighted_cs(i["x"], i["y"], i["T"], p["alpha"], tau=t),
          {"x": "element", "y": "element", "T": "operator"})
_register("horn_mathias", ["d", "p", "r", "norm"], _b_hm,
          lambda i, p, t: V.verify_horn_mathias(i["A"], i["B"], i["X"], p["p"], r=p["r"], norm=p["norm"], tau=t),
          {"A": "matrix", "B": "matrix", "X": "matrix"})
_register("main", ["d", "m", "alpha", "p", "r", "norm"], _b_wcs,
          lambda i, p, t: V.verify_main(i["x"], i["y"], i["T"], p["alpha"], p["p"], r=p["r"], norm=p["norm"], tau=t),
          {"x": "element", "y": "element", "T": "operator"})
_register("discrete_i", ["d", "m", "alpha", "p", "r", "norm"], _b_disc,
          lambda i, p, t: V.verify_discrete_i(i["gammas"], i["As"], i["Bs"], i["Xs"], p["alpha"], p["p"],
                                              r=p["r"], norm=p["norm"], tau=t),
          {"gammas": "vector", "As": "matrices", "Bs": "matrices", "Xs": "matrices"})
_register("discrete_ii", ["d", "m", "p", "r", "norm"], lambda rng, prm: _b_disc(rng, prm, True),
          lambda i, p, t: V.verify_discrete_ii(i["gammas"], i["As"], i["Bs"], i["Xs"], p["p"], r=p["r"],
                                               norm=p["norm"], tau=t),
          {"gammas": "vector", "As": "matrices", "Bs": "matrices", "Xs": "matrices"},
          filt=lambda prm: prm["r"] >= 2)
_register("discrete_ii_q", ["d", "m", "p", "norm"], lambda rng, prm: _b_disc(rng, prm, True),
          lambda i, p, t: V.verify_discrete_ii_q(i["gammas"], i["As"], i["Bs"], i["Xs"], p["p"], norm=p["norm"], tau=t),
          {"gammas": "vector", "As": "matrices", "Bs": "matrices", "Xs": "matrices"}, q_only=True)
_register("discrete_iii", ["d", "m", "p", "norm"], lambda rng, prm: _b_disc(rng, prm, True),
          lambda i, p, t: V.verify_discrete_iii(i["gammas"], i["As"], i["Bs"], i["Xs"], p["p"], norm=p["norm"], tau=t),
          {"gammas": "vector", "As": "matrices", "Bs": "matrices", "Xs": "matrices"},
          filt=lambda prm: prm["p"] >= 2)
_register("discrete_iii_finite", ["d", "m", "p", "norm"], _b_disc_finite,
          lambda i, p, t: V.verify_discrete_iii_finite(i["As"], i["Bs"], i["Xs"], p["p"], norm=p["norm"], tau=t),
          {"As": "matrices", "Bs": "matrices", "Xs": "matrices"}, filt=lambda prm: prm["p"] >= 2)
_register("discrete_iv", ["d", "m", "p", "norm"], _b_comm,
          lambda i, p, t: V.verify_discrete_iv(i["gammas"], i["As"], i["Bs"], i["X"], p["p"], norm=p["norm"], tau=t),
          {"gammas": "vector", "As": "matrices", "Bs": "matrices", "X": "matrix"}, q_only=True)
_register("discrete_v", ["d", "m", "p", "norm"], lambda rng, prm: _b_comm(rng, prm, weights=False),
          lambda i, p, t: V.verify_discrete_v(i["As"], i["Bs"], i["X"], p["p"], norm=p["norm"], tau=t),
          {"As": "matrices", "Bs": "matrices", "X": "matrix"})
_CONT_KINDS = {"A_coeffs": "matrices", "B_coeffs": "matrices", "X_coeffs": "matrices"}
_register("continuous_i", ["d", "m", "alpha", "p", "r", "norm"], _b_cont,
          lambda i, p, t: V.verify_continuous(i["A_coeffs"], i["B_coeffs"], i["X_coeffs"], p["m"], "i", p["p"],
                                              r=p["r"], alpha=p["alpha"], norm=p["norm"], tau=t), _CONT_KINDS)
_register("continuous_ii", ["d", "m", "p", "r", "norm"], _b_cont,
          lambda i, p, t: V.verify_continuous(i["A_coeffs"], i["B_coeffs"], i["X_coeffs"], p["m"], "ii", p["p"],
                                              r=p["r"], norm=p["norm"], tau=t), _CONT_KINDS,
          filt=lambda prm: prm["r"] >= 2)
_register("continuous_ii_q", ["d", "m", "p", "norm"], _b_cont,
          lambda i, p, t: V.verify_continuous(i["A_coeffs"], i["B_coeffs"], i["X_coeffs"], p["m"], "ii_q", p["p"],
                                              norm=p["norm"], tau=t), _CONT_KINDS, q_only=True)
_register("continuous_iii", ["d", "m", "p", "norm"], _b_cont_comm,
          lambda i, p, t: V.verify_continuous(i["A_coeffs"], i["B_coeffs"], i["X_coeffs"], p["m"], "iii", p["p"],
                                              norm=p["norm"], tau=t), _CONT_KINDS, q_only=True)
_register("jensen_convex", ["d", "m", "p", "norm"], _b_jensen,
          lambda i, p, t: V.verify_jensen(i["As"], p["p"], p["norm"], i["gammas"], "convex", tau=t),
          {"As": "matrices", "gammas": "vector"})
_register("jensen_concave", ["d", "m", "p", "norm"], _b_jensen,
          lambda i, p, t: V.verify_jensen(i["As"], 1.0 / p["p"], p["norm"], None, "concave", tau=t),
          {"As": "matrices"})
_register("seo_ordering", ["d", "m", "p"], _b_seo,
          lambda i, p, t: V.verify_seo_ordering(i["x"], i["A"], i["B"], p["p"], tau=t),
          {"x": "element", "A": "operator", "B": "operator"})
_register("superadditivity", ["d", "m", "p"], _b_super,
          lambda i, p, t: V.verify_superadditivity(i["As"], i["Bs"], p["p"], tau=t),
          {"As": "matrices", "Bs": "matrices"})
_register("superadditivity_quadrature", ["d", "m", "p"], _b_super_q,
          lambda i, p, t: V.verify_superadditivity_quadrature(i["FA_coeffs"], i["FB_coeffs"], p["m"], p["p"], tau=t),
          {"FA_coeffs": "matrices", "FB_coeffs": "matrices"})

INEQUALITY_IDS = tuple(REGISTRY)


def parameter_grid(ident: str, cfg: CampaignConfig) -> list[dict]:
    """Every admissible parameter combination for ``ident`` under ``cfg``."""
    entry = REGISTRY[ident]
    axis_values = {
        "d": cfg.dims, "m": cfg.seq_lens, "p": cfg.p_values, "r": cfg.r_values, "alpha": cfg.alpha_values,
    }
    base_axes = [a for a in entry.axes if a != "norm"]
    combos = []
    for values in itertools.product(*(axis_values[a] for a in base_axes)):
        prm = dict(zip(base_axes, values))
        if not entry.filt(prm):
            continue
        if "norm" in entry.axes:
            for n in _norms_for(cfg, prm["d"], entry.q_only):
                combos.append(dict(prm, norm=n))
        else:
            combos.append(prm)
    order = np.random.default_rng(hash64(cfg.seed, ident, "grid")).permutation(len(combos))
    return [combos[i] for i in order]


def run_trial(ident: str, prm: dict, seed: int, tau: float):
    entry = REGISTRY[ident]
    rng = np.random.default_rng(seed)
    inputs = entry.build(rng, prm)
    rec = entry.run(inputs, prm, tau)
    return rec.with_seed(seed), inputs


def _trial_job(args):
    ident, prm, seed, tau = args
    rec, _ = run_trial(ident, prm, seed, tau)
    return rec


@dataclass
class CampaignReport:
    config: CampaignConfig
    records: list
    summary: dict

    def to_json(self) -> dict:
        return {"config": self.config.to_json(), "records": [r.to_json() for r in self.records],
                "summary": self.summary}


def _base_id(ident: str) -> str:
    return ident.split("[", 1)[0]


def summarize(records) -> dict:
    per: dict[str, dict] = {}
    for r in records:
        s = per.setdefault(_base_id(r.inequality_id), {"total": 0, "failures": 0, "min_gap": math.inf,
                                                        "max_sharpness_ratio": None})
        s["total"] += 1
        s["failures"] += 0 if r.passed else 1
        s["min_gap"] = min(s["min_gap"], r.gap)
        ratio = r.params.get("sharpness_ratio")
        if ratio is not None:
            s["max_sharpness_ratio"] = max(ratio, s["max_sharpness_ratio"] or 0.0)
    return {
        "total": len(records),
        "failures": sum(not r.passed for r in records),
        "min_gap": min((r.gap for r in records), default=None),
        "per_inequality": per,
    }


def run_campaign(cfg: CampaignConfig, jobs: int = 1, progress: Callable | None = None) -> CampaignReport:
    """Run ``cfg.trials`` trials of every selected inequality.

    Records are ordered by (inequality, trial index) whatever ``jobs`` is.
    """
    tasks = []
    for ident in cfg.inequality_ids:
        grid = parameter_grid(ident, cfg)
        if not grid:
            continue
        for k in range(cfg.trials):
            tasks.append((ident, grid[k % len(grid)], hash64(cfg.seed, ident, k), cfg.tolerance))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_trial_job, tasks, chunksize=8))
    else:
        records = []
        for t in tasks:
            records.append(_trial_job(t))
            if progress:
                progress(records[-1])
    return CampaignReport(cfg, records, summarize(records))


# -- fixtures ---------------------------------------------------------------------


def _encode(kind, value):
    if kind == "element":
        return value.to_json()
    if kind == "operator":
        return value.to_json()
    if kind == "matrix":
        return codec.matrix_to_json(value)
    if kind == "matrices":
        return [codec.matrix_to_json(M) for M in value]
    if kind == "vector":
        return [float(v) for v in value]
    raise ValueError(kind)


def _decode(kind, obj, loc):
    if kind == "element":
        return ModuleElement.from_json(obj, loc)
    if kind == "operator":
        return MultiplierOperator.from_json(obj, loc)
    if kind == "matrix":
        return codec.matrix_from_json(obj, loc)
    if kind == "matrices":
        return codec.matrices_from_json(obj, loc)
    if kind == "vector":
        if not isinstance(obj, list) or not all(isinstance(v, (int, float)) for v in obj):
            raise FixtureError("expected a list of numbers", loc)
        return np.asarray(obj, dtype=float)
    raise ValueError(kind)


def _params_to_json(prm: dict) -> dict:
    return {k: (norm_to_json(v) if k == "norm" else v) for k, v in prm.items()}


def _params_from_json(obj, loc="params") -> dict:
    if not isinstance(obj, dict):
        raise FixtureError("expected an object", loc)
    return {k: (norm_from_json(v, f"{loc}.norm") if k == "norm" else v) for k, v in obj.items()}


def instance_to_json(ident: str, inputs: dict, prm: dict, tau: float = V.TAU, record=None) -> dict:
    kinds = REGISTRY[ident].kinds
    out = {
        "inequality_id": ident,
        "params": _params_to_json(prm),
        "tau": tau,
        "inputs": {k: _encode(kinds[k], inputs[k]) for k in kinds if k in inputs},
    }
    if record is not None:
        out["expected"] = {"gap": record.gap, "pass": record.passed}
    return out


def instance_from_json(obj) -> tuple[str, dict, dict, float, dict | None]:
    if not isinstance(obj, dict):
        raise FixtureError("fixture must be a JSON object", "$")
    ident = obj.get("inequality_id")
    if ident not in REGISTRY:
        raise FixtureError(f"unknown inequality id {ident!r}", "$.inequality_id")
    if "inputs" not in obj or not isinstance(obj["inputs"], dict):
        raise FixtureError("missing inputs object", "$.inputs")
    kinds = REGISTRY[ident].kinds
    inputs = {}
    for k, kind in kinds.items():
        if k not in obj["inputs"]:
            raise FixtureError(f"missing input {k!r}", "$.inputs")
        inputs[k] = _decode(kind, obj["inputs"][k], f"$.inputs.{k}")
    prm = _params_from_json(obj.get("params", {}), "$.params")
    tau = obj.get("tau", V.TAU)
    expected = obj.get("expected")
    if expected is not None and not (isinstance(expected, dict) and "gap" in expected and "pass" in expected):
        raise FixtureError("expected must hold 'gap' and 'pass'", "$.expected")
    return ident, inputs, prm, tau, expected


def load_fixture(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FixtureError(str(exc), str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


@dataclass(frozen=True)
class ReplayResult:
    record: V.VerdictRecord
    expected: dict | None
    matches: bool


VALUE_OPERATIONS = ("geometric_mean", "weighted_geometric_mean", "transformed_gram")


def _value_replay(obj) -> ReplayResult:
    op = obj["operation"]
    if op not in VALUE_OPERATIONS:
        raise FixtureError(f"unknown operation {op!r}", "$.operation")
    inputs = obj.get("inputs")
    if not isinstance(inputs, dict):
        raise FixtureError("missing inputs object", "$.inputs")
    prm = obj.get("params", {})
    exp = obj.get("expected")
    if not isinstance(exp, dict) or "value" not in exp:
        raise FixtureError("expected must hold 'value'", "$.expected")
    want = codec.matrix_from_json(exp["value"], "$.expected.value")
    try:
        if op == "transformed_gram":
            x = _decode("element", inputs["x"], "$.inputs.x")
            T = _decode("operator", inputs["T"], "$.inputs.T")
            got = transformed_gram(x, T, Power(float(prm["alpha"])), side=prm.get("side", "right"))
        else:
            A = _decode("matrix", inputs["A"], "$.inputs.A")
            B = _decode("matrix", inputs["B"], "$.inputs.B")
            theta = 0.5 if op == "geometric_mean" else float(prm["theta"])
            got = weighted_geometric_mean(A, B, theta).value
    except KeyError as exc:
        raise FixtureError(f"missing field {exc}", "$.inputs/$.params") from exc
    if got.shape != want.shape:
        raise FixtureError(f"expected value has shape {want.shape}, computed {got.shape}", "$.expected.value")
    err = op_norm(got - want)
    tol = REPLAY_TOL * (1.0 + op_norm(want))
    rec = V.VerdictRecord(op, got, want, -err, tol, err <= tol, {k: prm[k] for k in prm})
    return ReplayResult(rec, exp, rec.passed)


def replay(path_or_obj) -> ReplayResult:
    """Re-evaluate a stored fixture and compare against its stored result.

    Verdict fixtures (``inequality_id``) must reproduce the stored pass flag
    and a gap within 1e-9.  Value fixtures (``operation``) must reproduce the
    stored matrix within ``1e-9 (1 + ||value||)``; the record then carries
    ``gap = -||computed - stored||``.
    """
    obj = path_or_obj if isinstance(path_or_obj, dict) else load_fixture(path_or_obj)
    if isinstance(obj, dict) and "operation" in obj:
        return _value_replay(obj)
    ident, inputs, prm, tau, expected = instance_from_json(obj)
    try:
        rec = REGISTRY[ident].run(inputs, prm, tau)
    except (KeyError, TypeError) as exc:
        raise FixtureError(f"parameters do not fit {ident}: {exc}", "$.params") from exc
    matches = True
    if expected is not None:
        matches = bool(expected["pass"]) == rec.passed and abs(float(expected["gap"]) - rec.gap) <= REPLAY_TOL
    return ReplayResult(rec, expected, matches)
