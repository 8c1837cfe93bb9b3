"""Request validation, payload construction and caching.

The CLI and the HTTP service both funnel through ``handle_request`` so a
given logical request produces byte-identical JSON on either surface.
Floats serialize via ``repr`` (shortest round-trip form, exact for doubles);
keys are sorted.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading

import numpy as np

from .config import DEFAULT, Config
from .core import BallPoint, classify, discriminant, lift
from .errors import BadRequest, GeometryError
from .family import (
    INF,
    TriangleSpec,
    angular_invariant,
    build,
    valid_t_range,
    vertices_of,
)
from .scan import critical_interval, find_order_params, trace_curve
from .words import evaluate, parse_word, wa_wb, word_str

SCHEMA_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _cx(x: complex) -> list[float]:
    return [float(x.real), float(x.imag)]


def _cmatrix(m: np.ndarray) -> list:
    return [[_cx(complex(v)) for v in row] for row in np.asarray(m)]


class PayloadCache:
    """Append-only payload cache: memory first, then an optional disk mirror."""

    def __init__(self, cache_dir: str | None = None):
        self._mem: dict[str, dict] = {}
        self._lock = threading.Lock()
        self._dir = cache_dir
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)

    @staticmethod
    def key_of(obj) -> str:
        return hashlib.sha256(canonical_json(obj).encode()).hexdigest()

    def get_or_build(self, key_obj, builder):
        key = self.key_of(key_obj)
        with self._lock:
            if key in self._mem:
                return self._mem[key]
        if self._dir:
            path = os.path.join(self._dir, key + ".json")
            if os.path.exists(path):
                with open(path, "r", encoding="utf-8") as fh:
                    payload = json.load(fh)
                with self._lock:
                    self._mem.setdefault(key, payload)
                return payload
        payload = builder()
        with self._lock:
            self._mem[key] = payload
            if self._dir:
                fd, tmp = tempfile.mkstemp(dir=self._dir, suffix=".tmp")
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(canonical_json(payload))
                os.replace(tmp, os.path.join(self._dir, key + ".json"))
        return payload


def _need(req: dict, *fields: str) -> None:
    missing = [f for f in fields if f not in req or req[f] is None]
    if missing:
        raise BadRequest(f"missing fields for cmd {req.get('cmd')!r}: {', '.join(missing)}")


def _spec_of(req: dict) -> TriangleSpec:
    raw = req["spec"]
    if isinstance(raw, str):
        return TriangleSpec.parse(raw)
    if isinstance(raw, (list, tuple)) and len(raw) == 3:
        return TriangleSpec(*raw)
    raise BadRequest(f"cannot parse spec {raw!r}")


def _float_of(req: dict, field: str) -> float:
    try:
        return float(req[field])
    except (TypeError, ValueError) as exc:
        raise BadRequest(f"field {field!r} must be a number") from exc


def _int_of(req: dict, field: str, default: int | None = None) -> int:
    if field not in req or req[field] is None:
        if default is None:
            raise BadRequest(f"missing integer field {field!r}")
        return default
    try:
        return int(req[field])
    except (TypeError, ValueError) as exc:
        raise BadRequest(f"field {field!r} must be an integer") from exc


def _payload_solve(req: dict, cfg: Config) -> dict:
    _need(req, "spec", "t")
    spec = _spec_of(req)
    t = _float_of(req, "t")
    f = build(spec, t, cfg)
    verts = vertices_of(f, cfg)
    t_max, _ = valid_t_range(spec, cfg)
    return {
        "spec": spec.label(),
        "t": t,
        "valid_range_end": t_max,
        "gram": _cmatrix(f.gram),
        "polar_vectors": _cmatrix(f.polars),
        "generators": [_cmatrix(g.m) for g in f.gens],
        "vertices": _cmatrix(verts),
        "angular_invariant": angular_invariant(verts, cfg),
    }


def _payload_classify(req: dict, cfg: Config) -> dict:
    _need(req, "spec", "t", "word")
    spec = _spec_of(req)
    t = _float_of(req, "t")
    w = parse_word(str(req["word"]))
    m = evaluate(build(spec, t, cfg, verify=False), w)
    cls = classify(m, cfg, validate=False)
    return {
        "spec": spec.label(),
        "t": t,
        "word": word_str(w),
        "trace": _cx(m.trace),
        "discriminant": float(discriminant(m.trace)),
        "class": cls.as_dict(),
    }


def _payload_scan(req: dict, cfg: Config) -> dict:
    _need(req, "spec")
    spec = _spec_of(req)
    grid = _int_of(req, "grid", cfg.grid)
    if "word" in req and req["word"] is not None:
        words = {str(req["word"]): parse_word(str(req["word"]))}
    else:
        wa, wb = wa_wb(spec)
        words = {"A": wa, "B": wb}
    curves = [trace_curve(spec, w, grid, cfg).as_dict() | {"label": lbl} for lbl, w in words.items()]
    return {"spec": spec.label(), "grid": grid, "curves": curves}


def _payload_critical(req: dict, cfg: Config) -> dict:
    _need(req, "spec")
    spec = _spec_of(req)
    grid = _int_of(req, "grid", cfg.grid)
    with_samples = bool(req.get("samples", False))
    res = critical_interval(spec, cfg, grid)
    return res.as_dict(with_samples=with_samples) | {"grid": grid}


def _payload_orders(req: dict, cfg: Config) -> dict:
    _need(req, "spec", "word", "jmin", "jmax")
    spec = _spec_of(req)
    w = parse_word(str(req["word"]))
    j_min = _int_of(req, "jmin")
    j_max = _int_of(req, "jmax")
    scan = critical_interval(spec, cfg)
    params = find_order_params(spec, w, j_min, j_max, cfg, scan=scan)
    found = {p.j for p in params}
    return {
        "spec": spec.label(),
        "word": word_str(w),
        "jmin": j_min,
        "jmax": j_max,
        "critical_t": scan.critical_t,
        "params": [p.as_dict() for p in params],
        "not_found": [j for j in range(j_min, j_max + 1) if j not in found],
    }


def _payload_limitset(req: dict, cfg: Config) -> dict:
    from .boundary import limit_set

    _need(req, "spec", "t", "maxlen")
    spec = _spec_of(req)
    t = _float_of(req, "t")
    max_len = _int_of(req, "maxlen")
    seed = None
    if req.get("seed") is not None:
        s = req["seed"]
        if not (isinstance(s, (list, tuple)) and len(s) == 4):
            raise BadRequest("seed must be [re z, im z, re w, im w]")
        seed = BallPoint(complex(s[0], s[1]), complex(s[2], s[3]))
    f = build(spec, t, cfg, verify=False)
    return limit_set(f, max_len, seed, cfg).as_dict()


def _payload_boundary(req: dict, cfg: Config) -> dict:
    from .boundary import ccircle, clifford_torus, rcircle_standard, spinal_sphere

    _need(req, "kind")
    kind = str(req["kind"])
    n = _int_of(req, "n", 64)
    if kind == "clifford":
        curves = clifford_torus(_int_of(req, "nu", 12), _int_of(req, "nv", 64))
    elif kind == "rcircle":
        curves = [rcircle_standard(n)]
    elif kind == "ccircle":
        _need(req, "spec", "t", "mirror")
        spec = _spec_of(req)
        f = build(spec, _float_of(req, "t"), cfg, verify=False)
        k = _int_of(req, "mirror")
        if k not in (1, 2, 3):
            raise BadRequest("mirror must be 1, 2 or 3")
        curves = [ccircle(f.polars[k - 1], n, cfg)]
    elif kind == "spinal":
        _need(req, "p", "q")
        pts = []
        for field in ("p", "q"):
            s = req[field]
            if not (isinstance(s, (list, tuple)) and len(s) == 4):
                raise BadRequest(f"{field} must be [re z, im z, re w, im w] inside the ball")
            pts.append(lift(BallPoint(complex(s[0], s[1]), complex(s[2], s[3]))))
        curves = [spinal_sphere(pts[0], pts[1], max(3, int(round(n**0.5))), cfg)]
    else:
        raise BadRequest(f"unknown boundary kind {kind!r}")
    return {"kind": kind, "curves": [c.as_dict() for c in curves]}


_HANDLERS = {
    "solve": _payload_solve,
    "scan": _payload_scan,
    "critical": _payload_critical,
    "orders": _payload_orders,
    "classify": _payload_classify,
    "limitset": _payload_limitset,
    "boundary": _payload_boundary,
}

# responses worth caching across requests
_CACHEABLE = {"scan", "critical", "orders", "limitset"}


def handle_request(req, cfg: Config = DEFAULT, cache: PayloadCache | None = None) -> dict:
    """Validate and dispatch one request document; never raises domain errors."""
    try:
        if not isinstance(req, dict):
            raise BadRequest("request must be a JSON object")
        cmd = req.get("cmd")
        if cmd not in _HANDLERS:
            raise BadRequest(f"unknown cmd {cmd!r}; expected one of {sorted(_HANDLERS)}")
        builder = _HANDLERS[cmd]
        if cache is not None and cmd in _CACHEABLE:
            key_obj = {"req": {k: req[k] for k in sorted(req)}, "tol": cfg.tol.as_dict(), "grid": cfg.grid}
            payload = cache.get_or_build(key_obj, lambda: builder(req, cfg))
        else:
            payload = builder(req, cfg)
        return {
            "schema": SCHEMA_VERSION,
            "status": "ok",
            "cmd": cmd,
            "tolerances": cfg.tol.as_dict(),
            "payload": payload,
        }
    except GeometryError as exc:
        return {
            "schema": SCHEMA_VERSION,
            "status": "error",
            "error": {"code": exc.code, "message": str(exc)},
        }
    except Exception as exc:  # noqa: BLE001 - the service must stay alive
        return {
            "schema": SCHEMA_VERSION,
            "status": "error",
            "error": {"code": "internal_error", "message": f"{type(exc).__name__}: {exc}"},
        }
