"""Tolerance and runtime configuration.

All numerical thresholds live in one read-only object that is fixed at
startup and passed (or defaulted) everywhere.  A JSON config file can
override any field; its path comes from ``--config`` or the
``CHTRIANGLE_CONFIG`` environment variable.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # residual bound for form preservation / unimodularity of matrices
    form: float = 1e-10
    # sign test threshold on max-normalized lifts
    null: float = 1e-9
    # dead band around zero of the trace discriminant
    cls: float = 1e-9
    # scalar-multiple-of-identity test used for projective orders
    order: float = 1e-8

    def as_dict(self) -> dict:
        return {
            "form": self.form,
            "null": self.null,
            "class": self.cls,
            "order": self.order,
        }


@dataclass(frozen=True)
class Config:
    tol: Tolerances = Tolerances()
    # default number of samples when sweeping the deformation parameter
    grid: int = 2048
    # cap for projective-order searches performed inside classify
    order_max: int = 100
    # spatial hash cell used to deduplicate limit-set clouds
    hash_resolution: float = 1e-7
    # Gram-determinant margin kept at the sampled end of the parameter range
    edge_margin: float = 1e-6
    # slack allowed when checking that translation lengths never increase
    mono_slack: float = 1e-9
    # directory for cached scan payloads; None disables the disk cache
    cache_dir: str | None = None


DEFAULT = Config()

_ENV_VAR = "CHTRIANGLE_CONFIG"


def load_config(path: str | None = None) -> Config:
    """Build a Config from a JSON file, falling back to defaults.

    Recognized keys: ``tolerances`` (object with ``form``/``null``/``class``/
    ``order``), ``grid``, ``order_max``, ``hash_resolution``, ``edge_margin``,
    ``mono_slack``, ``cache_dir``.
    """
    if path is None:
        path = os.environ.get(_ENV_VAR)
    if path is None:
        return DEFAULT
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    tol_raw = raw.get("tolerances", {})
    tol = Tolerances(
        form=float(tol_raw.get("form", Tolerances.form)),
        null=float(tol_raw.get("null", Tolerances.null)),
        cls=float(tol_raw.get("class", Tolerances.cls)),
        order=float(tol_raw.get("order", Tolerances.order)),
    )
    fields = {f.name for f in dataclasses.fields(Config)} - {"tol"}
    kwargs = {k: raw[k] for k in fields if k in raw}
    return Config(tol=tol, **kwargs)
