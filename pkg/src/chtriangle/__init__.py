"""Deformation laboratory for complex hyperbolic triangle groups."""

from .config import Config, Tolerances, load_config
from .core import (
    BallPoint,
    ElementKind,
    Isometry,
    IsometryClass,
    VectorSign,
    box,
    classify,
    cvector,
    discriminant,
    dist,
    herm_form,
    lift,
    proj_equal,
    proj_order,
    project,
    reflect_matrix,
    sign_of,
    translation_length,
)
from .family import (
    INF,
    FamilyPoint,
    TriangleSpec,
    angular_invariant,
    build,
    gram_for,
    realize,
    valid_t_range,
    vertices_of,
)
from .scan import (
    MonotonicityReport,
    OrderParam,
    ScanResult,
    TraceCurve,
    TracePoint,
    critical_interval,
    find_order_params,
    group_type,
    monotonicity_report,
    trace_curve,
    write_trace_csv,
)
from .words import (
    Word,
    cyclic_reduce,
    enumerate_words,
    evaluate,
    parse_word,
    reduce_word,
    wa_wb,
    word_str,
)

__version__ = "0.1.0"

__all__ = [
    "BallPoint",
    "Config",
    "ElementKind",
    "FamilyPoint",
    "INF",
    "Isometry",
    "IsometryClass",
    "MonotonicityReport",
    "OrderParam",
    "ScanResult",
    "Tolerances",
    "TraceCurve",
    "TracePoint",
    "TriangleSpec",
    "VectorSign",
    "Word",
    "angular_invariant",
    "box",
    "build",
    "classify",
    "critical_interval",
    "cvector",
    "cyclic_reduce",
    "discriminant",
    "dist",
    "enumerate_words",
    "evaluate",
    "find_order_params",
    "gram_for",
    "group_type",
    "herm_form",
    "lift",
    "load_config",
    "monotonicity_report",
    "parse_word",
    "proj_equal",
    "proj_order",
    "project",
    "realize",
    "reduce_word",
    "reflect_matrix",
    "sign_of",
    "trace_curve",
    "translation_length",
    "valid_t_range",
    "vertices_of",
    "wa_wb",
    "word_str",
    "write_trace_csv",
]
