"""Command-line entry points.

Every data command builds a request document and routes it through the same
handler as the HTTP service, so both surfaces emit byte-identical JSON.
The report path additionally renders matplotlib figures to files alongside
the delimited output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import load_config
from .errors import GeometryError
from .payloads import PayloadCache, canonical_json, handle_request


def _add_pqr(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pqr", required=True, help="triangle spec, e.g. 4,4,4 or inf,inf,inf")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chtriangle",
        description="complex hyperbolic triangle group laboratory",
    )
    ap.add_argument("--config", help="path to a JSON config file (or set CHTRIANGLE_CONFIG)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="generators and polar vectors at one parameter")
    _add_pqr(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--out", help="write the JSON envelope here instead of stdout")

    p = sub.add_parser("scan", help="trace curves over the parameter range")
    _add_pqr(p)
    p.add_argument("--word", help="digit word; default scans both governing words")
    p.add_argument("--grid", type=int)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", dest="json_out", help="JSON envelope output path")
    p.add_argument("--plot", help="PNG figure path")

    p = sub.add_parser("critical", help="locate the critical parameter")
    _add_pqr(p)
    p.add_argument("--grid", type=int)
    p.add_argument("--samples", action="store_true", help="include trace samples in the payload")
    p.add_argument("--out")
    p.add_argument("--plot", help="PNG figure path")

    p = sub.add_parser("orders", help="parameters where a word reaches finite orders")
    _add_pqr(p)
    p.add_argument("--word", required=True)
    p.add_argument("--jmin", type=int, required=True)
    p.add_argument("--jmax", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("classify", help="classify one word at one parameter")
    _add_pqr(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--out")

    p = sub.add_parser("limitset", help="orbit cloud of a boundary seed")
    _add_pqr(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--seed", help="re_z,im_z,re_w,im_w for a custom boundary seed")
    p.add_argument("--out", help="JSON output path")
    p.add_argument("--ascii", dest="ascii_out", help="one-point-per-line text output path")
    p.add_argument("--plot", help="PNG figure path")

    p = sub.add_parser("boundary", help="sample boundary objects")
    p.add_argument("--kind", required=True, choices=["clifford", "ccircle", "rcircle", "spinal"])
    p.add_argument("--pqr")
    p.add_argument("--t", type=float)
    p.add_argument("--mirror", type=int, help="generator index for ccircle")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--nu", type=int, default=12)
    p.add_argument("--nv", type=int, default=64)
    p.add_argument("--p", help="interior point re_z,im_z,re_w,im_w for spinal")
    p.add_argument("--q", help="interior point re_z,im_z,re_w,im_w for spinal")
    p.add_argument("--out")

    p = sub.add_parser("serve", help="run the local JSON service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", help="serve static UI files from this directory")

    p = sub.add_parser("report", help="full report: CSV + JSON + figures for one spec")
    _add_pqr(p)
    p.add_argument("--outdir", required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--maxlen", type=int, default=6)
    p.add_argument("--orders-word", default="1213")
    p.add_argument("--jmin", type=int, default=5)
    p.add_argument("--jmax", type=int, default=12)

    return ap


def _floats_csv(text: str, n: int, what: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise GeometryError(f"{what} needs {n} comma-separated numbers")
    return [float(x) for x in parts]


def _emit(env: dict, out: str | None) -> int:
    text = canonical_json(env)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text + "\n")
    return 0 if env["status"] == "ok" else 1


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    cache = PayloadCache(cfg.cache_dir)

    if args.cmd == "serve":
        from .service import serve

        print(f"serving on http://{args.host}:{args.port}", file=sys.stderr)
        serve(args.port, args.host, cfg, args.ui_dir)
        return 0

    if args.cmd == "report":
        return _report(args, cfg)

    req: dict = {"cmd": args.cmd}
    if getattr(args, "pqr", None):
        req["spec"] = args.pqr
    for field in ("t", "word", "grid", "jmin", "jmax", "maxlen", "mirror", "n", "nu", "nv", "kind"):
        v = getattr(args, field, None)
        if v is not None:
            req[field] = v
    if args.cmd == "critical" and args.samples:
        req["samples"] = True
    try:
        if getattr(args, "seed", None):
            s = _floats_csv(args.seed, 4, "--seed")
            req["seed"] = s
        if args.cmd == "boundary":
            for field in ("p", "q"):
                v = getattr(args, field, None)
                if v is not None:
                    req[field] = _floats_csv(v, 4, f"--{field}")
    except (GeometryError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    env = handle_request(req, cfg, cache)

    if env["status"] == "ok" and args.cmd == "scan" and args.out:
        _write_scan_csv(args, cfg, env, args.out)
    if env["status"] == "ok" and args.cmd == "limitset" and args.ascii_out:
        from .boundary import cloud_ascii
        import numpy as np

        pts = env["payload"]["points"]
        zw = np.array([[complex(a, b), complex(c, d)] for a, b, c, d in pts])
        with open(args.ascii_out, "w", encoding="utf-8") as fh:
            fh.write(cloud_ascii(zw))
    if env["status"] == "ok" and getattr(args, "plot", None):
        _render_plot(args, cfg, env)

    out = args.json_out if args.cmd == "scan" else getattr(args, "out", None)
    if args.cmd == "scan" and args.out and not args.json_out:
        # CSV already written; keep stdout quiet apart from the envelope status
        out = None
    return _emit(env, out)


def _write_scan_csv(args, cfg, env, path: str) -> None:
    from .family import TriangleSpec
    from .scan import trace_curve, write_trace_csv
    from .words import parse_word, wa_wb

    spec = TriangleSpec.parse(args.pqr)
    grid = args.grid or cfg.grid
    if args.word:
        write_trace_csv(trace_curve(spec, parse_word(args.word), grid, cfg), path)
    else:
        wa, wb = wa_wb(spec)
        write_trace_csv(
            {"A": trace_curve(spec, wa, grid, cfg), "B": trace_curve(spec, wb, grid, cfg)},
            path,
        )


def _render_plot(args, cfg, env) -> None:
    from .family import TriangleSpec

    if args.cmd in ("scan", "critical"):
        from .plots import save_scan_figure
        from .scan import critical_interval

        spec = TriangleSpec.parse(args.pqr)
        res = critical_interval(spec, cfg, args.grid or cfg.grid)
        save_scan_figure(res, args.plot)
    elif args.cmd == "limitset":
        import numpy as np

        from .boundary import PointCloud
        from .core import BallPoint
        from .plots import save_limitset_figure

        pts = env["payload"]["points"]
        zw = np.array([[complex(a, b), complex(c, d)] for a, b, c, d in pts])
        cloud = PointCloud(zw=zw, meta=env["payload"]["meta"])
        pole = BallPoint(complex(1.0), complex(0.0))
        save_limitset_figure(cloud, pole, args.plot)


def _report(args, cfg) -> int:
    """The figure-producing report path: scan + critical + orders + cloud."""
    import numpy as np

    from .boundary import cloud_ascii, limit_set
    from .core import BallPoint
    from .family import TriangleSpec, build, valid_t_range
    from .plots import (
        save_limitset_figure,
        save_monotonicity_figure,
        save_scan_figure,
    )
    from .scan import (
        critical_interval,
        find_order_params,
        monotonicity_report,
        trace_curve,
        write_trace_csv,
    )
    from .words import parse_word, wa_wb

    os.makedirs(args.outdir, exist_ok=True)
    spec = TriangleSpec.parse(args.pqr)
    grid = args.grid or cfg.grid
    out = lambda name: os.path.join(args.outdir, name)  # noqa: E731

    res = critical_interval(spec, cfg, grid)
    wa, wb = wa_wb(spec)
    write_trace_csv(
        {"A": trace_curve(spec, wa, grid, cfg), "B": trace_curve(spec, wb, grid, cfg)},
        out("scan.csv"),
    )
    save_scan_figure(res, out("scan.png"))

    summary = {"spec": spec.label(), "tolerances": cfg.tol.as_dict(), "critical": res.as_dict(with_samples=False)}

    mono = monotonicity_report(spec, args.maxlen, 128, cfg, scan=res)
    save_monotonicity_figure(mono, out("monotonicity.png"))
    summary["monotonicity"] = {
        "checked": len(mono.checked),
        "excluded": len(mono.excluded),
        "violations": mono.violations,
    }

    if res.transition:
        try:
            params = find_order_params(spec, parse_word(args.orders_word), args.jmin, args.jmax, cfg, scan=res)
            summary["orders"] = [p.as_dict() for p in params]
        except GeometryError as exc:
            summary["orders_error"] = {"code": exc.code, "message": str(exc)}
        t_cloud = 0.5 * res.critical_t
    else:
        _, t_hi = valid_t_range(spec, cfg)
        t_cloud = 0.5 * t_hi
    f = build(spec, t_cloud, cfg, verify=False)
    try:
        cloud = limit_set(f, args.maxlen + 4, None, cfg)
        save_limitset_figure(cloud, BallPoint(complex(1.0), complex(0.0)), out("limitset.png"))
        with open(out("limitset.txt"), "w", encoding="utf-8") as fh:
            fh.write(cloud_ascii(cloud.zw))
        summary["limitset"] = cloud.meta
    except GeometryError as exc:
        summary["limitset_error"] = {"code": exc.code, "message": str(exc)}

    with open(out("summary.json"), "w", encoding="utf-8") as fh:
        fh.write(canonical_json(summary))
    print(f"report written to {args.outdir}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
