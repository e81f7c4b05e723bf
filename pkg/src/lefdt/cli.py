"""Command line front end.

Exit codes: 0 success, 1 failed ``verify`` rows or internal error,
2 guard or validation error, 3 unreadable input, 4 resource guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import _kernels
from .errors import (DomainError, FormatError, InternalError, PreconditionError,
                     ResourceGuardError)
from .homalg import homology
from .homotopy import (afp_spectrum, contraction_certificate, fixed_point_spectrum, has_fpp,
                       homotopy_classes, is_homotopic, is_homotopy_equivalent,
                       lefschetz_spectrum, thin)
from .image import approx_fixed_points, fixed_points, is_continuous
from .io import image_to_json, load_image, load_map
from .lefschetz import THEORIES, complex_for, euler_characteristic, fixed_cells, lefschetz

DATA_DIR = Path(__file__).resolve().parent / "data"


def resolve(path: str) -> Path:
    """A file path, falling back to the shipped fixture directory."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (DATA_DIR / p.name, DATA_DIR / p.name.removeprefix("image")):
        if cand.exists():
            return cand
    return p


def _img(path):
    return load_image(resolve(path))


def _map(path):
    return load_map(resolve(path))


def _points(ps):
    return [list(p) for p in sorted(ps)]


def _plain(value):
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return value.item()
    return value


# ------------------------------------------------------------------ verbs


def cmd_info(a):
    img = _img(a.image)
    return {"dimension": img.dimension, "points": len(img), "edges": len(img.edges),
            "components": len(img.components), "adjacency": image_to_json(img)["adjacency"]}


def _cells(img, theory, listing):
    cx = complex_for(img, theory)
    out = {"counts": list(cx.ranks)}
    if listing:
        pts = img.points
        out["cells"] = [[[list(pts[v]) for v in c] for c in cells] for cells in cx.cells]
    return out


def cmd_simplices(a):
    return _cells(_img(a.image), "simplicial", a.list)


def cmd_cubes(a):
    return _cells(_img(a.image), "cubical", a.list)


def cmd_homology(a):
    cx = complex_for(_img(a.image), a.theory)
    groups = [homology(cx, q) for q in range(len(cx.cells))]
    return {"theory": a.theory, "betti": [g.betti for g in groups],
            "torsion": [list(g.torsion) for g in groups], "groups": [str(g) for g in groups]}


def cmd_euler(a):
    return {"theory": a.theory, "value": euler_characteristic(_img(a.image), a.theory)}


def cmd_lefschetz(a):
    rep = lefschetz(_map(a.map), a.theory, unsafe_high_dimension=a.unsafe_high_dimension)
    return rep.to_json()


def cmd_fixed(a):
    f = _map(a.map)
    cells = fixed_cells(f, a.theory, unsafe_high_dimension=a.unsafe_high_dimension)
    return {"fixedPoints": _points(fixed_points(f)),
            "fixedCells": [[list(p) for p in c] for c in cells]}


def cmd_afp(a):
    f = _map(a.map)
    pts = approx_fixed_points(f, a.n)
    return {"n": a.n, "count": len(pts), "points": _points(pts)}


def cmd_check_map(a):
    f = _map(a.map)
    return {"continuous": is_continuous(f), "selfMap": f.is_self_map}


def cmd_homotopic(a):
    ok, cert = is_homotopic(_map(a.map1), _map(a.map2), a.strong)
    out = {"homotopic": ok, "kind": "strong" if a.strong else "ordinary"}
    if cert is not None:
        out["steps"] = len(cert)
        if a.certificate:
            out["certificate"] = cert.to_json()
    return out


def cmd_classes(a):
    cl = homotopy_classes(_img(a.image), a.strong)
    return {"kind": "strong" if a.strong else "ordinary", "classes": len(cl),
            "sizes": [len(c) for c in cl],
            "representatives": [list(c.representative.images) for c in cl]}


def cmd_contractible(a):
    cert = contraction_certificate(_img(a.image), a.strong)
    out = {"contractible": cert is not None, "kind": "strong" if a.strong else "ordinary"}
    if cert is not None:
        out["steps"] = len(cert)
    return out


def cmd_fpp(a):
    return {"fpp": has_fpp(_img(a.image))}


def cmd_spectrum(a):
    img = _img(a.image)
    if a.kind == "fixed":
        res = fixed_point_spectrum(img)
    else:
        res = lefschetz_spectrum(img, a.theory, reduce=a.reduce,
                                 unsafe_high_dimension=a.unsafe_high_dimension)
    out = res.to_json()
    out["kind"] = a.kind
    return out


def cmd_afp_spectrum(a):
    out = afp_spectrum(_map(a.map), a.n, a.strong).to_json()
    out["n"] = a.n
    return out


def cmd_equivalent(a):
    ok, pair = is_homotopy_equivalent(_img(a.image1), _img(a.image2), a.strong)
    out = {"equivalent": ok, "kind": "strong" if a.strong else "ordinary"}
    if pair is not None:
        out["f"] = list(pair[0].images)
        out["g"] = list(pair[1].images)
    return out


def cmd_thin(a):
    res = thin(_img(a.image), a.strong, a.mode, max_cluster=a.max_cluster)
    if not res.verify():
        raise InternalError("thinning certificate failed to verify")
    out = {"size": len(res.image), "minimal": res.minimal,
           "points": [list(p) for p in res.image.points],
           "certificateSteps": len(res.certificate)}
    if a.output:
        Path(a.output).write_text(json.dumps(image_to_json(res.image)) + "\n", encoding="utf-8")
        out["output"] = a.output
    if a.certificate:
        out["certificate"] = res.certificate.to_json()
    return out


def cmd_verify(a):
    from .verify import run_checks

    rows = run_checks()
    table = [{"check": r.label, "expected": _plain(r.expected), "actual": _plain(r.actual),
              "pass": r.passed, **({"error": r.error} if r.error else {})} for r in rows]
    return {"backend": _kernels.BACKEND_NAME, "passed": sum(r.passed for r in rows),
            "total": len(rows), "rows": table}


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lefdt", description=(
        "Lefschetz numbers, homology, homotopy classes and spectra of digital images."))
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--unsafe-high-dimension", action="store_true",
                   help="allow cubical chain maps in ambient dimension > 4 (checked empirically)")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, *args):
        sp = sub.add_parser(name, help=help_)
        for arg in args:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        # global flags are also accepted after the verb
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--unsafe-high-dimension", action="store_true",
                        default=argparse.SUPPRESS)
        return sp

    def theory(sp, default="simplicial"):
        sp.add_argument("--theory", choices=THEORIES, default=default)

    verb("info", cmd_info, "summary of an image", "image")
    verb("simplices", cmd_simplices, "clique complex cell counts", "image").add_argument(
        "--list", action="store_true")
    verb("cubes", cmd_cubes, "cubical complex cell counts", "image").add_argument(
        "--list", action="store_true")
    theory(verb("homology", cmd_homology, "homology groups", "image"))
    theory(verb("euler", cmd_euler, "Euler characteristic", "image"))
    theory(verb("lefschetz", cmd_lefschetz, "Lefschetz number of a self-map", "map"))
    theory(verb("fixed", cmd_fixed, "fixed points and fixed cells", "map"))
    verb("afp", cmd_afp, "n-approximate fixed points", "map").add_argument(
        "-n", type=int, default=1)
    verb("check-map", cmd_check_map, "continuity of a map", "map")
    sp = verb("homotopic", cmd_homotopic, "decide (strong) homotopy of two maps", "map1", "map2")
    sp.add_argument("--strong", action="store_true")
    sp.add_argument("--certificate", action="store_true")
    verb("classes", cmd_classes, "homotopy classes of self-maps", "image").add_argument(
        "--strong", action="store_true")
    verb("contractible", cmd_contractible, "(strong) contractibility", "image").add_argument(
        "--strong", action="store_true")
    verb("fpp", cmd_fpp, "fixed point property", "image")
    sp = verb("spectrum", cmd_spectrum, "fixed point or Lefschetz spectrum", "image")
    sp.add_argument("--kind", choices=("fixed", "lefschetz"), default="lefschetz")
    theory(sp)
    sp.add_argument("--reduce", action="store_true",
                    help="compute on a certified reduction of the image")
    sp = verb("afp-spectrum", cmd_afp_spectrum, "approximate fixed point spectrum of a class",
              "map")
    sp.add_argument("-n", type=int, default=1)
    sp.add_argument("--strong", action="store_true")
    verb("equivalent", cmd_equivalent, "(strong) homotopy equivalence", "image1",
         "image2").add_argument("--strong", action="store_true")
    sp = verb("thin", cmd_thin, "reduce an image by certified retractions", "image")
    sp.add_argument("--strong", action="store_true")
    sp.add_argument("--mode", choices=("greedy", "exhaustive"), default="greedy")
    sp.add_argument("--max-cluster", type=int, default=1)
    sp.add_argument("--output")
    sp.add_argument("--certificate", action="store_true")
    verb("verify", cmd_verify, "replay the reference fixture table")
    return p


def format_human(verb, result) -> str:
    if verb == "verify":
        lines = [f"{'PASS' if r['pass'] else 'FAIL'}  {r['check']}: "
                 f"expected {json.dumps(r['expected'])}, got {json.dumps(r['actual'])}"
                 + (f" ({r['error']})" if "error" in r else "") for r in result["rows"]]
        lines.append(f"{result['passed']}/{result['total']} passed "
                     f"(kernels: {result['backend']})")
        return "\n".join(lines)
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in result.items())


def parse_human(text: str) -> dict:
    """Inverse of :func:`format_human` for every verb except ``verify``."""
    out = {}
    for line in text.splitlines():
        key, _, val = line.partition(": ")
        out[key] = json.loads(val)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = _plain(args.fn(args))
    except FormatError as exc:
        return _error(args, 3, "parse", exc)
    except ResourceGuardError as exc:
        return _error(args, 4, "resource", exc)
    except (DomainError, PreconditionError) as exc:
        return _error(args, 2, "validation", exc)
    except InternalError as exc:
        return _error(args, 1, "internal", exc)
    if args.json:
        print(json.dumps(result))
    else:
        print(format_human(args.verb, result))
    if args.verb == "verify" and result["passed"] != result["total"]:
        return 1
    return 0


def _error(args, code, kind, exc):
    diag = {"error": kind, "type": type(exc).__name__, "message": str(exc)}
    if args.json:
        print(json.dumps(diag))
    else:
        print(f"error ({kind}): {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
