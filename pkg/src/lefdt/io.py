"""JSON file formats for images, maps and results.

Image::

    {"dimension": n, "adjacency": "c1" | "c2" | {"ct": t} | {"explicit": [[i, j], ...]},
     "points": [[...], ...]}

Points must be listed in strictly increasing lexicographic order and
explicit edges index into that list.  Map::

    {"domain": <path>, "codomain": <path>, "assignment": [[i, j], ...]}

with ``i`` a domain index and ``j`` a codomain index.  Paths are resolved
relative to the map file.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import DomainError, FormatError
from .image import CT, DigitalImage, DigitalMap, Explicit


def _fail(msg, source=None):
    where = f"{source}: " if source else ""
    raise FormatError(where + msg)


def image_from_json(data, source=None) -> DigitalImage:
    if not isinstance(data, dict):
        _fail("image must be a JSON object", source)
    for key in ("dimension", "points"):
        if key not in data:
            _fail(f"missing field {key!r}", source)
    n = data["dimension"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        _fail("dimension must be a positive integer", source)
    raw = data["points"]
    if not isinstance(raw, list):
        _fail("points must be a list", source)
    pts = []
    for p in raw:
        if (not isinstance(p, list) or len(p) != n
                or not all(isinstance(c, int) and not isinstance(c, bool) for c in p)):
            _fail(f"point {p!r} is not a list of {n} integers", source)
        pts.append(tuple(p))
    for a, b in zip(pts, pts[1:]):
        if not a < b:
            _fail(f"points must be strictly increasing: {list(a)} then {list(b)}", source)
    adj = data.get("adjacency", "c1")
    if isinstance(adj, str):
        if len(adj) < 2 or adj[0] != "c" or not adj[1:].isdigit():
            _fail(f"unknown adjacency {adj!r}", source)
        spec = CT(int(adj[1:]))
    elif isinstance(adj, dict) and set(adj) == {"ct"}:
        if not isinstance(adj["ct"], int):
            _fail("ct must be an integer", source)
        spec = CT(adj["ct"])
    elif isinstance(adj, dict) and set(adj) == {"explicit"}:
        edges = []
        for e in adj["explicit"]:
            if (not isinstance(e, list) or len(e) != 2
                    or not all(isinstance(i, int) and 0 <= i < len(pts) for i in e)):
                _fail(f"bad explicit edge {e!r}", source)
            edges.append((pts[e[0]], pts[e[1]]))
        try:
            spec = Explicit(edges)
        except DomainError as exc:
            _fail(str(exc), source)
    else:
        _fail(f"unknown adjacency {adj!r}", source)
    try:
        return DigitalImage(n, tuple(pts), spec)
    except DomainError as exc:
        _fail(str(exc), source)


def image_to_json(img: DigitalImage) -> dict:
    adj = img.adjacency
    if isinstance(adj, CT):
        spec = f"c{adj.t}" if adj.t in (1, 2) else {"ct": adj.t}
    else:
        spec = {"explicit": [list(e) for e in img.edges]}
    return {"dimension": img.dimension, "adjacency": spec,
            "points": [list(p) for p in img.points]}


def _read_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_image(path) -> DigitalImage:
    return image_from_json(_read_json(path), source=str(path))


def save_image(img: DigitalImage, path):
    Path(path).write_text(json.dumps(image_to_json(img)) + "\n", encoding="utf-8")


def map_from_json(data, domain: DigitalImage, codomain: DigitalImage, source=None) -> DigitalMap:
    assignment = data.get("assignment") if isinstance(data, dict) else None
    if not isinstance(assignment, list):
        _fail("map needs an 'assignment' list", source)
    imgs = [None] * len(domain)
    for pair in assignment:
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)):
            _fail(f"bad assignment entry {pair!r}", source)
        i, j = pair
        if not 0 <= i < len(domain):
            _fail(f"domain index {i} out of range", source)
        if not 0 <= j < len(codomain):
            _fail(f"codomain index {j} out of range", source)
        if imgs[i] is not None and imgs[i] != j:
            _fail(f"domain index {i} assigned twice", source)
        imgs[i] = j
    missing = [i for i, v in enumerate(imgs) if v is None]
    if missing:
        _fail(f"assignment is not total (missing domain indices {missing[:5]})", source)
    return DigitalMap(domain, codomain, tuple(imgs))


def load_map(path) -> DigitalMap:
    path = Path(path)
    data = _read_json(path)
    if not isinstance(data, dict) or "domain" not in data or "codomain" not in data:
        _fail("map file needs 'domain' and 'codomain' paths", str(path))
    base = path.parent
    dom = load_image(base / data["domain"])
    cod = dom if data["codomain"] == data["domain"] else load_image(base / data["codomain"])
    return map_from_json(data, dom, cod, source=str(path))


def map_to_json(f: DigitalMap, domain_path: str, codomain_path: str | None = None) -> dict:
    return {"domain": domain_path, "codomain": codomain_path or domain_path,
            "assignment": [[i, j] for i, j in enumerate(f.images)]}


def save_map(f: DigitalMap, path, domain_path: str, codomain_path: str | None = None):
    Path(path).write_text(json.dumps(map_to_json(f, domain_path, codomain_path)) + "\n",
                          encoding="utf-8")
