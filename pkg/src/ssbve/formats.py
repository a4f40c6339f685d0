"""Instance text formats.

SSBVE:  ``p ssbve <n> <n'> <k>`` then one ``e <u> <v>`` line per edge,
        1-indexed; duplicate edge lines are rejected.
MkU:    ``p mku <n_elements> <m> <k>`` then one ``s <size> <e1> ...`` line
        per set, 1-indexed elements.
SSVE:   ``p ssve <n> <k>`` then ``e <u> <v>`` lines, 1-indexed, simple graph.

Blank lines and lines starting with ``c`` are comments.
"""

from __future__ import annotations

import json

from .errors import FormatError
from .graph import BipartiteGraph, Hypergraph, SsbveInstance, UndirectedGraph


def _content_lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        out.append(line.split())
    return out


def _header(lines: list[list[str]], kind: str, argc: int) -> list[int]:
    if not lines or lines[0][0] != "p" or len(lines[0]) != 2 + argc \
            or lines[0][1] != kind:
        raise FormatError(f"expected header 'p {kind}' with {argc} integers")
    try:
        return [int(x) for x in lines[0][2:]]
    except ValueError as exc:
        raise FormatError(f"non-integer header field: {exc}") from exc


def parse_ssbve(text: str) -> SsbveInstance:
    lines = _content_lines(text)
    n, n_right, k = _header(lines, "ssbve", 3)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for fields in lines[1:]:
        if fields[0] != "e" or len(fields) != 3:
            raise FormatError(f"bad edge line: {' '.join(fields)}")
        u, v = int(fields[1]), int(fields[2])
        if not (1 <= u <= n and 1 <= v <= n_right):
            raise FormatError(f"edge ({u},{v}) out of range")
        if (u, v) in seen:
            raise FormatError(f"duplicate edge line ({u},{v})")
        seen.add((u, v))
        edges.append((u - 1, v - 1))
    return SsbveInstance(graph=BipartiteGraph.from_edges(n, n_right, edges),
                         k=k)


def write_ssbve(inst: SsbveInstance) -> str:
    g = inst.graph
    lines = [f"p ssbve {g.n} {g.n_right} {inst.k}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_mku(text: str) -> tuple[Hypergraph, int]:
    lines = _content_lines(text)
    n_elements, m, k = _header(lines, "mku", 3)
    sets: list[tuple[int, ...]] = []
    for fields in lines[1:]:
        if fields[0] != "s" or len(fields) < 2:
            raise FormatError(f"bad set line: {' '.join(fields)}")
        size = int(fields[1])
        elems = [int(x) for x in fields[2:]]
        if len(elems) != size:
            raise FormatError(f"set line declares {size} elements, "
                              f"has {len(elems)}")
        if len(set(elems)) != size:
            raise FormatError("duplicate element inside a set line")
        for e in elems:
            if not 1 <= e <= n_elements:
                raise FormatError(f"element {e} out of range")
        sets.append(tuple(sorted(e - 1 for e in elems)))
    if len(sets) != m:
        raise FormatError(f"header declares {m} sets, found {len(sets)}")
    return Hypergraph(n_elements=n_elements, sets=tuple(sets)), k


def write_mku(h: Hypergraph, k: int) -> str:
    lines = [f"p mku {h.n_elements} {len(h.sets)} {k}"]
    for s in h.sets:
        lines.append("s " + " ".join([str(len(s))] + [str(e + 1) for e in s]))
    return "\n".join(lines) + "\n"


def parse_ssve(text: str) -> tuple[UndirectedGraph, int]:
    lines = _content_lines(text)
    n, k = _header(lines, "ssve", 2)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for fields in lines[1:]:
        if fields[0] != "e" or len(fields) != 3:
            raise FormatError(f"bad edge line: {' '.join(fields)}")
        a, b = int(fields[1]), int(fields[2])
        if a == b:
            raise FormatError(f"self-loop at {a}")
        if not (1 <= a <= n and 1 <= b <= n):
            raise FormatError(f"edge ({a},{b}) out of range")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise FormatError(f"duplicate edge line ({a},{b})")
        seen.add(key)
        edges.append((a - 1, b - 1))
    return UndirectedGraph.from_edges(n, edges), k


def write_ssve(g: UndirectedGraph, k: int) -> str:
    lines = [f"p ssve {g.n} {k}"]
    lines += [f"e {a + 1} {b + 1}" for a, b in g.edges()]
    return "\n".join(lines) + "\n"


def planted_sidecar(spec) -> str:
    """Ground-truth JSON for a planted instance (1-indexed vertex lists)."""
    payload = {
        "planted_s": [u + 1 for u in spec.planted_s],
        "planted_t": [v + 1 for v in spec.planted_t],
        "alpha": spec.alpha,
        "beta": spec.beta,
        "gamma": spec.gamma,
        "n": spec.n,
        "r_degree": spec.r_degree,
        "seed": spec.seed,
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_planted_sidecar(text: str) -> dict:
    data = json.loads(text)
    data["planted_s"] = [u - 1 for u in data["planted_s"]]
    data["planted_t"] = [v - 1 for v in data["planted_t"]]
    return data
