"""Deterministic text formats for every object class.

All writers emit UTF-8 with LF line endings and sort their body lines
lexicographically (factorization files keep factor order, which is
meaningful), so identical objects serialize byte-identically.
"""

from __future__ import annotations

from pathlib import Path

from .bbd import Bbd
from .errors import MalformedBlock
from .latin import LatinSquare, OneFactorization
from .mds import MdsCode
from .model import KINDS, Design


def design_to_text(design: Design) -> str:
    lines = sorted(" ".join(map(str, blk)) for blk in design.blocks)
    return "\n".join([f"#design kind={design.kind} v={design.v}"] + lines) + "\n"


def latin_to_text(square: LatinSquare) -> str:
    rows = [" ".join(map(str, row)) for row in square.table]
    return "\n".join([f"#latin q={square.q}"] + rows) + "\n"


def onefact_to_text(fac: OneFactorization) -> str:
    lines = [" ".join(f"{a}-{b}" for a, b in factor) for factor in fac.factors]
    return "\n".join([f"#onefact m={fac.m}"] + lines) + "\n"


def mds_to_text(code: MdsCode) -> str:
    lines = sorted(" ".join(map(str, w)) for w in code.words)
    header = f"#mds d={code.d} q={code.q} dist={code.dist}"
    return "\n".join([header] + lines) + "\n"


def bbd_to_text(bbd: Bbd) -> str:
    lines = sorted(" ".join(map(str, blk)) for blk in bbd.blocks)
    return "\n".join([f"#bbd m={bbd.m}"] + lines) + "\n"


def _header_fields(header: str, tag: str) -> dict[str, str]:
    parts = header.split()
    if not parts or parts[0] != tag:
        raise MalformedBlock(f"expected {tag} header, got {header!r}")
    fields = {}
    for item in parts[1:]:
        key, _, value = item.partition("=")
        fields[key] = value
    return fields


def _int_rows(lines: list[str]) -> list[tuple[int, ...]]:
    rows = []
    for ln, line in enumerate(lines, start=2):
        try:
            rows.append(tuple(int(tok) for tok in line.split()))
        except ValueError as exc:
            raise MalformedBlock(f"line {ln}: {line!r} is not a row of integers") from exc
    return rows


def design_from_text(text: str) -> Design:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    fields = _header_fields(lines[0], "#design")
    kind = fields.get("kind", "")
    if kind not in KINDS:
        raise MalformedBlock(f"unknown design kind {kind!r}")
    v = int(fields["v"])
    rows = _int_rows(lines[1:])
    if len(set(rows)) != len(rows):
        raise MalformedBlock("duplicate block lines")
    for blk in rows:
        if any(blk[i] >= blk[i + 1] for i in range(len(blk) - 1)):
            raise MalformedBlock(f"block {blk} is not strictly ascending")
    return Design(kind, v, frozenset(rows))


def latin_from_text(text: str) -> LatinSquare:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    fields = _header_fields(lines[0], "#latin")
    q = int(fields["q"])
    rows = _int_rows(lines[1:])
    if len(rows) != q or any(len(r) != q for r in rows):
        raise MalformedBlock(f"expected a {q} x {q} table")
    return LatinSquare(q, tuple(rows))


def onefact_from_text(text: str) -> OneFactorization:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    fields = _header_fields(lines[0], "#onefact")
    m = int(fields["m"])
    factors = []
    for ln, line in enumerate(lines[1:], start=2):
        edges = []
        for pair in line.split():
            a, _, b = pair.partition("-")
            try:
                edges.append((int(a), int(b)))
            except ValueError as exc:
                raise MalformedBlock(f"line {ln}: bad pair {pair!r}") from exc
        factors.append(tuple(edges))
    return OneFactorization(m, tuple(factors))


def mds_from_text(text: str) -> MdsCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    fields = _header_fields(lines[0], "#mds")
    d, q, dist = int(fields["d"]), int(fields["q"]), int(fields["dist"])
    rows = _int_rows(lines[1:])
    if any(len(r) != d for r in rows):
        raise MalformedBlock(f"every word must have length {d}")
    return MdsCode(d, q, dist, frozenset(rows))


def bbd_from_text(text: str) -> Bbd:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    fields = _header_fields(lines[0], "#bbd")
    m = int(fields["m"])
    rows = _int_rows(lines[1:])
    if len(set(rows)) != len(rows):
        raise MalformedBlock("duplicate block lines")
    for blk in rows:
        if len(blk) != 4 or any(blk[i] >= blk[i + 1] for i in range(3)):
            raise MalformedBlock(f"block {blk} is not an ascending 4-tuple")
    return Bbd(m, frozenset(rows))


_WRITERS = {
    Design: design_to_text,
    LatinSquare: latin_to_text,
    OneFactorization: onefact_to_text,
    MdsCode: mds_to_text,
    Bbd: bbd_to_text,
}

_PARSERS = {
    "#design": design_from_text,
    "#latin": latin_from_text,
    "#onefact": onefact_from_text,
    "#mds": mds_from_text,
    "#bbd": bbd_from_text,
}


def to_text(obj) -> str:
    return _WRITERS[type(obj)](obj)


def save(obj, path: str | Path) -> None:
    Path(path).write_bytes(to_text(obj).encode("utf-8"))


def from_text(text: str):
    first = text.split(None, 1)[0] if text.strip() else ""
    parser = _PARSERS.get(first)
    if parser is None:
        raise MalformedBlock(f"unrecognized header token {first!r}")
    return parser(text)


def load(path: str | Path):
    return from_text(Path(path).read_text(encoding="utf-8"))


def load_design(path: str | Path) -> Design:
    obj = load(path)
    if not isinstance(obj, Design):
        raise MalformedBlock(f"{path} does not hold a design")
    return obj
