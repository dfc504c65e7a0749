"""Plain-text formats for tensors, covers and polyplexes.

Every format starts with a header line `<kind> <d> <n>`; lines whose first
non-blank character is `#` are comments. Coordinates in files are 1-based.
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .covers import CoverTable
from .errors import FormatError, PolyplexError
from .matching import Polyplex
from .tensor import BinaryTensor

_RATIONAL = re.compile(r"^[+]?\d+(/\d+)?$")


def format_rational(x) -> str:
    """Lowest terms; integers are written without a denominator."""
    return str(Fraction(x))


def _tokens(text: str):
    """Yield (line, column, token) for non-comment content, 1-based positions."""
    for ln, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#"):
            continue
        for m in re.finditer(r"\S+", line):
            yield ln, m.start() + 1, m.group()


def _header(text: str, kind: str):
    toks = list(_tokens(text))
    if not toks:
        raise FormatError(f"empty input, expected '{kind} <d> <n>' header")
    first_line = toks[0][0]
    head = [t for t in toks if t[0] == first_line]
    body = [t for t in toks if t[0] != first_line]
    ln, col, word = head[0]
    if word != kind:
        raise FormatError(f"expected '{kind}' header, found {word!r}", ln, col)
    if len(head) != 3:
        raise FormatError(f"header must be '{kind} <d> <n>'", ln, col)
    dims = []
    for ln, col, tok in head[1:]:
        if not tok.isdigit() or int(tok) < 1:
            raise FormatError(f"expected a positive integer, found {tok!r}", ln, col)
        dims.append(int(tok))
    return dims[0], dims[1], body


def _rational(tok, ln, col) -> Fraction:
    if not _RATIONAL.match(tok):
        raise FormatError(f"expected a nonnegative rational p/q, found {tok!r}", ln, col)
    if "/" in tok and int(tok.split("/")[1]) == 0:
        raise FormatError("zero denominator", ln, col)
    return Fraction(tok)


def parse_tensor(text: str) -> BinaryTensor:
    d, n, body = _header(text, "tensor")
    if len(body) != n ** d:
        where = body[n ** d] if len(body) > n ** d else None
        raise FormatError(f"expected {n ** d} cell values, found {len(body)}",
                          *(where[:2] if where else (None, None)))
    bits = []
    for ln, col, tok in body:
        if tok not in ("0", "1"):
            raise FormatError(f"cell value must be 0 or 1, found {tok!r}", ln, col)
        bits.append(int(tok))
    return BinaryTensor.from_bits(d, n, bits)


def format_tensor(A: BinaryTensor) -> str:
    """One line per fibre along the last coordinate; a blank line between 2-dim blocks."""
    lines = [f"tensor {A.d} {A.n}"]
    bits = A.bits()
    n = A.n
    block = n * n if A.d >= 2 else n
    for k in range(0, len(bits), n):
        if A.d > 2 and k and k % block == 0:
            lines.append("")
        lines.append(" ".join(map(str, bits[k:k + n])))
    return "\n".join(lines) + "\n"


def parse_cover(text: str) -> CoverTable:
    d, n, body = _header(text, "cover")
    by_line: dict = {}
    for ln, col, tok in body:
        by_line.setdefault(ln, []).append((ln, col, tok))
    if len(by_line) != d:
        raise FormatError(f"expected {d} rows, found {len(by_line)}")
    rows = []
    for ln in sorted(by_line):
        toks = by_line[ln]
        if len(toks) != n:
            raise FormatError(f"expected {n} entries, found {len(toks)}", ln, 1)
        rows.append(tuple(_rational(t, l, c) for l, c, t in toks))
    return CoverTable(tuple(rows))


def format_cover(cover: CoverTable) -> str:
    lines = [f"cover {cover.d} {cover.n}"]
    lines += [" ".join(format_rational(x) for x in r) for r in cover.rows]
    return "\n".join(lines) + "\n"


def parse_polyplex(text: str) -> Polyplex:
    d, n, body = _header(text, "polyplex")
    by_line: dict = {}
    for ln, col, tok in body:
        by_line.setdefault(ln, []).append((ln, col, tok))
    entries = {}
    for ln in sorted(by_line):
        toks = by_line[ln]
        if len(toks) != d + 1:
            raise FormatError(f"expected {d} coordinates and a value", ln, 1)
        idx = []
        for l, c, t in toks[:d]:
            if not t.isdigit() or not 1 <= int(t) <= n:
                raise FormatError(f"coordinate must be in 1..{n}, found {t!r}", l, c)
            idx.append(int(t) - 1)
        idx = tuple(idx)
        if idx in entries:
            raise FormatError("duplicate index", ln, 1)
        _, col, tok = toks[d]
        entries[idx] = _rational(tok, ln, col)
    try:
        return Polyplex(d, n, entries)
    except PolyplexError as exc:
        raise FormatError(str(exc)) from None


def format_polyplex(K: Polyplex) -> str:
    """Entries are always written as p/q."""
    lines = [f"polyplex {K.d} {K.n}"]
    for idx, v in K.entries.items():
        v = Fraction(v)
        coords = " ".join(str(x + 1) for x in idx)
        lines.append(f"{coords} {v.numerator}/{v.denominator}")
    return "\n".join(lines) + "\n"


_PARSERS = {"tensor": parse_tensor, "cover": parse_cover, "polyplex": parse_polyplex}


def read(path) -> object:
    """Parse a file of any of the three kinds, chosen by its header."""
    text = Path(path).read_text()
    for _, _, tok in _tokens(text):
        if tok in _PARSERS:
            return _PARSERS[tok](text)
        raise FormatError(f"unknown header {tok!r}", 1, 1)
    raise FormatError("empty input")


def read_tensor(path) -> BinaryTensor:
    return parse_tensor(Path(path).read_text())


def read_cover(path) -> CoverTable:
    return parse_cover(Path(path).read_text())
