"""Ideal files: one generator per line, ``#`` comments, and optional lines

    factors: <q> = (f1)^m1 (f2) ...

attaching a factorization to a surface polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .polynomial import DEFAULT_PRIME, ParseError, Polynomial, parse_polynomial

_FACTOR = re.compile(r"\(([^()]*)\)(?:\^(\d+))?")


@dataclass
class IdealFile:
    generators: list
    factorizations: dict = field(default_factory=dict)   # monic q -> [(factor, mult)]
    name: str | None = None

    def surface(self, q: Polynomial):
        """FactoredSurface for q, using a recorded factorization when present."""
        from .liaison import FactoredSurface
        facs = self.factorizations.get(q.monic())
        if facs is None:
            return FactoredSurface.irreducible(q)
        return FactoredSurface(q, facs, "file")

    def hints(self) -> list:
        return [h for facs in self.factorizations.values() for h, _ in facs]


def _parse_factors(body: str, line_no: int, p: int) -> tuple:
    if "=" not in body:
        raise ParseError("factors line needs '='", 0, f"line {line_no}")
    lhs, rhs = body.split("=", 1)
    q = parse_polynomial(lhs.strip(), p)
    rhs = rhs.strip()
    out = []
    pos = 0
    for m in _FACTOR.finditer(rhs):
        if rhs[pos:m.start()].strip():
            raise ParseError("unexpected text in factor list", m.start(), rhs)
        out.append((parse_polynomial(m.group(1), p), int(m.group(2) or 1)))
        pos = m.end()
    if rhs[pos:].strip() or not out:
        raise ParseError("malformed factor list", pos, rhs)
    return q, out


def parse_ideal_text(text: str, p: int = DEFAULT_PRIME, name: str | None = None) -> IdealFile:
    gens = []
    facs = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("factors:"):
                q, fl = _parse_factors(line[len("factors:"):], line_no, p)
                prod = Polynomial.constant(1, p)
                for h, m in fl:
                    prod = prod * h ** m
                if prod.monic() != q.monic():
                    raise ParseError("factors do not multiply to the surface", 0, line)
                facs[q.monic()] = fl
            else:
                gens.append(parse_polynomial(line, p))
        except ParseError as exc:
            exc.args = (f"line {line_no}: {exc}",)
            raise
    if not gens:
        raise ParseError("no generators", 0, name or "")
    return IdealFile(gens, facs, name)


def read_ideal_file(path, p: int = DEFAULT_PRIME) -> IdealFile:
    path = Path(path)
    return parse_ideal_text(path.read_text(encoding="utf-8"), p, path.stem)


def bundled_names() -> list:
    root = resources.files("biliaison") / "data" / "ideals"
    return sorted(f.name[:-len(".ideal")] for f in root.iterdir() if f.name.endswith(".ideal"))


def bundled(name: str, p: int = DEFAULT_PRIME) -> IdealFile:
    """One of the ideal files shipped with the package (line, skew_lines, ...)."""
    f = resources.files("biliaison") / "data" / "ideals" / f"{name}.ideal"
    return parse_ideal_text(f.read_text(encoding="utf-8"), p, name)
